// SPDX-FileCopyrightText: Copyright (c) 2026 The molfp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "molfp/molfp.hpp"

namespace molfp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, flag combinations, or environment settings.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unreadable or invalid input data; the message already names file:line.
class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SmiRecord {
  std::string smiles;
  std::optional<std::string> name;
  std::size_t line_number;
};

/// One record per line. Blank lines and lines starting with '#' are skipped;
/// the first run of whitespace separates the SMILES from an optional name.
inline std::vector<SmiRecord> parse_smi(std::istream& in) {
  std::vector<SmiRecord> out;
  std::string line;
  std::size_t number = 0;
  constexpr std::string_view kSpace = " \t\r\v\f";
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.front() == '#') continue;
    const auto begin = line.find_first_not_of(kSpace);
    if (begin == std::string::npos) continue;
    const auto end = line.find_first_of(kSpace, begin);
    SmiRecord rec{line.substr(begin, end == std::string::npos ? std::string::npos : end - begin), std::nullopt,
                  number};
    if (end != std::string::npos) {
      const auto name_begin = line.find_first_not_of(kSpace, end);
      if (name_begin != std::string::npos) {
        const auto name_end = line.find_last_not_of(kSpace);
        rec.name = line.substr(name_begin, name_end - name_begin + 1);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<SmiRecord> read_smi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open for reading");
  return parse_smi(in);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
    throw DataError(path + ": cannot write");
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Flags shared by every command that computes fingerprints.
struct FingerprintFlags {
  std::string family = "ecfp";
  std::uint32_t length = 2048;
  std::uint32_t radius = 2;
  std::uint32_t min_path = 1;
  std::uint32_t max_path = 7;
  std::uint32_t distance_cap = 30;
  std::string key_set;
  std::string variant = "binary";

  void attach(CLI::App& cmd) {
    cmd.add_option("--fingerprint,-f", family, "Fingerprint family")
        ->check(CLI::IsMember({"ecfp", "fcfp", "atom_pair", "topological_torsion", "path", "substructure",
                               "descriptors"}));
    cmd.add_option("--length", length, "Vector length of hashed families");
    cmd.add_option("--radius", radius, "Circular radius (ecfp, fcfp)");
    cmd.add_option("--min-path", min_path, "Shortest path in bonds (path)");
    cmd.add_option("--max-path", max_path, "Longest path in bonds (path)");
    cmd.add_option("--distance-cap", distance_cap, "Largest pair distance (atom_pair)");
    cmd.add_option("--key-set", key_set, "Key-set file (substructure); built-in keys when omitted");
    cmd.add_option("--variant", variant, "binary or count")->check(CLI::IsMember({"binary", "count"}));
  }

  FingerprintConfig config() const {
    FingerprintConfig cfg;
    cfg.family = *family_from_name(family);
    cfg.length = length;
    cfg.radius = radius;
    cfg.min_path = min_path;
    cfg.max_path = max_path;
    cfg.distance_cap = distance_cap;
    cfg.key_set_path = key_set;
    cfg.variant = variant == "count" ? Variant::Count : Variant::Binary;
    return cfg;
  }

  /// Config errors are usage errors; an unreadable or malformed key file is
  /// a data error.
  Transformer transformer() const {
    try {
      return Transformer::fingerprint(config());
    } catch (const FormatError& e) {
      throw DataError(key_set + ":" + std::to_string(e.line()) + ": " + std::string(e.kind_name()) + ": " + e.what());
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io || e.kind() == ErrorKind::KeySet) throw DataError(e.what());
      throw UsageError(e.what());
    }
  }
};

/// Batch flags. `--jobs` falls back to MOLFP_JOBS, then to the core count.
struct BatchFlags {
  std::optional<std::uint32_t> jobs;
  std::optional<std::size_t> chunk_size;
  std::string on_error = "raise";

  void attach(CLI::App& cmd) {
    cmd.add_option("--jobs,-j", jobs, "Worker count (default: MOLFP_JOBS or all cores)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--chunk-size", chunk_size, "Records per chunk (default: one chunk per worker)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--on-error", on_error, "raise or skip")->check(CLI::IsMember({"raise", "skip"}));
  }

  BatchOptions options() const {
    BatchOptions opts;
    opts.jobs = jobs;
    if (!opts.jobs) {
      if (const char* env = std::getenv("MOLFP_JOBS"); env && *env) {
        std::uint32_t value = 0;
        const std::string_view text(env);
        auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value == 0)
          throw UsageError("MOLFP_JOBS must be a positive integer, got '" + std::string(text) + "'");
        opts.jobs = value;
      }
    }
    opts.chunk_size = chunk_size;
    opts.error_mode = on_error == "skip" ? ErrorMode::Skip : ErrorMode::Raise;
    return opts;
  }
};

inline std::vector<std::string> smiles_of(const std::vector<SmiRecord>& records) {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.smiles);
  return out;
}

inline std::string failure_text(const BatchFailure& f) { return f.kind + ": " + f.message; }

/// Raise mode: the lowest failing record aborts with file:line. Skip mode:
/// failures go to `<output>.errors.tsv` and a one-line note on `err`.
inline void handle_failures(const BatchReport& report, const std::vector<SmiRecord>& records,
                            const std::string& input, const std::string& output, ErrorMode mode,
                            std::ostream& err) {
  if (mode == ErrorMode::Raise) {
    if (!report.failures.empty()) {
      const auto& f = report.failures.front();
      throw DataError(input + ":" + std::to_string(records[f.index].line_number) + ": " + failure_text(f));
    }
    return;
  }
  std::ostringstream tsv;
  tsv << "index\tline\terror\n";
  for (const auto& f : report.failures) {
    tsv << f.index << '\t' << records[f.index].line_number << '\t' << failure_text(f) << '\n';
    err << input << ':' << records[f.index].line_number << ": skipped: " << failure_text(f) << '\n';
  }
  write_file(output + ".errors.tsv", tsv.str());
}

/// Batch run in skip mode so every failure carries its record index; raise
/// semantics are applied afterwards by handle_failures.
inline BatchResult run_batch(const std::vector<std::string>& smiles, const Transformer& t, BatchOptions opts) {
  opts.error_mode = ErrorMode::Skip;
  return transform_batch(smiles, t, opts);
}

inline int cmd_compute(const std::string& input, const std::string& output, const FingerprintFlags& fp,
                       const BatchFlags& batch, const std::string& form, std::ostream& err) {
  const auto t = fp.transformer();
  auto opts = batch.options();
  opts.output = form == "sparse" ? OutputForm::Sparse : OutputForm::Dense;
  const auto records = read_smi_file(input);
  const auto result = run_batch(smiles_of(records), t, opts);
  handle_failures(result.report, records, input, output, batch.options().error_mode, err);
  write_file(output, serialize_to_string(result.matrix));
  return kExitOk;
}

inline int cmd_canonical(const std::string& input, const std::string& output, const BatchFlags& batch,
                         std::ostream& err) {
  auto opts = batch.options();
  const auto records = read_smi_file(input);
  const auto smiles = smiles_of(records);
  auto mode = opts.error_mode;
  opts.error_mode = ErrorMode::Skip;
  const auto mapped = map_batch(std::span<const std::string>(smiles),
                                [](const std::string& s) { return write_canonical_smiles(parse_molecule(s)); },
                                opts);
  handle_failures(mapped.report, records, input, output, mode, err);
  std::string text;
  for (const auto& s : mapped.values) text += s + '\n';
  write_file(output, text);
  return kExitOk;
}

inline int cmd_search(const std::string& query, const std::string& database, const FingerprintFlags& fp,
                      const BatchFlags& batch, const std::string& metric_name, std::size_t top_k,
                      std::ostream& out, std::ostream& err) {
  const auto metric = *metric_from_name(metric_name);
  auto cfg = fp.config();
  if (cfg.family == Family::Descriptors) throw UsageError("search needs a bit-vector fingerprint, not descriptors");
  const auto t = fp.transformer();
  Molecule query_mol;
  try {
    query_mol = parse_molecule(query);
  } catch (const Error& e) {
    throw DataError("query: " + std::string(e.kind_name()) + ": " + e.what());
  }
  const auto query_row = t.transform_molecule(query_mol);
  std::vector<std::uint32_t> features(query_row.indices.begin(), query_row.indices.end());
  const auto query_vec =
      FingerprintVector::from_features(static_cast<std::uint32_t>(t.width()), Variant::Binary, features);

  auto opts = batch.options();
  opts.output = OutputForm::Sparse;
  const auto records = read_smi_file(database);
  const auto smiles = smiles_of(records);
  const auto mode = opts.error_mode;
  opts.error_mode = ErrorMode::Skip;
  const auto mapped = map_batch(std::span<const std::string>(smiles),
                                [&](const std::string& s) { return t.transform_text(s); }, opts);
  if (mode == ErrorMode::Raise && !mapped.report.failures.empty()) {
    const auto& f = mapped.report.failures.front();
    throw DataError(database + ":" + std::to_string(records[f.index].line_number) + ": " + failure_text(f));
  }
  for (const auto& f : mapped.report.failures)
    err << database << ':' << records[f.index].line_number << ": skipped: " << failure_text(f) << '\n';

  const auto db = assemble(mapped.values, t.width(), DType::U32, OutputForm::Sparse);
  const auto hits = bulk_top_k(query_vec, std::get<CsrMatrix<std::uint32_t>>(db), top_k, metric);
  out << "rank\tline\tname\tscore\n";
  for (std::size_t r = 0; r < hits.size(); ++r) {
    const auto& rec = records[mapped.indices[hits[r].row]];
    out << r + 1 << '\t' << rec.line_number << '\t' << rec.name.value_or("") << '\t'
        << format_double(hits[r].score) << '\n';
  }
  return kExitOk;
}

inline std::vector<std::uint32_t> parse_jobs_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint32_t v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || v == 0)
      throw UsageError("bad --jobs-list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--jobs-list is empty");
  return out;
}

inline int cmd_benchmark(const std::string& input, std::size_t synthetic, std::uint64_t seed,
                         const FingerprintFlags& fp, const std::string& jobs_list, std::uint32_t repeats,
                         std::ostream& out) {
  const auto jobs = parse_jobs_list(jobs_list);
  if (repeats < 3) throw UsageError("--repeats must be at least 3");
  const auto t = fp.transformer();
  std::vector<std::string> smiles;
  if (!input.empty()) {
    smiles = smiles_of(read_smi_file(input));
  } else {
    smiles = synthetic_corpus(synthetic, seed);
  }
  for (auto j : jobs) {
    if (smiles.size() < j) throw UsageError("fewer input records than jobs");
  }
  std::vector<BenchmarkRow> rows;
  try {
    rows = benchmark(std::span<const std::string>(smiles), t, jobs, repeats);
  } catch (const Error& e) {
    throw DataError(input + ": " + std::string(e.kind_name()) + ": " + e.what());
  }
  out << "jobs\tmean_seconds\tspeedup\n";
  for (const auto& r : rows) out << r.jobs << '\t' << format_double(r.mean_seconds) << '\t' << format_double(r.speedup) << '\n';
  return kExitOk;
}

inline int cmd_generate(const std::string& output, std::size_t count, std::uint64_t seed, std::ostream& out) {
  std::string text;
  const auto corpus = synthetic_corpus(count, seed);
  for (std::size_t i = 0; i < corpus.size(); ++i) text += corpus[i] + " syn" + std::to_string(i + 1) + '\n';
  if (output == "-") {
    out << text;
  } else {
    write_file(output, text);
  }
  return kExitOk;
}

/// Entry point shared by main() and the tests. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"molfp: molecular fingerprints, canonical SMILES and similarity search"};
  app.require_subcommand(1);

  std::string input, output, form = "dense", metric = "tanimoto", query, jobs_list = "1,2,4";
  std::size_t top_k = 10, synthetic = 10000, count = 1000;
  std::uint64_t seed = 20240101;
  std::uint32_t repeats = 3;
  FingerprintFlags fp;
  BatchFlags batch;

  auto* compute = app.add_subcommand("compute", "Fingerprint every record of a .smi file");
  compute->add_option("input", input, ".smi input")->required();
  compute->add_option("destination", output, "DENSEv1/CSRv1 output file")->required();
  compute->add_option("--output", form, "Matrix form: dense or sparse")->check(CLI::IsMember({"dense", "sparse"}));
  fp.attach(*compute);
  batch.attach(*compute);

  auto* canonical = app.add_subcommand("canonical", "Write one canonical SMILES per record");
  canonical->add_option("input", input, ".smi input")->required();
  canonical->add_option("output", output, "Output file")->required();
  batch.attach(*canonical);

  auto* search = app.add_subcommand("search", "Rank database records by similarity to a query");
  search->add_option("query", query, "Query SMILES")->required();
  search->add_option("database", input, ".smi database")->required();
  search->add_option("--metric", metric, "tanimoto or dice")->check(CLI::IsMember({"tanimoto", "dice"}));
  search->add_option("--top-k,-k", top_k, "Hits to report")->check(CLI::PositiveNumber);
  fp.attach(*search);
  batch.attach(*search);

  auto* bench = app.add_subcommand("benchmark", "Time a fingerprint over several worker counts");
  bench->add_option("input", input, ".smi input (synthetic corpus when omitted)");
  bench->add_option("--synthetic", synthetic, "Synthetic corpus size when no input is given")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Synthetic corpus seed");
  bench->add_option("--jobs-list", jobs_list, "Comma-separated worker counts");
  bench->add_option("--repeats", repeats, "Timed repetitions per worker count (>= 3)");
  fp.attach(*bench);

  auto* generate = app.add_subcommand("generate", "Write a deterministic synthetic .smi corpus");
  generate->add_option("output", output, "Output file, '-' for stdout")->required();
  generate->add_option("--count,-n", count, "Number of molecules");
  generate->add_option("--seed", seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(input, output, fp, batch, form, err);
    if (*canonical) return cmd_canonical(input, output, batch, err);
    if (*search) return cmd_search(query, input, fp, batch, metric, top_k, out, err);
    if (*bench) return cmd_benchmark(input, synthetic, seed, fp, jobs_list, repeats, out);
    if (*generate) return cmd_generate(output, count, seed, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.kind_name() << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace molfp::cli
