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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "molfp/engine.hpp"
#include "molfp/error.hpp"
#include "molfp/matrix.hpp"

namespace molfp {

enum class ErrorMode { Raise, Skip };

struct BatchOptions {
  std::optional<std::uint32_t> jobs;        // nullopt: detected core count
  std::optional<std::size_t> chunk_size;    // nullopt: one chunk per worker
  ErrorMode error_mode = ErrorMode::Raise;
  OutputForm output = OutputForm::Dense;
};

struct BatchFailure {
  std::size_t index;
  std::string kind;
  std::string message;

  friend bool operator==(const BatchFailure&, const BatchFailure&) = default;
};

struct BatchReport {
  std::size_t n_input = 0;
  std::size_t n_ok = 0;
  std::vector<BatchFailure> failures;  // ascending index
};

inline std::uint32_t resolve_jobs(const BatchOptions& opts) {
  if (opts.jobs) {
    if (*opts.jobs == 0) throw Error(ErrorKind::Config, "jobs must be positive");
    return *opts.jobs;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Contiguous chunk sizes covering n items. Without an explicit chunk size
/// there is one chunk per worker with sizes differing by at most one,
/// larger chunks first. Empty chunks are dropped.
inline std::vector<std::size_t> chunk_sizes(std::size_t n, std::uint32_t jobs,
                                            std::optional<std::size_t> chunk_size = std::nullopt) {
  if (jobs == 0) throw Error(ErrorKind::Config, "jobs must be positive");
  std::vector<std::size_t> sizes;
  if (chunk_size) {
    if (*chunk_size == 0) throw Error(ErrorKind::Config, "chunk_size must be positive");
    for (std::size_t done = 0; done < n; done += *chunk_size) sizes.push_back(std::min(*chunk_size, n - done));
    return sizes;
  }
  const std::size_t base = n / jobs, extra = n % jobs;
  for (std::size_t c = 0; c < jobs; ++c) {
    const std::size_t size = base + (c < extra ? 1 : 0);
    if (size > 0) sizes.push_back(size);
  }
  return sizes;
}

template <class R>
struct MapResult {
  std::vector<R> values;            // successful outputs, input order
  std::vector<std::size_t> indices; // input index of each value
  BatchReport report;
};

namespace detail {

inline std::string describe_kind(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const Error& err) {
    return std::string(err.kind_name());
  } catch (...) {
    return "Error";
  }
}

inline std::string describe_message(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& err) {
    return err.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace detail

/// Applies `fn` to every input on a worker group. Chunks are contiguous and
/// handed out in order; each worker writes only its own result slots, and
/// the coordinator gathers them in input order, so the result does not
/// depend on the number of workers.
///
/// Raise mode rethrows the failure with the lowest input index. A worker
/// stops early only once a failure below its current position is known, so
/// that lowest failure is always found.
template <class In, class Fn>
auto map_batch(std::span<const In> inputs, Fn&& fn, const BatchOptions& opts)
    -> MapResult<std::decay_t<std::invoke_result_t<Fn&, const In&>>> {
  using R = std::decay_t<std::invoke_result_t<Fn&, const In&>>;
  const auto jobs = resolve_jobs(opts);
  const auto sizes = chunk_sizes(inputs.size(), jobs, opts.chunk_size);
  std::vector<std::size_t> starts(sizes.size() + 1, 0);
  for (std::size_t c = 0; c < sizes.size(); ++c) starts[c + 1] = starts[c] + sizes[c];

  std::vector<std::optional<R>> slots(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  std::atomic<std::size_t> first_failure{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::size_t> next_chunk{0};
  const bool raise = opts.error_mode == ErrorMode::Raise;

  auto worker = [&] {
    for (std::size_t c = next_chunk++; c < sizes.size(); c = next_chunk++) {
      for (std::size_t i = starts[c]; i < starts[c + 1]; ++i) {
        if (raise && first_failure.load(std::memory_order_relaxed) < i) break;
        try {
          slots[i].emplace(fn(inputs[i]));
        } catch (...) {
          errors[i] = std::current_exception();
          if (raise) {
            auto seen = first_failure.load();
            while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
            }
          }
        }
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(jobs, sizes.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> group;
    group.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) group.emplace_back(worker);
  }

  MapResult<R> result;
  result.report.n_input = inputs.size();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i]) {
      if (raise) std::rethrow_exception(errors[i]);
      result.report.failures.push_back(
          {i, detail::describe_kind(errors[i]), detail::describe_message(errors[i])});
    } else if (slots[i]) {
      result.values.push_back(std::move(*slots[i]));
      result.indices.push_back(i);
    }
  }
  result.report.n_ok = result.values.size();
  return result;
}

struct BatchResult {
  AnyMatrix matrix;
  BatchReport report;
};

namespace detail {

template <class In, class Fn>
BatchResult run_transform(std::span<const In> inputs, const Transformer& t, const BatchOptions& opts, Fn&& one) {
  if (t.output_kind() != DataKind::Vector)
    throw Error(ErrorKind::Composition, "batch transformer must produce vectors");
  auto mapped = map_batch(inputs, one, opts);
  return {assemble(mapped.values, t.width(), t.dtype(), opts.output), std::move(mapped.report)};
}

}  // namespace detail

/// SMILES inputs. Transformers that start at molecules parse implicitly.
inline BatchResult transform_batch(std::span<const std::string> inputs, const Transformer& t,
                                   const BatchOptions& opts = {}) {
  if (t.input_kind() == DataKind::Vector)
    throw Error(ErrorKind::Composition, "transformer does not consume text or molecules");
  return detail::run_transform(inputs, t, opts, [&](const std::string& s) { return t.transform_text(s); });
}

inline BatchResult transform_batch(std::span<const Molecule> inputs, const Transformer& t,
                                   const BatchOptions& opts = {}) {
  if (t.input_kind() != DataKind::Molecule)
    throw Error(ErrorKind::Composition, "transformer does not consume molecules");
  return detail::run_transform(inputs, t, opts, [&](const Molecule& m) { return t.transform_molecule(m); });
}

struct BenchmarkRow {
  std::uint32_t jobs;
  double mean_seconds;
  double speedup;
};

/// Wall-clock timing per jobs value: one warm-up run, then the mean of
/// `repeats` runs. Speedup is t(jobs = 1) / t(jobs = k); jobs = 1 is timed
/// even when it is not requested.
template <class In>
std::vector<BenchmarkRow> benchmark(std::span<const In> inputs, const Transformer& t,
                                    std::span<const std::uint32_t> jobs_list, std::uint32_t repeats = 3) {
  if (repeats < 3) throw Error(ErrorKind::Config, "benchmark needs at least 3 repeats");
  if (jobs_list.empty()) throw Error(ErrorKind::Config, "empty jobs list");
  auto time_jobs = [&](std::uint32_t jobs) {
    if (jobs == 0 || inputs.size() < jobs) throw Error(ErrorKind::Config, "need at least as many inputs as jobs");
    BatchOptions opts;
    opts.jobs = jobs;
    opts.output = OutputForm::Sparse;
    (void)transform_batch(inputs, t, opts);
    double total = 0.0;
    for (std::uint32_t r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      (void)transform_batch(inputs, t, opts);
      total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return total / repeats;
  };
  std::optional<double> sequential;
  std::vector<BenchmarkRow> rows;
  for (auto jobs : jobs_list) {
    const double mean = time_jobs(jobs);
    if (jobs == 1) sequential = mean;
    rows.push_back({jobs, mean, 0.0});
  }
  if (!sequential) sequential = time_jobs(1);
  for (auto& row : rows) row.speedup = row.jobs == 1 ? 1.0 : *sequential / row.mean_seconds;
  return rows;
}

}  // namespace molfp
