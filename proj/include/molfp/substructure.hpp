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

#include <cstdint>
#include <vector>

#include "molfp/error.hpp"
#include "molfp/fingerprint.hpp"
#include "molfp/key_set.hpp"
#include "molfp/match.hpp"

namespace molfp {

/// Key-based fingerprint: entry i is has_match (binary) or count_unique
/// (count) of key i. No hashing; length equals the key count.
inline FingerprintVector substructure_fingerprint(const Molecule& mol, const KeySet& keys,
                                                  Variant variant) {
  if (keys.empty()) throw Error(ErrorKind::Config, "substructure fingerprint needs a non-empty key set");
  std::vector<FingerprintVector::Entry> entries;
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    const auto& pattern = keys.keys[i].pattern;
    const std::uint32_t value = variant == Variant::Binary
                                    ? static_cast<std::uint32_t>(has_match(pattern, mol))
                                    : static_cast<std::uint32_t>(count_unique(pattern, mol));
    if (value > 0) entries.emplace_back(i, value);
  }
  return FingerprintVector::from_entries(static_cast<std::uint32_t>(keys.size()), variant,
                                         std::move(entries));
}

}  // namespace molfp
