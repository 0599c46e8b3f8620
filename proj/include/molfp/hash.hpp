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
#include <span>

namespace molfp {

/// Feature hashing used by every hashed fingerprint family.
///
/// Values are serialized as little-endian 32-bit words and fed through
/// 32-bit FNV-1a; the result is passed through the MurmurHash3 `fmix32`
/// finalizer so that the low bits (which select the vector position via
/// `hash % length`) are well mixed. Output is identical on every platform.
class FeatureHasher {
 public:
  static constexpr std::uint32_t kOffsetBasis = 2166136261u;
  static constexpr std::uint32_t kPrime = 16777619u;

  constexpr FeatureHasher& add(std::uint32_t value) noexcept {
    for (int shift = 0; shift < 32; shift += 8) {
      state_ ^= (value >> shift) & 0xffu;
      state_ *= kPrime;
    }
    return *this;
  }

  constexpr FeatureHasher& add(std::int32_t value) noexcept {
    return add(static_cast<std::uint32_t>(value));
  }

  constexpr FeatureHasher& add(std::span<const std::uint32_t> values) noexcept {
    add(static_cast<std::uint32_t>(values.size()));
    for (auto v : values) add(v);
    return *this;
  }

  constexpr std::uint32_t finish() const noexcept { return fmix32(state_); }

  static constexpr std::uint32_t fmix32(std::uint32_t h) noexcept {
    h ^= h >> 16;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    h *= 0xc2b2ae35u;
    h ^= h >> 16;
    return h;
  }

 private:
  std::uint32_t state_ = kOffsetBasis;
};

template <class... Ts>
constexpr std::uint32_t hash_words(Ts... values) noexcept {
  FeatureHasher h;
  (h.add(values), ...);
  return h.finish();
}

}  // namespace molfp
