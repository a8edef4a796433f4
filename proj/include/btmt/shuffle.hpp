//
// Copyright 2026 The btmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Reproducible shuffling. The stream and the swap order are part of the
// on-disk contract: a given seed must produce the same permutation in every
// implementation of the toolkit.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Fisher-Yates runs i = n-1 down to 1 and swaps element i with element
// j = next() mod (i + 1).

#ifndef BTMT_SHUFFLE_HPP_
#define BTMT_SHUFFLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace btmt {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) noexcept : state_(seed) {}

  constexpr uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

template <typename T>
void fisher_yates(std::span<T> items, uint64_t seed) {
  if (items.size() < 2) return;
  SplitMix64 rng(seed);
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    using std::swap;
    swap(items[i], items[j]);
  }
}

}  // namespace btmt

#endif  // BTMT_SHUFFLE_HPP_
