// Copyright 2026 The mcvbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCVBENCH_RANDOM_STREAM_HPP
#define MCVBENCH_RANDOM_STREAM_HPP

#include <cstdint>

namespace mcvbench {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kImageGamma = 0xC2B2AE3D27D4EB4FULL;

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. The sequence depends only on the initial state, so
/// corpora are reproducible bit-for-bit on every platform.
class RandomStream {
 public:
  constexpr explicit RandomStream(std::uint64_t state = 0) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform draw in [0, 1) with 53 bits of resolution.
  constexpr double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t state_;
};

/// Stream for one (condition, image) pair of a corpus.
constexpr RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t condition_ordinal,
                                     std::uint64_t image_index) noexcept {
  return RandomStream(
      mix64(master_seed ^ (condition_ordinal * kGoldenGamma) ^ (image_index * kImageGamma)));
}

}  // namespace mcvbench

#endif  // MCVBENCH_RANDOM_STREAM_HPP
