// Copyright 2026 The HNN Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HNN_PRNG_HPP_
#define HNN_PRNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace hnn {

// ChaCha20 keystream generator. Seeded instances are fully deterministic;
// FromEntropy() draws the key from the operating system.
//
// Satisfies UniformRandomBitGenerator, so it can drive std::shuffle and the
// <random> distributions. Not thread-safe: give each thread its own instance.
class Prng {
 public:
  using result_type = std::uint64_t;

  explicit Prng(std::uint64_t seed);
  static Prng FromEntropy();

  // Derives an independent stream, e.g. one per sampler, from this one.
  Prng Fork();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

  std::uint64_t NextU64();
  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t UniformBelow(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double NextUnit();
  // Standard normal (Box-Muller).
  double NextNormal();

 private:
  explicit Prng(const std::array<std::uint8_t, 32>& key);
  void Refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 12> nonce_{};
  std::uint32_t block_counter_ = 0;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t cursor_ = buffer_.size();
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace hnn

#endif  // HNN_PRNG_HPP_
