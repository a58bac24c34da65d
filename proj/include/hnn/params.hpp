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

#ifndef HNN_PARAMS_HPP_
#define HNN_PARAMS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hnn/encoding.hpp"
#include "hnn/ring.hpp"

namespace hnn {

inline constexpr int kDefaultDeltaBits = 40;
inline constexpr int kFirstPrimeBits = 60;
inline constexpr double kDefaultErrorStddev = 3.2;
inline constexpr int kParamsVersion = 1;

// Largest log2(Q) allowed for (lambda, N) with a ternary secret, per the
// homomorphic encryption security standard. Empty when N is not tabulated.
std::optional<int> MaxModulusBits(int lambda, std::size_t degree);

struct ParamsConfig {
  int lambda = 128;
  std::size_t degree = 0;
  std::vector<std::uint64_t> moduli;  // q_0 .. q_L
  int delta_bits = kDefaultDeltaBits;
  std::size_t slots = 0;               // K; 0 means N/2
  double noise_budget_bits = 0;        // 0 means the default
  std::size_t hamming_weight = 0;      // 0 means N/2
  double error_stddev = kDefaultErrorStddev;
  bool allow_insecure = false;
};

class SchemeParams {
 public:
  static std::shared_ptr<const SchemeParams> Create(const ParamsConfig& config);

  const ParamsConfig& config() const { return config_; }
  int lambda() const { return config_.lambda; }
  const RingParamsPtr& ring() const { return ring_; }
  const Encoder& encoder() const { return *encoder_; }
  std::size_t degree() const { return ring_->degree(); }
  int max_level() const { return ring_->max_level(); }
  int delta_bits() const { return config_.delta_bits; }
  double delta() const { return level_scales_.back(); }
  std::size_t slots() const { return config_.slots; }
  std::size_t hamming_weight() const { return config_.hamming_weight; }
  double error_stddev() const { return config_.error_stddev; }
  double noise_budget_bits() const { return config_.noise_budget_bits; }
  bool allow_insecure() const { return config_.allow_insecure; }
  double total_modulus_bits() const { return ring_->Log2Modulus(max_level()); }
  // Bytes of one ring element serialized at the top level.
  std::size_t bytes_per_element() const {
    return 8 * degree() * ring_->prime_count();
  }

  // Scale a ciphertext carries at `level` when every multiplication is
  // followed by a rescale: s_L = Delta, s_{l-1} = s_l^2 / q_l.
  double LevelScale(int level) const { return level_scales_.at(level); }

  friend bool operator==(const SchemeParams& a, const SchemeParams& b);

 private:
  SchemeParams() = default;

  ParamsConfig config_;
  RingParamsPtr ring_;
  std::unique_ptr<Encoder> encoder_;
  std::vector<double> level_scales_;
};

using SchemeParamsPtr = std::shared_ptr<const SchemeParams>;

// Smallest secure parameter set with at least `slots` slots and `depth`
// rescale levels. With allow_insecure the table is skipped and N is only
// bounded by the slot count.
SchemeParamsPtr ParamGen(int lambda, std::size_t slots, int depth,
                         bool allow_insecure = false,
                         int delta_bits = kDefaultDeltaBits);

// q_0 followed by scale primes chosen top-down so every canonical level
// scale stays close to 2^delta_bits.
std::vector<std::uint64_t> ChooseModuli(std::size_t degree, int depth,
                                        int delta_bits = kDefaultDeltaBits);

}  // namespace hnn

#endif  // HNN_PARAMS_HPP_
