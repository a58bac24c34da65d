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

#ifndef HNN_CIPHERTEXT_HPP_
#define HNN_CIPHERTEXT_HPP_

#include <vector>

#include "hnn/params.hpp"

namespace hnn {

// Parts are kept in the evaluation domain. noise_bits is log2 of a bound on
// |decoded slot - message| * Delta; magnitude bounds |message| per slot.
class Ciphertext {
 public:
  Ciphertext() = default;
  Ciphertext(SchemeParamsPtr params, std::vector<RingElement> parts,
             double scale, double noise_bits, double magnitude);

  const SchemeParamsPtr& params() const { return params_; }
  std::size_t size() const { return parts_.size(); }
  const RingElement& part(std::size_t i) const { return parts_[i]; }
  RingElement& mutable_part(std::size_t i) { return parts_[i]; }
  const std::vector<RingElement>& parts() const { return parts_; }
  int level() const { return parts_.empty() ? -1 : parts_.front().level(); }
  double scale() const { return scale_; }
  double noise_bits() const { return noise_bits_; }
  double magnitude() const { return magnitude_; }

  void set_scale(double scale) { scale_ = scale; }
  void set_noise_bits(double bits) { noise_bits_ = bits; }
  void set_magnitude(double magnitude) { magnitude_ = magnitude; }

 private:
  SchemeParamsPtr params_;
  std::vector<RingElement> parts_;
  double scale_ = 0;
  double noise_bits_ = 0;
  double magnitude_ = 0;
};

}  // namespace hnn

#endif  // HNN_CIPHERTEXT_HPP_
