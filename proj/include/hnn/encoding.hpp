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

#ifndef HNN_ENCODING_HPP_
#define HNN_ENCODING_HPP_

#include <complex>
#include <span>
#include <vector>

#include "hnn/ring.hpp"

namespace hnn {

// Smallest scale accepted by the encoder.
inline constexpr double kMinScale = 0x1p10;

class Plaintext {
 public:
  Plaintext() = default;
  Plaintext(RingElement poly, double scale, double bound)
      : poly_(std::move(poly)), scale_(scale), bound_(bound) {}

  const RingElement& poly() const { return poly_; }
  RingElement& mutable_poly() { return poly_; }
  double scale() const { return scale_; }
  void set_scale(double scale) { scale_ = scale; }
  int level() const { return poly_.level(); }
  // Largest |slot| of the encoded vector, or +inf when unknown.
  double bound() const { return bound_; }

 private:
  RingElement poly_;
  double scale_ = 0;
  double bound_ = 0;
};

// Packs N/2 complex slots into Z[X]/(X^N + 1). Slot j is the evaluation at
// zeta^(5^j) with zeta = exp(i pi / N); real vectors occupy the real parts.
class Encoder {
 public:
  explicit Encoder(RingParamsPtr params);

  const RingParamsPtr& params() const { return params_; }
  std::size_t slot_count() const { return params_->degree() / 2; }

  Plaintext Encode(std::span<const double> values, double scale,
                   int level) const;
  Plaintext Encode(std::span<const std::complex<double>> values, double scale,
                   int level) const;
  // Every slot equal to value.
  Plaintext EncodeConstant(double value, double scale, int level) const;

  std::vector<std::complex<double>> DecodeComplex(const Plaintext& pt) const;
  // Real parts of all N/2 slots.
  std::vector<double> Decode(const Plaintext& pt) const;

 private:
  void SpecialFft(std::vector<std::complex<double>>& vals) const;
  void SpecialFftInverse(std::vector<std::complex<double>>& vals) const;
  Plaintext FromCoefficients(const std::vector<long double>& coeffs,
                             double scale, int level, double bound) const;

  RingParamsPtr params_;
  std::vector<std::size_t> rot_group_;
  std::vector<std::complex<double>> ksi_pows_;
};

}  // namespace hnn

#endif  // HNN_ENCODING_HPP_
