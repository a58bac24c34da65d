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

#include "hnn/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "hnn/error.hpp"

namespace hnn {
namespace {

void BitReverse(std::vector<std::complex<double>>& vals) {
  const std::size_t n = vals.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(vals[i], vals[j]);
  }
}

void CheckScale(double scale) {
  Require(std::isfinite(scale) && scale >= kMinScale,
          ErrorCode::kInvalidArgument,
          "scale must be finite and at least 2^10");
}

}  // namespace

Encoder::Encoder(RingParamsPtr params) : params_(std::move(params)) {
  const std::size_t m = 2 * params_->degree();
  const std::size_t slots = m / 4;
  rot_group_.resize(slots);
  std::size_t five = 1;
  for (std::size_t j = 0; j < slots; ++j) {
    rot_group_[j] = five;
    five = five * 5 % m;
  }
  ksi_pows_.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * j / m;
    ksi_pows_[j] = {static_cast<double>(std::cos(angle)),
                    static_cast<double>(std::sin(angle))};
  }
}

void Encoder::SpecialFft(std::vector<std::complex<double>>& vals) const {
  const std::size_t size = vals.size();
  const std::size_t m = ksi_pows_.size() - 1;
  BitReverse(vals);
  for (std::size_t len = 2; len <= size; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t quad = len << 2;
    for (std::size_t i = 0; i < size; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::size_t idx = (rot_group_[j] % quad) * (m / quad);
        const std::complex<double> u = vals[i + j];
        const std::complex<double> v = vals[i + j + half] * ksi_pows_[idx];
        vals[i + j] = u + v;
        vals[i + j + half] = u - v;
      }
    }
  }
}

void Encoder::SpecialFftInverse(std::vector<std::complex<double>>& vals) const {
  const std::size_t size = vals.size();
  const std::size_t m = ksi_pows_.size() - 1;
  for (std::size_t len = size; len >= 2; len >>= 1) {
    const std::size_t half = len >> 1;
    const std::size_t quad = len << 2;
    for (std::size_t i = 0; i < size; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::size_t idx = (quad - rot_group_[j] % quad) * (m / quad);
        const std::complex<double> u = vals[i + j] + vals[i + j + half];
        const std::complex<double> v =
            (vals[i + j] - vals[i + j + half]) * ksi_pows_[idx];
        vals[i + j] = u;
        vals[i + j + half] = v;
      }
    }
  }
  BitReverse(vals);
  const double inv = 1.0 / static_cast<double>(size);
  for (auto& v : vals) v *= inv;
}

Plaintext Encoder::FromCoefficients(const std::vector<long double>& coeffs,
                                    double scale, int level,
                                    double bound) const {
  Require(level >= 0 && level <= params_->max_level(),
          ErrorCode::kInvalidArgument, "level out of range");
  const long double limit = std::exp2l(params_->Log2Modulus(level) - 2);
  RingElement poly(params_, level, Domain::kCoefficient);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const long double c = std::nearbyintl(coeffs[k]);
    Require(std::fabs(c) < limit, ErrorCode::kInvalidArgument,
            "encoded value does not fit the modulus at this level");
    for (int j = 0; j <= level; ++j) {
      const auto q = static_cast<long double>(params_->modulus(j).value());
      long double r = std::fmod(c, q);
      if (r < 0) r += q;
      poly.mutable_residue(j)[k] = static_cast<std::uint64_t>(r);
    }
  }
  return Plaintext(std::move(poly), scale, bound);
}

Plaintext Encoder::Encode(std::span<const std::complex<double>> values,
                          double scale, int level) const {
  CheckScale(scale);
  const std::size_t slots = slot_count();
  Require(values.size() <= slots, ErrorCode::kInvalidArgument,
          "slot vector longer than N/2 = " + std::to_string(slots));
  std::vector<std::complex<double>> vals(slots);
  double bound = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Require(std::isfinite(values[i].real()) && std::isfinite(values[i].imag()),
            ErrorCode::kInvalidArgument, "slot value is not finite");
    vals[i] = values[i];
    bound = std::max(bound, std::abs(values[i]));
  }
  SpecialFftInverse(vals);
  std::vector<long double> coeffs(2 * slots);
  for (std::size_t i = 0; i < slots; ++i) {
    coeffs[i] = static_cast<long double>(vals[i].real()) * scale;
    coeffs[i + slots] = static_cast<long double>(vals[i].imag()) * scale;
  }
  return FromCoefficients(coeffs, scale, level, bound);
}

Plaintext Encoder::Encode(std::span<const double> values, double scale,
                          int level) const {
  std::vector<std::complex<double>> complex_values(values.begin(),
                                                   values.end());
  return Encode(complex_values, scale, level);
}

Plaintext Encoder::EncodeConstant(double value, double scale,
                                  int level) const {
  CheckScale(scale);
  Require(std::isfinite(value), ErrorCode::kInvalidArgument,
          "constant is not finite");
  std::vector<long double> coeffs(params_->degree(), 0.0L);
  coeffs[0] = static_cast<long double>(value) * scale;
  return FromCoefficients(coeffs, scale, level, std::fabs(value));
}

std::vector<std::complex<double>> Encoder::DecodeComplex(
    const Plaintext& pt) const {
  Require(pt.poly().params() != nullptr && *pt.poly().params() == *params_,
          ErrorCode::kParamsMismatch, "plaintext uses different ring params");
  CheckScale(pt.scale());
  const RingElement coeff_poly = ToDomain(pt.poly(), Domain::kCoefficient);
  const std::vector<long double> lifted = LiftCoefficients(coeff_poly);
  if (pt.level() >= 1) {
    const long double limit = std::exp2l(params_->Log2Modulus(pt.level()) - 2);
    for (long double c : lifted) {
      Require(std::fabs(c) < limit, ErrorCode::kFormat,
              "plaintext residues are inconsistent or overflowed");
    }
  }
  const std::size_t slots = slot_count();
  std::vector<std::complex<double>> vals(slots);
  const long double inv_scale = 1.0L / pt.scale();
  for (std::size_t i = 0; i < slots; ++i) {
    vals[i] = {static_cast<double>(lifted[i] * inv_scale),
               static_cast<double>(lifted[i + slots] * inv_scale)};
  }
  SpecialFft(vals);
  return vals;
}

std::vector<double> Encoder::Decode(const Plaintext& pt) const {
  const auto vals = DecodeComplex(pt);
  std::vector<double> out(vals.size());
  std::transform(vals.begin(), vals.end(), out.begin(),
                 [](const std::complex<double>& z) { return z.real(); });
  return out;
}

}  // namespace hnn
