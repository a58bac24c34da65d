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

#ifndef HNN_TESTS_ORACLES_EMBEDDING_ORACLE_HPP_
#define HNN_TESTS_ORACLES_EMBEDDING_ORACLE_HPP_

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace hnn::testing {

using ComplexL = std::complex<long double>;

// Root zeta^(5^j) for slot j, zeta = exp(2 pi i / 2N).
inline ComplexL SlotRoot(std::size_t n, std::size_t j, long double sign = 1) {
  const std::size_t m = 2 * n;
  std::size_t e = 1;
  for (std::size_t t = 0; t < j; ++t) e = e * 5 % m;
  const long double angle = sign * 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(e) / m;
  return {std::cos(angle), std::sin(angle)};
}

// slot_j = sum_k m_k zeta_j^k, direct O(N^2) evaluation.
inline std::vector<ComplexL> NaiveEmbedding(
    const std::vector<long double>& coeffs) {
  const std::size_t n = coeffs.size();
  std::vector<ComplexL> out(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const ComplexL root = SlotRoot(n, j);
    ComplexL power = 1, acc = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += coeffs[k] * power;
      power *= root;
    }
    out[j] = acc;
  }
  return out;
}

// Real coefficients whose embedding is z: m_k = (2/N) Re sum_j z_j zeta_j^-k.
inline std::vector<long double> NaiveInverseEmbedding(
    const std::vector<ComplexL>& z, std::size_t n) {
  std::vector<long double> out(n);
  for (std::size_t j = 0; j < z.size(); ++j) {
    const ComplexL root = SlotRoot(n, j, -1);
    ComplexL power = 1;
    for (std::size_t k = 0; k < n; ++k) {
      out[k] += (z[j] * power).real();
      power *= root;
    }
  }
  for (auto& c : out) c *= 2.0L / static_cast<long double>(n);
  return out;
}

}  // namespace hnn::testing

#endif  // HNN_TESTS_ORACLES_EMBEDDING_ORACLE_HPP_
