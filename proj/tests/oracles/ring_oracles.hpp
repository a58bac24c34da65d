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

#ifndef HNN_TESTS_ORACLES_RING_ORACLES_HPP_
#define HNN_TESTS_ORACLES_RING_ORACLES_HPP_

// Quadratic-time reference transforms, written without the library's NTT
// tables so they can check it.

#include <cstdint>
#include <vector>

namespace hnn::testing {

inline std::uint64_t OracleMulMod(std::uint64_t a, std::uint64_t b,
                                  std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline std::uint64_t OraclePow(std::uint64_t a, std::uint64_t e,
                               std::uint64_t q) {
  std::uint64_t r = 1 % q;
  while (e) {
    if (e & 1) r = OracleMulMod(r, a, q);
    a = OracleMulMod(a, a, q);
    e >>= 1;
  }
  return r;
}

// Smallest x with x^n == -1 (mod q): the minimal primitive 2n-th root.
inline std::uint64_t OracleMinimalRoot(std::uint64_t n, std::uint64_t q) {
  for (std::uint64_t x = 2; x < q; ++x) {
    if (OraclePow(x, n, q) == q - 1) return x;
  }
  return 0;
}

inline std::size_t OracleBitReverse(std::size_t x, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t bit = 1; bit < n; bit <<= 1) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

// out[i] = a(psi^(2 * bitrev(i) + 1)): the negacyclic DFT with the psi twist
// in the library's output order.
inline std::vector<std::uint64_t> NaiveNegacyclicDft(
    const std::vector<std::uint64_t>& a, std::uint64_t psi, std::uint64_t q) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t point = OraclePow(psi, 2 * OracleBitReverse(i, n) + 1, q);
    std::uint64_t acc = 0, power = 1;
    for (std::size_t j = 0; j < n; ++j) {
      acc = (acc + OracleMulMod(a[j], power, q)) % q;
      power = OracleMulMod(power, point, q);
    }
    out[i] = acc;
  }
  return out;
}

// c = a * b mod (X^n + 1, q) by direct convolution on signed accumulators.
inline std::vector<std::uint64_t> NaiveNegacyclicProduct(
    const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
    std::uint64_t q) {
  const std::size_t n = a.size();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    unsigned __int128 pos = 0, neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i <= k) {
        pos += static_cast<unsigned __int128>(a[i]) * b[k - i] % q;
      } else {
        neg += static_cast<unsigned __int128>(a[i]) * b[n + k - i] % q;
      }
    }
    const std::uint64_t p = static_cast<std::uint64_t>(pos % q);
    const std::uint64_t m = static_cast<std::uint64_t>(neg % q);
    out[k] = (p + q - m) % q;
  }
  return out;
}

}  // namespace hnn::testing

#endif  // HNN_TESTS_ORACLES_RING_ORACLES_HPP_
