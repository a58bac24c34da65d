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

#include <bit>

#include "hnn/error.hpp"
#include "hnn/ring.hpp"

namespace hnn {
namespace {

std::size_t BitReverse(std::size_t x, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

}  // namespace

NttTables::NttTables(std::size_t degree, const Modulus& modulus)
    : degree_(degree),
      log_degree_(std::countr_zero(degree)),
      modulus_(modulus),
      psi_(MinimalPrimitiveRoot(2 * degree, modulus)) {
  roots_.resize(degree);
  inv_roots_.resize(degree);
  const std::uint64_t psi_inv = modulus_.Inverse(psi_);
  std::uint64_t power = 1, inv_power = 1;
  std::vector<std::uint64_t> powers(degree), inv_powers(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    powers[i] = power;
    inv_powers[i] = inv_power;
    power = modulus_.Mul(power, psi_);
    inv_power = modulus_.Mul(inv_power, psi_inv);
  }
  roots_shoup_.resize(degree);
  inv_roots_shoup_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    const std::size_t r = BitReverse(i, log_degree_);
    roots_[i] = powers[r];
    inv_roots_[i] = inv_powers[r];
    roots_shoup_[i] = modulus_.ShoupPrecompute(roots_[i]);
    inv_roots_shoup_[i] = modulus_.ShoupPrecompute(inv_roots_[i]);
  }
  inv_degree_ = modulus_.Inverse(degree);
  inv_degree_shoup_ = modulus_.ShoupPrecompute(inv_degree_);
}

std::uint64_t NttTables::EvaluationExponent(std::size_t i) const {
  return 2 * BitReverse(i, log_degree_) + 1;
}

void NttTables::Forward(std::uint64_t* a) const {
  const std::uint64_t q = modulus_.value();
  std::size_t t = degree_;
  for (std::size_t m = 1; m < degree_; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j1 = 2 * i * t;
      const std::uint64_t w = roots_[m + i];
      const std::uint64_t w_shoup = roots_shoup_[m + i];
      std::uint64_t* x = a + j1;
      std::uint64_t* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        const std::uint64_t u = x[j];
        const std::uint64_t v = modulus_.MulShoup(y[j], w, w_shoup);
        const std::uint64_t sum = u + v;
        x[j] = sum >= q ? sum - q : sum;
        y[j] = u >= v ? u - v : u + q - v;
      }
    }
  }
}

void NttTables::Inverse(std::uint64_t* a) const {
  const std::uint64_t q = modulus_.value();
  std::size_t t = 1;
  for (std::size_t m = degree_; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    std::size_t j1 = 0;
    for (std::size_t i = 0; i < h; ++i) {
      const std::uint64_t w = inv_roots_[h + i];
      const std::uint64_t w_shoup = inv_roots_shoup_[h + i];
      std::uint64_t* x = a + j1;
      std::uint64_t* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        const std::uint64_t u = x[j];
        const std::uint64_t v = y[j];
        const std::uint64_t sum = u + v;
        x[j] = sum >= q ? sum - q : sum;
        y[j] = modulus_.MulShoup(u >= v ? u - v : u + q - v, w, w_shoup);
      }
      j1 += 2 * t;
    }
    t <<= 1;
  }
  for (std::size_t j = 0; j < degree_; ++j) {
    a[j] = modulus_.MulShoup(a[j], inv_degree_, inv_degree_shoup_);
  }
}

}  // namespace hnn
