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

#include "hnn/modarith.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "hnn/error.hpp"

namespace hnn {

Modulus::Modulus(std::uint64_t value) : value_(value) {
  Require(value > 2 && value < (std::uint64_t{1} << 61) && (value & 1) == 1,
          ErrorCode::kInvalidArgument,
          "modulus must be odd and in (2, 2^61): " + std::to_string(value));
  const uint128_t ratio = ~uint128_t{0} / value;
  ratio_lo_ = static_cast<std::uint64_t>(ratio);
  ratio_hi_ = static_cast<std::uint64_t>(ratio >> 64);
}

int Modulus::bit_count() const { return std::bit_width(value_); }

std::uint64_t Modulus::Pow(std::uint64_t base, std::uint64_t exponent) const {
  std::uint64_t result = 1 % value_;
  base = Reduce(base);
  while (exponent > 0) {
    if (exponent & 1) result = Mul(result, base);
    base = Mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t Modulus::Inverse(std::uint64_t a) const {
  a = Reduce(a);
  Require(a != 0, ErrorCode::kInvalidArgument, "zero has no inverse");
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = value_, new_r = a;
  while (new_r != 0) {
    const __int128 quotient = r / new_r;
    const __int128 tmp_t = t - quotient * new_t;
    t = new_t;
    new_t = tmp_t;
    const __int128 tmp_r = r - quotient * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  Require(r == 1, ErrorCode::kInvalidArgument, "value is not invertible");
  if (t < 0) t += value_;
  return static_cast<std::uint64_t>(t);
}

namespace {

std::uint64_t PowMod(std::uint64_t base, std::uint64_t exponent,
                     std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exponent > 0) {
    if (exponent & 1) result = static_cast<std::uint64_t>(uint128_t{result} * base % n);
    base = static_cast<std::uint64_t>(uint128_t{base} * base % n);
    exponent >>= 1;
  }
  return result;
}

}  // namespace

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t kBases[] = {2,  3,  5,  7,  11, 13,
                                      17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(uint128_t{x} * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> NttPrimesBelow(int bits, std::uint64_t two_n,
                                          std::size_t count,
                                          const std::set<std::uint64_t>& exclude) {
  Require(bits >= 4 && bits <= 61, ErrorCode::kInvalidArgument,
          "prime bit size must be in [4, 61]");
  std::vector<std::uint64_t> primes;
  const std::uint64_t upper = std::uint64_t{1} << bits;
  // Largest candidate below 2^bits of the form k * two_n + 1.
  std::uint64_t candidate = ((upper - 1) / two_n) * two_n + 1;
  if (candidate >= upper) candidate -= two_n;
  while (primes.size() < count) {
    Require(candidate > two_n && candidate > (upper >> 1),
            ErrorCode::kInvalidArgument,
            "not enough NTT-friendly primes of " + std::to_string(bits) +
                " bits for ring degree " + std::to_string(two_n / 2));
    if (!exclude.contains(candidate) && IsPrime(candidate)) {
      primes.push_back(candidate);
    }
    candidate -= two_n;
  }
  return primes;
}

std::uint64_t NearestNttPrime(long double target, std::uint64_t two_n,
                              const std::set<std::uint64_t>& exclude) {
  Require(target > 4.0L * two_n && target < 0x1.0p61L,
          ErrorCode::kInvalidArgument, "prime target out of range");
  const auto base_k = static_cast<std::uint64_t>(std::floor((target - 1) / two_n));
  auto accept = [&](std::uint64_t k) -> std::uint64_t {
    const std::uint64_t p = k * two_n + 1;
    if (p >= (std::uint64_t{1} << 61) || exclude.contains(p) || !IsPrime(p)) return 0;
    return p;
  };
  for (std::uint64_t step = 0; step < base_k; ++step) {
    // Try both neighbours at this distance; prefer the closer one.
    const std::uint64_t lo_k = base_k - step;
    const std::uint64_t hi_k = base_k + 1 + step;
    const std::uint64_t lo = accept(lo_k);
    const std::uint64_t hi = accept(hi_k);
    if (lo && hi) {
      return (target - lo) <= (hi - target) ? lo : hi;
    }
    if (lo) return lo;
    if (hi) return hi;
  }
  Fail(ErrorCode::kInvalidArgument, "no NTT-friendly prime near target");
}

std::uint64_t MinimalPrimitiveRoot(std::uint64_t order, const Modulus& q) {
  const std::uint64_t p = q.value();
  Require(order >= 2 && (order & (order - 1)) == 0 && (p - 1) % order == 0,
          ErrorCode::kInvalidArgument,
          "order must be a power of two dividing q - 1");
  const std::uint64_t cofactor = (p - 1) / order;
  std::uint64_t root = 0;
  for (std::uint64_t g = 2; g < p; ++g) {
    const std::uint64_t candidate = q.Pow(g, cofactor);
    // Primitive iff candidate^(order/2) == -1 for power-of-two order.
    if (q.Pow(candidate, order / 2) == p - 1) {
      root = candidate;
      break;
    }
  }
  Require(root != 0, ErrorCode::kInvalidArgument, "no primitive root found");
  // Walk the odd powers and keep the smallest representative.
  const std::uint64_t square = q.Mul(root, root);
  std::uint64_t best = root;
  std::uint64_t current = root;
  for (std::uint64_t i = 1; i < order / 2; ++i) {
    current = q.Mul(current, square);
    if (current < best) best = current;
  }
  return best;
}

}  // namespace hnn
