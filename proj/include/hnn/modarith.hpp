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

#ifndef HNN_MODARITH_HPP_
#define HNN_MODARITH_HPP_

#include <cstdint>
#include <set>
#include <vector>

namespace hnn {

using uint128_t = unsigned __int128;

// A word-size odd modulus 2 < q < 2^61 with a precomputed Barrett ratio.
class Modulus {
 public:
  explicit Modulus(std::uint64_t value);

  std::uint64_t value() const { return value_; }
  int bit_count() const;

  // Barrett reduction of an arbitrary 128-bit value.
  std::uint64_t Reduce(uint128_t x) const {
    const auto lo = static_cast<std::uint64_t>(x);
    const auto hi = static_cast<std::uint64_t>(x >> 64);
    const std::uint64_t carry =
        static_cast<std::uint64_t>((uint128_t{lo} * ratio_lo_) >> 64);
    uint128_t t = uint128_t{lo} * ratio_hi_;
    std::uint64_t t_lo = static_cast<std::uint64_t>(t);
    std::uint64_t acc = t_lo + carry;
    const std::uint64_t upper =
        static_cast<std::uint64_t>(t >> 64) + (acc < t_lo ? 1 : 0);
    t = uint128_t{hi} * ratio_lo_;
    t_lo = static_cast<std::uint64_t>(t);
    const std::uint64_t sum = acc + t_lo;
    const std::uint64_t carry2 =
        static_cast<std::uint64_t>(t >> 64) + (sum < acc ? 1 : 0);
    const std::uint64_t quotient = hi * ratio_hi_ + upper + carry2;
    const std::uint64_t r = lo - quotient * value_;
    return r >= value_ ? r - value_ : r;
  }

  std::uint64_t Reduce(std::uint64_t x) const {
    return x >= value_ ? x % value_ : x;
  }

  std::uint64_t Mul(std::uint64_t a, std::uint64_t b) const {
    return Reduce(uint128_t{a} * b);
  }
  std::uint64_t Add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  std::uint64_t Sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + value_ - b;
  }
  std::uint64_t Neg(std::uint64_t a) const { return a == 0 ? 0 : value_ - a; }

  std::uint64_t Pow(std::uint64_t base, std::uint64_t exponent) const;
  // Requires gcd(a, q) == 1; q is prime everywhere this is used.
  std::uint64_t Inverse(std::uint64_t a) const;

  std::uint64_t FromSigned(std::int64_t x) const {
    const std::int64_t q = static_cast<std::int64_t>(value_);
    std::int64_t r = x % q;
    if (r < 0) r += q;
    return static_cast<std::uint64_t>(r);
  }
  // Signed representative in (-q/2, q/2].
  std::int64_t Centered(std::uint64_t a) const {
    return a > value_ / 2 ? static_cast<std::int64_t>(a) -
                                static_cast<std::int64_t>(value_)
                          : static_cast<std::int64_t>(a);
  }

  // floor(w * 2^64 / q), the companion constant for MulShoup.
  std::uint64_t ShoupPrecompute(std::uint64_t w) const {
    return static_cast<std::uint64_t>((uint128_t{w} << 64) / value_);
  }
  std::uint64_t MulShoup(std::uint64_t x, std::uint64_t w,
                         std::uint64_t w_shoup) const {
    const auto q_est =
        static_cast<std::uint64_t>((uint128_t{x} * w_shoup) >> 64);
    const std::uint64_t r = x * w - q_est * value_;
    return r >= value_ ? r - value_ : r;
  }

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.value_ == b.value_;
  }

 private:
  std::uint64_t value_;
  std::uint64_t ratio_lo_;
  std::uint64_t ratio_hi_;
};

// Deterministic Miller-Rabin for the full 64-bit range.
bool IsPrime(std::uint64_t n);

// Largest primes below 2^bits that are congruent to 1 mod `two_n`, skipping
// anything in `exclude`.
std::vector<std::uint64_t> NttPrimesBelow(int bits, std::uint64_t two_n,
                                          std::size_t count,
                                          const std::set<std::uint64_t>& exclude = {});

// The prime congruent to 1 mod `two_n` closest to `target`, skipping
// anything in `exclude`.
std::uint64_t NearestNttPrime(long double target, std::uint64_t two_n,
                              const std::set<std::uint64_t>& exclude = {});

// Smallest primitive `order`-th root of unity modulo prime q; `order` must
// divide q - 1.
std::uint64_t MinimalPrimitiveRoot(std::uint64_t order, const Modulus& q);

}  // namespace hnn

#endif  // HNN_MODARITH_HPP_
