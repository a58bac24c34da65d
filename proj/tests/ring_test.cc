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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hnn/error.hpp"
#include "hnn/ring.hpp"
#include "oracles/ring_oracles.hpp"

namespace hnn {
namespace {

RingParamsPtr MakeRing(std::size_t n, std::size_t primes, int bits = 50) {
  return RingParams::Create(n, NttPrimesBelow(bits, 2 * n, primes));
}

RingElement RandomElement(const RingParamsPtr& params, int level, Prng& prng) {
  return SampleUniform(params, level, prng);
}

std::vector<std::uint64_t> ToVector(std::span<const std::uint64_t> s) {
  return {s.begin(), s.end()};
}

RingElement Monomial(const RingParamsPtr& params, std::size_t power,
                     std::int64_t coeff = 1) {
  std::vector<std::int64_t> c(params->degree(), 0);
  c[power] = coeff;
  return RingElement::FromSigned(params, params->max_level(), c);
}

TEST(ModulusTest, BarrettMatchesDivision) {
  Prng prng(1);
  for (std::uint64_t q : NttPrimesBelow(60, 1 << 16, 3)) {
    Modulus m(q);
    for (int i = 0; i < 20000; ++i) {
      const uint128_t x = (uint128_t{prng.NextU64()} << 64) | prng.NextU64();
      ASSERT_EQ(m.Reduce(x), static_cast<std::uint64_t>(x % q));
    }
    ASSERT_EQ(m.Reduce(~uint128_t{0}), static_cast<std::uint64_t>(~uint128_t{0} % q));
  }
}

TEST(ModulusTest, ShoupAndInverse) {
  Prng prng(2);
  Modulus m(NttPrimesBelow(55, 64, 1)[0]);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t a = prng.UniformBelow(m.value());
    const std::uint64_t w = prng.UniformBelow(m.value());
    EXPECT_EQ(m.MulShoup(a, w, m.ShoupPrecompute(w)), m.Mul(a, w));
    if (a != 0) EXPECT_EQ(m.Mul(a, m.Inverse(a)), 1u);
  }
  EXPECT_EQ(m.Centered(m.value() - 1), -1);
  EXPECT_EQ(m.FromSigned(-1), m.value() - 1);
}

TEST(ModulusTest, PrimalityAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    ASSERT_EQ(IsPrime(n), prime) << n;
  }
  EXPECT_TRUE(IsPrime(1152921504606584833ULL));  // 2^60 - 2^18 + 1
  EXPECT_FALSE(IsPrime(3215031751ULL));          // strong pseudoprime to 2,3,5,7
}

TEST(ModulusTest, PrimeSearch) {
  const auto primes = NttPrimesBelow(40, 1 << 13, 4);
  ASSERT_EQ(primes.size(), 4u);
  for (auto q : primes) {
    EXPECT_TRUE(IsPrime(q));
    EXPECT_EQ(q % (1 << 13), 1u);
    EXPECT_LT(q, 1ULL << 40);
  }
  const std::uint64_t near = NearestNttPrime(0x1.0p40L, 1 << 13);
  EXPECT_EQ(near % (1 << 13), 1u);
  EXPECT_LT(std::fabs(static_cast<double>(near) - 0x1.0p40) / 0x1.0p40, 1e-3);
}

TEST(RingParamsTest, RejectsBadChains) {
  EXPECT_THROW(RingParams::Create(4, {17}), Error);
  EXPECT_THROW(RingParams::Create(12, {97}), Error);
  EXPECT_THROW(RingParams::Create(8, {19}), Error);   // 19 != 1 mod 16
  EXPECT_THROW(RingParams::Create(8, {21}), Error);   // not prime
  EXPECT_THROW(RingParams::Create(8, {17, 17}), Error);
  EXPECT_NO_THROW(RingParams::Create(8, {17, 97}));
}

TEST(NttTest, ZeroMapsToZero) {
  auto params = MakeRing(64, 3);
  RingElement zero(params, 2, Domain::kCoefficient);
  RingElement eval = NttForward(zero);
  for (int j = 0; j <= 2; ++j) {
    for (auto x : eval.residue(j)) EXPECT_EQ(x, 0u);
  }
}

TEST(NttTest, RoundTripIsExact) {
  Prng prng(3);
  for (std::size_t n : {8, 64, 256, 1024}) {
    auto params = MakeRing(n, 3);
    for (int trial = 0; trial < 1000 / static_cast<int>(n / 8 + 1) + 5; ++trial) {
      const int level = trial % 3;
      RingElement a = RandomElement(params, level, prng);
      ASSERT_EQ(NttInverse(NttForward(a)), a);
      RingElement b = SampleUniform(params, level, prng, Domain::kEvaluation);
      ASSERT_EQ(NttForward(NttInverse(b)), b);
    }
  }
}

TEST(NttTest, ThousandRandomRoundTrips) {
  Prng prng(4);
  auto params = MakeRing(32, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    RingElement a = RandomElement(params, trial % 2, prng);
    ASSERT_EQ(NttInverse(NttForward(a)), a);
  }
}

TEST(NttTest, MatchesNaiveTransformN8Q17) {
  auto params = RingParams::Create(8, {17});
  const std::uint64_t psi = testing::OracleMinimalRoot(8, 17);
  ASSERT_EQ(psi, 3u);
  EXPECT_EQ(params->ntt(0).psi(), psi);
  std::vector<std::int64_t> coeffs = {1, 2, 3, 4, 5, 6, 7, 8};
  RingElement a = RingElement::FromSigned(params, 0, coeffs);
  RingElement eval = NttForward(a);
  const auto expected = testing::NaiveNegacyclicDft(
      {1, 2, 3, 4, 5, 6, 7, 8}, psi, 17);
  EXPECT_EQ(ToVector(eval.residue(0)), expected);
  EXPECT_EQ(NttInverse(eval), a);
}

TEST(NttTest, MatchesNaiveTransformRandom) {
  Prng prng(5);
  auto params = MakeRing(64, 2, 20);
  for (int trial = 0; trial < 10; ++trial) {
    RingElement a = RandomElement(params, 1, prng);
    RingElement eval = NttForward(a);
    for (int j = 0; j <= 1; ++j) {
      const std::uint64_t q = params->modulus(j).value();
      const std::uint64_t psi = testing::OracleMinimalRoot(64, q);
      EXPECT_EQ(ToVector(eval.residue(j)),
                testing::NaiveNegacyclicDft(ToVector(a.residue(j)), psi, q));
    }
  }
}

TEST(NttTest, DomainErrors) {
  auto params = MakeRing(8, 1);
  RingElement a(params, 0, Domain::kEvaluation);
  EXPECT_THROW(NttForward(a), Error);
  RingElement b(params, 0, Domain::kCoefficient);
  EXPECT_THROW(NttInverse(b), Error);
}

TEST(RingMulTest, Monomials) {
  auto params = MakeRing(8, 2);
  // X * X = X^2.
  EXPECT_EQ(NttInverse(RingMul(Monomial(params, 1), Monomial(params, 1))),
            Monomial(params, 2));
  // X^7 * X = X^8 = -1.
  EXPECT_EQ(NttInverse(RingMul(Monomial(params, 7), Monomial(params, 1))),
            Monomial(params, 0, -1));
  const std::uint64_t q0 = params->modulus(0).value();
  EXPECT_EQ(NttInverse(RingMul(Monomial(params, 7), Monomial(params, 1)))
                .residue(0)[0],
            q0 - 1);
}

TEST(RingMulTest, MatchesNaiveConvolution) {
  Prng prng(6);
  auto params = MakeRing(64, 2);
  for (int trial = 0; trial < 20; ++trial) {
    RingElement a = RandomElement(params, 1, prng);
    RingElement b = RandomElement(params, 1, prng);
    RingElement c = NttInverse(RingMul(a, b));
    for (int j = 0; j <= 1; ++j) {
      EXPECT_EQ(ToVector(c.residue(j)),
                testing::NaiveNegacyclicProduct(ToVector(a.residue(j)),
                                                ToVector(b.residue(j)),
                                                params->modulus(j).value()));
    }
  }
}

TEST(RingMulTest, LevelAndParamsMismatch) {
  Prng prng(7);
  auto params = MakeRing(8, 2);
  auto other = MakeRing(16, 2);
  EXPECT_THROW(RingMul(RandomElement(params, 1, prng),
                       RandomElement(params, 0, prng)),
               Error);
  EXPECT_THROW(RingMul(RandomElement(params, 0, prng),
                       RandomElement(other, 0, prng)),
               Error);
}

TEST(SchoolbookTest, SmallIdentities) {
  auto params = MakeRing(8, 1);
  RingElement one_plus_x = RingElement::FromSigned(params, 0, std::vector<std::int64_t>{1, 1});
  RingElement one_minus_x = RingElement::FromSigned(params, 0, std::vector<std::int64_t>{1, -1});
  RingElement expected = RingElement::FromSigned(params, 0, std::vector<std::int64_t>{1, 0, -1});
  EXPECT_EQ(SchoolbookMul(one_plus_x, one_minus_x), expected);
  RingElement c3 = RingElement::FromSigned(params, 0, std::vector<std::int64_t>{3});
  RingElement c5 = RingElement::FromSigned(params, 0, std::vector<std::int64_t>{-5});
  EXPECT_EQ(SchoolbookMul(c3, c5),
            RingElement::FromSigned(params, 0, std::vector<std::int64_t>{-15}));
  EXPECT_THROW(SchoolbookMul(NttForward(c3), NttForward(c5)), Error);
}

TEST(SchoolbookTest, AgreesWithNttProduct) {
  Prng prng(8);
  for (std::size_t n : {8, 64}) {
    auto params = MakeRing(n, 2);
    for (int trial = 0; trial < 200; ++trial) {
      RingElement a = RandomElement(params, 1, prng);
      RingElement b = RandomElement(params, 1, prng);
      ASSERT_EQ(SchoolbookMul(a, b), NttInverse(RingMul(a, b)));
    }
  }
}

TEST(SchoolbookTest, ExhaustiveN8EdgeCoefficients) {
  // Every a with coefficients in {0, 1, q-1} against a fixed panel of b.
  auto params = RingParams::Create(8, NttPrimesBelow(59, 16, 1));
  const std::int64_t values[3] = {0, 1, -1};
  Prng prng(9);
  std::vector<RingElement> panel;
  for (int i = 0; i < 4; ++i) panel.push_back(RandomElement(params, 0, prng));
  std::vector<std::int64_t> coeffs(8);
  for (int code = 0; code < 6561; ++code) {
    int c = code;
    for (auto& x : coeffs) {
      x = values[c % 3];
      c /= 3;
    }
    RingElement a = RingElement::FromSigned(params, 0, coeffs);
    panel.push_back(a);
    for (std::size_t k = 0; k < 4; ++k) {
      ASSERT_EQ(SchoolbookMul(a, panel[k]), NttInverse(RingMul(a, panel[k])));
    }
    panel.pop_back();
  }
}

TEST(RingAlgebraTest, CommutativeAssociativeDistributive) {
  Prng prng(10);
  auto params = MakeRing(64, 3);
  for (int trial = 0; trial < 50; ++trial) {
    RingElement a = SampleUniform(params, 2, prng, Domain::kEvaluation);
    RingElement b = SampleUniform(params, 2, prng, Domain::kEvaluation);
    RingElement c = SampleUniform(params, 2, prng, Domain::kEvaluation);
    EXPECT_EQ(Add(a, b), Add(b, a));
    EXPECT_EQ(RingMul(a, b), RingMul(b, a));
    EXPECT_EQ(Add(Add(a, b), c), Add(a, Add(b, c)));
    EXPECT_EQ(RingMul(RingMul(a, b), c), RingMul(a, RingMul(b, c)));
    EXPECT_EQ(RingMul(a, Add(b, c)), Add(RingMul(a, b), RingMul(a, c)));
    EXPECT_EQ(Sub(Add(a, b), b), a);
    EXPECT_EQ(Add(a, Negate(a)), RingElement(params, 2, Domain::kEvaluation));
  }
}

TEST(RingAlgebraTest, MultiplyingByXNTimesNegates) {
  Prng prng(11);
  auto params = MakeRing(16, 2);
  RingElement a = RandomElement(params, 1, prng);
  RingElement x = Monomial(params, 1);
  x.DropToLevelInPlace(1);
  RingElement acc = a;
  for (int i = 0; i < 16; ++i) acc = NttInverse(RingMul(acc, x));
  EXPECT_EQ(acc, Negate(a));
}

TEST(SamplerTest, TernaryHasExactWeight) {
  Prng prng(12);
  auto params = MakeRing(64, 2);
  RingElement s = SampleTernary(params, 1, 32, prng);
  const auto coeffs = CenteredCoefficients(s);
  int nonzero = 0;
  for (auto c : coeffs) {
    EXPECT_TRUE(c == 0 || c == 1 || c == -1);
    nonzero += c != 0;
  }
  EXPECT_EQ(nonzero, 32);
  EXPECT_THROW(SampleTernary(params, 1, 65, prng), Error);
  EXPECT_THROW(SampleTernary(params, 1, 0, prng), Error);
}

TEST(SamplerTest, GaussianMeanAndBound) {
  Prng prng(13);
  auto params = MakeRing(1024, 1);
  const double sigma = 3.2;
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;
  while (count < 100000) {
    RingElement e = SampleGaussian(params, 0, sigma, prng);
    for (auto c : CenteredCoefficients(e)) {
      ASSERT_LE(std::abs(c), 6 * sigma + 0.5);
      sum += c;
      sum_sq += static_cast<double>(c) * c;
      ++count;
    }
  }
  const double mean = sum / count;
  EXPECT_LT(std::fabs(mean), 5 * sigma / std::sqrt(100000.0));
  // Rounding adds 1/12 to the variance.
  EXPECT_NEAR(std::sqrt(sum_sq / count), std::sqrt(sigma * sigma + 1.0 / 12), 0.05);
  EXPECT_THROW(SampleGaussian(params, 0, 0.0, prng), Error);
}

TEST(SamplerTest, SeedDeterminism) {
  auto params = MakeRing(64, 2);
  Prng p1(99), p2(99), p3(100);
  EXPECT_EQ(SampleUniform(params, 1, p1), SampleUniform(params, 1, p2));
  EXPECT_EQ(SampleTernary(params, 1, 10, p1), SampleTernary(params, 1, 10, p2));
  EXPECT_EQ(SampleGaussian(params, 1, 3.2, p1), SampleGaussian(params, 1, 3.2, p2));
  EXPECT_NE(SampleUniform(params, 1, p1), SampleUniform(params, 1, p3));
}

TEST(DropLevelTest, IdentityAndComposition) {
  Prng prng(14);
  auto params = MakeRing(32, 4);
  RingElement a = RandomElement(params, 3, prng);
  EXPECT_EQ(DropLevel(a, 3), a);
  EXPECT_EQ(DropLevel(DropLevel(a, 2), 0), DropLevel(a, 0));
  EXPECT_THROW(DropLevel(DropLevel(a, 1), 2), Error);
}

TEST(DropLevelTest, SurvivingPrimesMatchOracle) {
  Prng prng(15);
  auto params = MakeRing(32, 4);
  RingElement a = RandomElement(params, 3, prng);
  RingElement b = RandomElement(params, 3, prng);
  RingElement sum = DropLevel(Add(a, b), 1);
  RingElement prod = NttInverse(RingMul(DropLevel(a, 1), DropLevel(b, 1)));
  for (int j = 0; j <= 1; ++j) {
    const std::uint64_t q = params->modulus(j).value();
    const auto ra = ToVector(a.residue(j));
    const auto rb = ToVector(b.residue(j));
    std::vector<std::uint64_t> expected_sum(ra.size());
    for (std::size_t k = 0; k < ra.size(); ++k) expected_sum[k] = (ra[k] + rb[k]) % q;
    EXPECT_EQ(ToVector(sum.residue(j)), expected_sum);
    EXPECT_EQ(ToVector(prod.residue(j)), testing::NaiveNegacyclicProduct(ra, rb, q));
  }
}

TEST(LiftTest, RecoversSignedValuesAtEveryLevel) {
  Prng prng(16);
  auto params = MakeRing(16, 5, 40);
  std::vector<std::int64_t> coeffs(16);
  for (auto& c : coeffs) {
    c = static_cast<std::int64_t>(prng.UniformBelow(1ULL << 62)) - (1LL << 61);
  }
  for (int level = 0; level <= 4; ++level) {
    if (level == 0) continue;  // 2^61 does not fit under one 40-bit prime
    auto lifted = LiftCoefficients(RingElement::FromSigned(params, level, coeffs));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      EXPECT_EQ(static_cast<std::int64_t>(lifted[k]), coeffs[k]);
    }
  }
}

}  // namespace
}  // namespace hnn
