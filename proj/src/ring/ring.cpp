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

#include "hnn/ring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "hnn/error.hpp"

namespace hnn {

std::shared_ptr<const RingParams> RingParams::Create(
    std::size_t degree, std::vector<std::uint64_t> primes) {
  Require(degree >= 8 && std::has_single_bit(degree),
          ErrorCode::kInvalidArgument,
          "ring degree must be a power of two >= 8, got " +
              std::to_string(degree));
  Require(!primes.empty(), ErrorCode::kInvalidArgument,
          "modulus chain is empty");
  std::set<std::uint64_t> seen;
  for (std::uint64_t q : primes) {
    Require(IsPrime(q), ErrorCode::kInvalidArgument,
            "modulus " + std::to_string(q) + " is not prime");
    Require(q % (2 * degree) == 1, ErrorCode::kInvalidArgument,
            "modulus " + std::to_string(q) + " is not 1 mod 2N");
    Require(seen.insert(q).second, ErrorCode::kInvalidArgument,
            "modulus " + std::to_string(q) + " repeated in chain");
  }
  std::shared_ptr<RingParams> params(new RingParams());
  params->degree_ = degree;
  params->log_degree_ = std::countr_zero(degree);
  const std::size_t count = primes.size();
  for (std::uint64_t q : primes) {
    params->moduli_.emplace_back(q);
    params->ntt_.push_back(
        std::make_unique<NttTables>(degree, params->moduli_.back()));
  }
  params->garner_inverse_.assign(count * count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      params->garner_inverse_[i * count + j] =
          params->moduli_[i].Inverse(params->moduli_[j].value() %
                                     params->moduli_[i].value());
    }
  }
  return params;
}

std::vector<std::uint64_t> RingParams::primes() const {
  std::vector<std::uint64_t> out;
  out.reserve(moduli_.size());
  for (const auto& m : moduli_) out.push_back(m.value());
  return out;
}

double RingParams::Log2Modulus(int level) const {
  double bits = 0.0;
  for (int j = 0; j <= level; ++j) {
    bits += std::log2(static_cast<double>(moduli_[j].value()));
  }
  return bits;
}

bool operator==(const RingParams& a, const RingParams& b) {
  return a.degree_ == b.degree_ && a.moduli_ == b.moduli_;
}

namespace {

void CheckCompatible(const RingElement& a, const RingElement& b) {
  Require(a.params() && b.params(), ErrorCode::kInvalidArgument,
          "uninitialised ring element");
  Require(a.params() == b.params() || *a.params() == *b.params(),
          ErrorCode::kParamsMismatch, "ring elements over different rings");
  Require(a.level() == b.level(), ErrorCode::kLevelMismatch,
          "ring elements at different levels: " + std::to_string(a.level()) +
              " vs " + std::to_string(b.level()));
  Require(a.domain() == b.domain(), ErrorCode::kDomainMismatch,
          "ring elements in different domains");
}

}  // namespace

RingElement::RingElement(RingParamsPtr params, int level, Domain domain)
    : params_(std::move(params)), level_(level), domain_(domain) {
  Require(params_ != nullptr, ErrorCode::kInvalidArgument, "null ring params");
  Require(level >= 0 && level <= params_->max_level(),
          ErrorCode::kInvalidArgument,
          "level " + std::to_string(level) + " outside modulus chain");
  data_.assign(static_cast<std::size_t>(level + 1) * params_->degree(), 0);
}

RingElement RingElement::FromSigned(RingParamsPtr params, int level,
                                    std::span<const std::int64_t> coefficients) {
  RingElement out(std::move(params), level, Domain::kCoefficient);
  Require(coefficients.size() <= out.degree(), ErrorCode::kInvalidArgument,
          "more coefficients than the ring degree");
  for (int j = 0; j <= level; ++j) {
    const Modulus& q = out.params_->modulus(j);
    auto dst = out.mutable_residue(j);
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      dst[k] = q.FromSigned(coefficients[k]);
    }
  }
  return out;
}

void RingElement::ToEvaluationInPlace() {
  Require(domain_ == Domain::kCoefficient, ErrorCode::kDomainMismatch,
          "element is already in the evaluation domain");
  for (int j = 0; j <= level_; ++j) {
    params_->ntt(j).Forward(mutable_residue(j).data());
  }
  domain_ = Domain::kEvaluation;
}

void RingElement::ToCoefficientInPlace() {
  Require(domain_ == Domain::kEvaluation, ErrorCode::kDomainMismatch,
          "element is already in the coefficient domain");
  for (int j = 0; j <= level_; ++j) {
    params_->ntt(j).Inverse(mutable_residue(j).data());
  }
  domain_ = Domain::kCoefficient;
}

void RingElement::ToDomainInPlace(Domain domain) {
  if (domain_ == domain) return;
  if (domain == Domain::kEvaluation) {
    ToEvaluationInPlace();
  } else {
    ToCoefficientInPlace();
  }
}

void RingElement::AddInPlace(const RingElement& other) {
  CheckCompatible(*this, other);
  for (int j = 0; j <= level_; ++j) {
    const Modulus& q = params_->modulus(j);
    auto dst = mutable_residue(j);
    auto src = other.residue(j);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = q.Add(dst[k], src[k]);
  }
}

void RingElement::SubInPlace(const RingElement& other) {
  CheckCompatible(*this, other);
  for (int j = 0; j <= level_; ++j) {
    const Modulus& q = params_->modulus(j);
    auto dst = mutable_residue(j);
    auto src = other.residue(j);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = q.Sub(dst[k], src[k]);
  }
}

void RingElement::NegateInPlace() {
  for (int j = 0; j <= level_; ++j) {
    const Modulus& q = params_->modulus(j);
    for (auto& x : mutable_residue(j)) x = q.Neg(x);
  }
}

void RingElement::MulInPlace(const RingElement& other) {
  CheckCompatible(*this, other);
  Require(domain_ == Domain::kEvaluation, ErrorCode::kDomainMismatch,
          "pointwise product needs the evaluation domain");
  for (int j = 0; j <= level_; ++j) {
    const Modulus& q = params_->modulus(j);
    auto dst = mutable_residue(j);
    auto src = other.residue(j);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = q.Mul(dst[k], src[k]);
  }
}

void RingElement::MulScalarInPlace(std::int64_t scalar) {
  for (int j = 0; j <= level_; ++j) {
    const Modulus& q = params_->modulus(j);
    const std::uint64_t s = q.FromSigned(scalar);
    const std::uint64_t s_shoup = q.ShoupPrecompute(s);
    for (auto& x : mutable_residue(j)) x = q.MulShoup(x, s, s_shoup);
  }
}

void RingElement::DropToLevelInPlace(int level) {
  Require(level >= 0 && level <= level_, ErrorCode::kLevelMismatch,
          "cannot drop from level " + std::to_string(level_) + " to " +
              std::to_string(level));
  level_ = level;
  data_.resize(static_cast<std::size_t>(level + 1) * degree());
}

bool operator==(const RingElement& a, const RingElement& b) {
  if (!a.params_ || !b.params_) return a.params_ == b.params_;
  return (a.params_ == b.params_ || *a.params_ == *b.params_) &&
         a.level_ == b.level_ && a.domain_ == b.domain_ && a.data_ == b.data_;
}

RingElement NttForward(const RingElement& a) {
  RingElement out = a;
  out.ToEvaluationInPlace();
  return out;
}

RingElement NttInverse(const RingElement& a) {
  RingElement out = a;
  out.ToCoefficientInPlace();
  return out;
}

RingElement ToDomain(const RingElement& a, Domain domain) {
  RingElement out = a;
  out.ToDomainInPlace(domain);
  return out;
}

RingElement Add(const RingElement& a, const RingElement& b) {
  RingElement out = a;
  out.AddInPlace(b);
  return out;
}

RingElement Sub(const RingElement& a, const RingElement& b) {
  RingElement out = a;
  out.SubInPlace(b);
  return out;
}

RingElement Negate(const RingElement& a) {
  RingElement out = a;
  out.NegateInPlace();
  return out;
}

RingElement RingMul(const RingElement& a, const RingElement& b) {
  RingElement out = ToDomain(a, Domain::kEvaluation);
  out.MulInPlace(ToDomain(b, Domain::kEvaluation));
  return out;
}

RingElement SchoolbookMul(const RingElement& a, const RingElement& b) {
  CheckCompatible(a, b);
  Require(a.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
          "schoolbook product needs the coefficient domain");
  const std::size_t n = a.degree();
  RingElement out(a.params(), a.level(), Domain::kCoefficient);
  for (int j = 0; j <= a.level(); ++j) {
    const Modulus& q = a.params()->modulus(j);
    auto x = a.residue(j);
    auto y = b.residue(j);
    auto c = out.mutable_residue(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t term = q.Mul(x[i], y[k]);
        const std::size_t idx = i + k;
        if (idx < n) {
          c[idx] = q.Add(c[idx], term);
        } else {
          c[idx - n] = q.Sub(c[idx - n], term);  // X^N = -1
        }
      }
    }
  }
  return out;
}

RingElement MulScalar(const RingElement& a, std::int64_t scalar) {
  RingElement out = a;
  out.MulScalarInPlace(scalar);
  return out;
}

RingElement DropLevel(const RingElement& a, int new_level) {
  RingElement out = a;
  out.DropToLevelInPlace(new_level);
  return out;
}

RingElement SampleUniform(const RingParamsPtr& params, int level, Prng& prng,
                          Domain domain) {
  RingElement out(params, level, domain);
  for (int j = 0; j <= level; ++j) {
    const std::uint64_t q = params->modulus(j).value();
    for (auto& x : out.mutable_residue(j)) x = prng.UniformBelow(q);
  }
  return out;
}

RingElement SampleTernary(const RingParamsPtr& params, int level,
                          std::size_t hamming_weight, Prng& prng) {
  const std::size_t n = params->degree();
  Require(hamming_weight > 0 && hamming_weight <= n,
          ErrorCode::kInvalidArgument,
          "hamming weight must be in (0, N], got " +
              std::to_string(hamming_weight));
  // Partial Fisher-Yates picks the support.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  std::vector<std::int64_t> coeffs(n, 0);
  for (std::size_t i = 0; i < hamming_weight; ++i) {
    const std::size_t pick = i + prng.UniformBelow(n - i);
    std::swap(positions[i], positions[pick]);
    coeffs[positions[i]] = (prng.NextU64() & 1) ? 1 : -1;
  }
  return RingElement::FromSigned(params, level, coeffs);
}

RingElement SampleGaussian(const RingParamsPtr& params, int level,
                           double sigma, Prng& prng) {
  Require(sigma > 0 && std::isfinite(sigma), ErrorCode::kInvalidArgument,
          "gaussian sigma must be positive");
  const double bound = 6.0 * sigma;
  std::vector<std::int64_t> coeffs(params->degree());
  for (auto& c : coeffs) {
    double x;
    do {
      x = sigma * prng.NextNormal();
    } while (std::fabs(x) > bound);
    c = static_cast<std::int64_t>(std::nearbyint(x));
  }
  return RingElement::FromSigned(params, level, coeffs);
}

std::vector<std::int64_t> CenteredCoefficients(const RingElement& a) {
  Require(a.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
          "centred coefficients need the coefficient domain");
  const Modulus& q = a.params()->modulus(0);
  auto r = a.residue(0);
  std::vector<std::int64_t> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) out[k] = q.Centered(r[k]);
  return out;
}

std::vector<long double> LiftCoefficients(const RingElement& a) {
  Require(a.domain() == Domain::kCoefficient, ErrorCode::kDomainMismatch,
          "CRT lift needs the coefficient domain");
  const RingParams& params = *a.params();
  const std::size_t n = a.degree();
  const int level = a.level();
  std::vector<long double> out(n);
  std::vector<std::int64_t> digits(level + 1);
  for (std::size_t k = 0; k < n; ++k) {
    // Garner: x = d_0 + d_1 q_0 + d_2 q_0 q_1 + ... with centred digits.
    for (int i = 0; i <= level; ++i) {
      const Modulus& qi = params.modulus(i);
      std::uint64_t t = a.residue(i)[k];
      for (int j = 0; j < i; ++j) {
        t = qi.Mul(qi.Sub(t, qi.FromSigned(digits[j])),
                   params.GarnerInverse(i, j));
      }
      digits[i] = qi.Centered(t);
    }
    long double value = digits[level];
    for (int i = level - 1; i >= 0; --i) {
      value = value * static_cast<long double>(params.modulus(i).value()) +
              digits[i];
    }
    out[k] = value;
  }
  return out;
}

}  // namespace hnn
