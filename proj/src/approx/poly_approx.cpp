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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hnn/approx.hpp"
#include "hnn/error.hpp"

namespace hnn {
namespace {

// Power-basis coefficients (in t) of sum_j c_j T_j(t).
std::vector<long double> ChebyshevToPower(const std::vector<long double>& c) {
  const std::size_t n = c.size();
  std::vector<long double> out(n, 0), prev(n, 0), cur(n, 0), next(n, 0);
  prev[0] = 1;  // T_0
  out[0] += c[0];
  if (n == 1) return out;
  cur[1] = 1;  // T_1
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out[i] += c[j] * cur[i];
    if (j + 1 == n) break;
    // T_{j+1} = 2 t T_j - T_{j-1}
    std::fill(next.begin(), next.end(), 0.0L);
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < n; ++i) next[i] -= prev[i];
    prev.swap(cur);
    cur.swap(next);
  }
  return out;
}

}  // namespace

PolyApprox::PolyApprox(std::vector<double> coefficients, double radius)
    : coefficients_(std::move(coefficients)), radius_(radius) {
  for (int i = 0; i < kSupGridPoints; ++i) {
    const double y = -radius_ + 2 * radius_ * i / (kSupGridPoints - 1);
    max_abs_ = std::max(max_abs_, std::fabs(Evaluate(y)));
  }
}

PolyApprox PolyApprox::Fit(const std::function<double(double)>& f,
                           double radius, int degree) {
  Require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be >= 1");
  Require(std::isfinite(radius) && radius > 0, ErrorCode::kInvalidArgument,
          "radius must be positive");
  const int n = degree + 1;
  std::vector<long double> values(n);
  for (int k = 0; k < n; ++k) {
    const long double t =
        std::cos(std::numbers::pi_v<long double> * (k + 0.5L) / n);
    values[k] = f(static_cast<double>(t * radius));
  }
  std::vector<long double> cheb(n);
  for (int j = 0; j < n; ++j) {
    long double acc = 0;
    for (int k = 0; k < n; ++k) {
      acc += values[k] *
             std::cos(std::numbers::pi_v<long double> * j * (k + 0.5L) / n);
    }
    cheb[j] = acc * 2 / n;
  }
  cheb[0] /= 2;
  const std::vector<long double> in_t = ChebyshevToPower(cheb);
  // p(y) = sum a_i (y / r)^i
  std::vector<double> coeffs(n);
  long double r_pow = 1;
  for (int i = 0; i < n; ++i) {
    coeffs[i] = static_cast<double>(in_t[i] / r_pow);
    r_pow *= radius;
  }
  PolyApprox out(std::move(coeffs), radius);
  out.sup_error_ = out.MeasureSupError(f);
  Require(std::isfinite(out.sup_error_), ErrorCode::kNumerical,
          "non-finite approximation error");
  return out;
}

PolyApprox PolyApprox::FitExp(double radius, int degree) {
  Require(radius <= kMaxExpRadius, ErrorCode::kInvalidArgument,
          "exp domain radius above 8");
  PolyApprox out = Fit([](double y) { return std::exp(y); }, radius, degree);
  if (out.sup_error_ > kMaxExpSupError) {
    Fail(ErrorCode::kInvalidArgument,
         "exp approximation error " + std::to_string(out.sup_error_) +
             " on [-" + std::to_string(radius) + ", " +
             std::to_string(radius) + "] at degree " + std::to_string(degree) +
             " exceeds 1e-3; raise the degree or shrink the radius");
  }
  return out;
}

PolyApprox PolyApprox::FromCoefficients(std::vector<double> coefficients,
                                        double radius) {
  Require(coefficients.size() >= 2, ErrorCode::kInvalidArgument,
          "degree must be >= 1");
  Require(std::isfinite(radius) && radius > 0, ErrorCode::kInvalidArgument,
          "radius must be positive");
  for (double c : coefficients) {
    Require(std::isfinite(c), ErrorCode::kInvalidArgument,
            "non-finite coefficient");
  }
  return PolyApprox(std::move(coefficients), radius);
}

PolyApprox PolyApprox::Normalized() const {
  std::vector<double> coeffs(coefficients_.size());
  long double r_pow = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = static_cast<double>(coefficients_[i] * r_pow);
    r_pow *= radius_;
  }
  PolyApprox out(std::move(coeffs), 1.0);
  out.sup_error_ = sup_error_;
  return out;
}

double PolyApprox::Evaluate(double y) const {
  long double acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * y + *it;
  }
  return static_cast<double>(acc);
}

double PolyApprox::MeasureSupError(
    const std::function<double(double)>& f) const {
  double worst = 0;
  for (int i = 0; i < kSupGridPoints; ++i) {
    const double y = -radius_ + 2 * radius_ * i / (kSupGridPoints - 1);
    worst = std::max(worst, std::fabs(Evaluate(y) - f(y)));
  }
  return worst;
}

int PolyEvalDepth(int degree) {
  Require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be >= 1");
  return std::bit_width(static_cast<unsigned>(degree - 1)) + 1;
}

Ciphertext EvalPolyEncrypted(const Ciphertext& ct, const PolyApprox& approx,
                             const RelinKey& evk) {
  const SchemeParams& params = *ct.params();
  const int degree = approx.degree();
  const int top = ct.level();
  const int target = top - PolyEvalDepth(degree);
  Require(target >= 0, ErrorCode::kLevelExhausted,
          "not enough levels for polynomial of degree " +
              std::to_string(degree));
  const double canonical = params.LevelScale(top);
  Require(std::fabs(ct.scale() - canonical) <= kScaleTolerance * canonical,
          ErrorCode::kScaleMismatch,
          "polynomial input must carry its level's canonical scale");

  // powers[k] = x^k, built as x^a * x^(k-a) with a the largest power of two
  // below k. Level of x^k is top - ceil(log2 k).
  std::vector<Ciphertext> powers;
  powers.reserve(degree + 1);
  powers.push_back(ct);  // unused slot for k = 0
  powers.push_back(AssumeMagnitude(ct, approx.radius()));
  for (int k = 2; k <= degree; ++k) {
    const int a = std::bit_floor(static_cast<unsigned>(k - 1));
    auto [lhs, rhs] = AlignOperands(powers[a], powers[k - a]);
    Ciphertext prod = Rescale(Mult(lhs, rhs, evk));
    powers.push_back(
        AssumeMagnitude(prod, std::pow(approx.radius(), static_cast<double>(k))));
  }

  // Terms share level and scale, so their errors add; the generic add rule
  // (max + 1 bit per add) would charge a bit per term.
  const std::vector<double>& c = approx.coefficients();
  Ciphertext acc = MultConstToLevel(powers[1], c[1], target);
  double noise = std::exp2(acc.noise_bits());
  for (int k = 2; k <= degree; ++k) {
    if (c[k] == 0) continue;
    const Ciphertext term = MultConstToLevel(powers[k], c[k], target);
    noise += std::exp2(term.noise_bits());
    acc = Add(acc, term);
  }
  if (c[0] != 0) {
    acc.set_noise_bits(-std::numeric_limits<double>::infinity());
    acc = AddConst(acc, c[0]);
    noise += std::exp2(acc.noise_bits());
  }
  acc.set_noise_bits(std::log2(noise));
  return acc;
}

}  // namespace hnn
