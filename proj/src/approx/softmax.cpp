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
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hnn/approx.hpp"
#include "hnn/error.hpp"

namespace hnn {
namespace {

// Slack for HE noise on top of the polynomial error when bounding sums.
constexpr double kSumSlack = 1e-3;

struct LinearInit {
  double alpha;
  double beta;
  double error;  // max |1 - x z0| on [a, b]
};

// Minimax z0 = alpha - beta x for 1/x on [a, b] in relative error.
LinearInit MinimaxLinear(double a, double b) {
  const double denom = a * a + 6 * a * b + b * b;
  const double beta = 8 / denom;
  return {beta * (a + b), beta, (b - a) * (b - a) / denom};
}

// max of sum_i e^{y_i} over y in [-r, r]^n with sum y = 0. The function is
// convex so the maximum sits on a vertex: k coordinates at +r, the rest at
// -r except one free coordinate.
double MaxCentredExpSum(int n, double r) {
  double best = 0;
  for (int k = 0; k < n; ++k) {
    const double free = -(k - (n - k - 1)) * r;
    if (free < -r || free > r) continue;
    best = std::max(best, k * std::exp(r) + (n - k - 1) * std::exp(-r) +
                              std::exp(free));
  }
  return best;
}

}  // namespace

int ReciprocalDepth(int iterations, ReciprocalInit init) {
  Require(iterations >= 1, ErrorCode::kInvalidArgument,
          "need at least one Newton iteration");
  return init == ReciprocalInit::kConstant ? 2 * iterations - 1
                                           : 2 * iterations + 1;
}

double ReciprocalErrorBound(double a, double b, int iterations,
                            ReciprocalInit init) {
  Require(a > 0 && a < b, ErrorCode::kInvalidArgument,
          "reciprocal needs 0 < a < b");
  const double e0 =
      init == ReciprocalInit::kConstant ? 1 - a / b : MinimaxLinear(a, b).error;
  return std::pow(e0, std::exp2(iterations));
}

Ciphertext EncryptedReciprocal(const Ciphertext& ct, double a, double b,
                               int iterations, const RelinKey& evk,
                               ReciprocalInit init) {
  Require(std::isfinite(a) && std::isfinite(b) && a > 0 && a < b,
          ErrorCode::kInvalidArgument, "reciprocal needs 0 < a < b");
  const int depth = ReciprocalDepth(iterations, init);
  Require(ct.level() >= depth, ErrorCode::kLevelExhausted,
          "reciprocal needs " + std::to_string(depth) + " levels, have " +
              std::to_string(ct.level()));
  const Ciphertext x = AssumeMagnitude(ct, b);
  const CiphertextRef inputs[] = {std::cref(x)};
  const double z_bound = 2 / a;

  Ciphertext z = x;
  int remaining = iterations;
  double e_bound;  // max |1 - x z_j| for the exact iterate z_j
  if (init == ReciprocalInit::kConstant) {
    // z1 = z0 (2 - x z0) with z0 = 1/b, as one affine map.
    const double w[] = {-1 / (b * b)};
    z = LinearCombination(inputs, w, 2 / b, x.level() - 1);
    e_bound = (1 - a / b) * (1 - a / b);
    --remaining;
  } else {
    const LinearInit init_poly = MinimaxLinear(a, b);
    const double w[] = {-init_poly.beta};
    z = LinearCombination(inputs, w, init_poly.alpha, x.level() - 1);
    e_bound = init_poly.error;
  }
  z = AssumeMagnitude(z, z_bound);

  // Ledger for the iteration, tracked as the relative deviation
  // d = x |z~ - z| from the exact Newton iterate z. With e = 1 - x z and
  // kappa = |x~ - x| / x,
  //   d' <= 2 |e| d + d^2 + kappa (1 + |e| + d)^2 + (what the step adds).
  // Newton contracts its own error, which the generic ledger cannot see.
  const double delta = x.params()->delta();
  const double kappa = std::exp2(x.noise_bits()) / delta / a;
  double d = b * std::exp2(z.noise_bits()) / delta;
  Ciphertext x_clean = x;
  x_clean.set_noise_bits(-std::numeric_limits<double>::infinity());
  for (; remaining > 0; --remaining) {
    // Run the step on noise-free copies so the ledger only collects what the
    // step itself adds (relinearization, rounding).
    Ciphertext z_clean = z;
    z_clean.set_noise_bits(-std::numeric_limits<double>::infinity());
    auto [xs, zs] = AlignOperands(x_clean, z_clean);
    // y = x z stays in (0, 2) once z approximates 1/x from either side.
    Ciphertext y = AssumeMagnitude(Rescale(Mult(xs, zs, evk)), 2.0);
    Ciphertext w = AddConst(Negate(y), 2.0);
    auto [zw, ww] = AlignOperands(z_clean, w);
    z = AssumeMagnitude(Rescale(Mult(zw, ww, evk)), z_bound);
    const double added = b * std::exp2(z.noise_bits()) / delta;
    d = 2 * e_bound * d + d * d + kappa * (1 + e_bound + d) * (1 + e_bound + d) +
        added;
    z.set_noise_bits(std::log2(d / a * delta));
    e_bound *= e_bound;
  }
  return z;
}

void SoftmaxConfig::Validate() const {
  Require(std::isfinite(temperature) && temperature > 0,
          ErrorCode::kInvalidArgument, "temperature must be positive");
  Require(classes >= 2, ErrorCode::kInvalidArgument, "need at least 2 classes");
  Require(std::isfinite(radius) && radius > 0, ErrorCode::kInvalidArgument,
          "radius must be positive");
  Require(exp_degree >= 1, ErrorCode::kInvalidArgument,
          "exp degree must be >= 1");
  Require(inv_iterations >= 1, ErrorCode::kInvalidArgument,
          "need at least one Newton iteration");
}

ReciprocalBounds SoftmaxReciprocalBounds(const SoftmaxConfig& cfg,
                                         const PolyApprox& exp_approx) {
  const int n = cfg.classes;
  const double slack = exp_approx.sup_error() + kSumSlack;
  // Centred logits: the AM-GM inequality gives sum e^{y_i} >= n.
  const double lower = n * (1 - slack);
  const double upper = MaxCentredExpSum(n, cfg.radius) + n * slack;
  Require(lower > 0, ErrorCode::kInvalidArgument,
          "exp approximation too coarse for a positive sum bound");
  return {lower, upper};
}

int SoftmaxDepth(const SoftmaxConfig& cfg) {
  cfg.Validate();
  return 1 + PolyEvalDepth(cfg.exp_degree) +
         ReciprocalDepth(cfg.inv_iterations, ReciprocalInit::kLinear) + 1;
}

std::vector<Ciphertext> EncryptedSoftmax(const std::vector<Ciphertext>& logits,
                                         const SoftmaxConfig& cfg,
                                         const RelinKey& evk,
                                         const SecretKey* probe) {
  cfg.Validate();
  const int n = cfg.classes;
  Require(static_cast<int>(logits.size()) == n, ErrorCode::kInvalidArgument,
          "expected " + std::to_string(n) + " logit ciphertexts");
  const int level = logits[0].level();
  for (const Ciphertext& ct : logits) {
    Require(ct.level() == level, ErrorCode::kLevelMismatch,
            "logit ciphertexts must share a level");
  }
  Require(level >= SoftmaxDepth(cfg), ErrorCode::kLevelExhausted,
          "softmax needs " + std::to_string(SoftmaxDepth(cfg)) +
              " levels, have " + std::to_string(level));

  const PolyApprox exp_approx = PolyApprox::FitExp(cfg.radius, cfg.exp_degree);
  const ReciprocalBounds bounds = SoftmaxReciprocalBounds(cfg, exp_approx);
  const PolyApprox exp_t = exp_approx.Normalized();

  std::vector<CiphertextRef> refs(logits.begin(), logits.end());
  std::vector<Ciphertext> exps;
  exps.reserve(n);
  for (int i = 0; i < n; ++i) {
    // t_i = (x_i - mean(x)) / (T r), so the exponential sees [-1, 1].
    const double s = 1.0 / (cfg.temperature * cfg.radius);
    std::vector<double> w(n, -s / n);
    w[i] += s;
    const Ciphertext t =
        AssumeMagnitude(LinearCombination(refs, w, 0.0, level - 1), 1.0);
    if (probe != nullptr) {
      for (double v : DecryptSlots(*probe, t)) {
        Require(std::fabs(v) <= 1.0, ErrorCode::kInvalidArgument,
                "centred logit " + std::to_string(v * cfg.radius) +
                    " outside [-" + std::to_string(cfg.radius) + ", " +
                    std::to_string(cfg.radius) + "]");
      }
    }
    exps.push_back(AssumeMagnitude(EvalPolyEncrypted(t, exp_t, evk),
                                   exp_approx.max_abs()));
  }
  Ciphertext sum = exps[0];
  for (int i = 1; i < n; ++i) sum = Add(sum, exps[i]);
  sum = AssumeMagnitude(sum, bounds.upper);
  const Ciphertext inv =
      EncryptedReciprocal(sum, bounds.lower, bounds.upper, cfg.inv_iterations,
                          evk, ReciprocalInit::kLinear);

  std::vector<Ciphertext> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    auto [e, z] = AlignOperands(exps[i], inv);
    out.push_back(AssumeMagnitude(Rescale(Mult(e, z, evk)), 1.0 + kSumSlack));
  }
  return out;
}

Ciphertext EncryptedSoftArgmax(const std::vector<Ciphertext>& logits,
                               const SoftmaxConfig& cfg, const RelinKey& evk,
                               const SecretKey* probe) {
  const std::vector<Ciphertext> probs =
      EncryptedSoftmax(logits, cfg, evk, probe);
  Ciphertext acc = probs[0];
  for (int i = 1; i < cfg.classes; ++i) {
    acc = Add(acc, MultInteger(probs[i], i + 1));
  }
  return acc;
}

}  // namespace hnn
