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

#ifndef HNN_APPROX_HPP_
#define HNN_APPROX_HPP_

#include <functional>
#include <vector>

#include "hnn/evaluator.hpp"

namespace hnn {

inline constexpr int kSupGridPoints = 20001;
inline constexpr double kMaxExpSupError = 1e-3;
inline constexpr double kMaxExpRadius = 8.0;

// Power-basis polynomial on [-r, r] with its measured sup error against the
// function it approximates.
class PolyApprox {
 public:
  // Chebyshev interpolation of f at degree + 1 nodes.
  static PolyApprox Fit(const std::function<double(double)>& f, double radius,
                        int degree);
  // e^y on [-r, r]; rejects fits with sup error above 1e-3.
  static PolyApprox FitExp(double radius, int degree);
  // An exact polynomial; sup error is zero by definition.
  static PolyApprox FromCoefficients(std::vector<double> coefficients,
                                     double radius);

  const std::vector<double>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  double radius() const { return radius_; }
  double sup_error() const { return sup_error_; }
  // Largest |p(y)| on the domain.
  double max_abs() const { return max_abs_; }

  // The same polynomial in t = y / r, on [-1, 1]. Keeps every power of the
  // encrypted input bounded by 1, so the coefficient products lose no
  // precision to large intermediate magnitudes.
  PolyApprox Normalized() const;

  double Evaluate(double y) const;
  // Dense-grid max |p - f| over kSupGridPoints points.
  double MeasureSupError(const std::function<double(double)>& f) const;

 private:
  PolyApprox(std::vector<double> coefficients, double radius);

  std::vector<double> coefficients_;
  double radius_ = 0;
  double sup_error_ = 0;
  double max_abs_ = 0;
};

// Levels consumed by EvalPolyEncrypted: ceil(log2 d) + 1.
int PolyEvalDepth(int degree);

// Slots of ct must lie in [-r, r]. Powers come from a binary tree, so x^k
// costs ceil(log2 k) levels; the coefficient products add one more.
Ciphertext EvalPolyEncrypted(const Ciphertext& ct, const PolyApprox& approx,
                             const RelinKey& evk);

enum class ReciprocalInit {
  kConstant,  // z0 = 1/b
  kLinear,    // z0 = alpha - beta x, minimax on [a, b]
};

int ReciprocalDepth(int iterations, ReciprocalInit init);

// Worst relative error of k Newton steps on [a, b], ignoring HE noise.
double ReciprocalErrorBound(double a, double b, int iterations,
                            ReciprocalInit init);

// Newton iteration z <- z (2 - x z) for slots in [a, b], 0 < a < b.
Ciphertext EncryptedReciprocal(const Ciphertext& ct, double a, double b,
                               int iterations, const RelinKey& evk,
                               ReciprocalInit init = ReciprocalInit::kConstant);

struct SoftmaxConfig {
  double temperature = 1.0;
  int classes = 2;
  double radius = 2.7;
  int exp_degree = 7;
  int inv_iterations = 5;

  void Validate() const;
};

// Bounds handed to the reciprocal: centred exponentials sum to at least n,
// and each is at most e^r.
struct ReciprocalBounds {
  double lower;
  double upper;
};
ReciprocalBounds SoftmaxReciprocalBounds(const SoftmaxConfig& cfg,
                                         const PolyApprox& exp_approx);

// Levels consumed by EncryptedSoftmax (and EncryptedSoftArgmax).
int SoftmaxDepth(const SoftmaxConfig& cfg);
// Depth of the default head (d = 7, k = 5).
inline constexpr int kDefaultHeadDepth = 17;

// One ciphertext per class in, one probability ciphertext per class out.
// Logits are mean-centred and divided by T before the exponential. With a
// probe key the centred logits are decrypted and checked against [-r, r]
// (test mode); a violation raises kInvalidArgument.
std::vector<Ciphertext> EncryptedSoftmax(const std::vector<Ciphertext>& logits,
                                         const SoftmaxConfig& cfg,
                                         const RelinKey& evk,
                                         const SecretKey* probe = nullptr);

// sum_i i * softmax_i with i = 1..n.
Ciphertext EncryptedSoftArgmax(const std::vector<Ciphertext>& logits,
                               const SoftmaxConfig& cfg, const RelinKey& evk,
                               const SecretKey* probe = nullptr);

}  // namespace hnn

#endif  // HNN_APPROX_HPP_
