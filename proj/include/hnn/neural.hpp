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

#ifndef HNN_NEURAL_HPP_
#define HNN_NEURAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hnn/approx.hpp"
#include "hnn/evaluator.hpp"
#include "hnn/prng.hpp"

namespace hnn {

// Row-major samples with integer labels in [0, classes).
struct Dataset {
  std::size_t d_in = 0;
  int classes = 2;
  std::vector<double> features;  // size() * d_in
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * d_in, d_in};
  }
  void Validate() const;
};

// Two isotropic unit-variance Gaussian blobs whose means are `separation`
// apart along the all-ones direction. Labels alternate 0, 1, 0, ...
Dataset MakeTwoBlobs(std::size_t samples, std::size_t d_in, double separation,
                     Prng& prng);

// Shuffled split; the first part holds round(fraction * size) samples.
std::pair<Dataset, Dataset> SplitDataset(const Dataset& data, double fraction,
                                         Prng& prng);

// logits = W^T x + b, W stored d_in x n row-major.
struct LinearModel {
  std::size_t d_in = 0;
  int classes = 2;
  std::vector<double> weights;
  std::vector<double> bias;

  static LinearModel Zeros(std::size_t d_in, int classes);
  double w(std::size_t j, int c) const { return weights[j * classes + c]; }
  std::vector<double> Logits(std::span<const double> x) const;
  void Validate() const;
  bool operator==(const LinearModel&) const = default;
};

// Temperature kept as log T so it stays positive under gradient steps.
struct SoftArgmaxHead {
  double log_temperature = 0.0;
  double radius = 2.7;  // logit domain of the encrypted exponential

  double temperature() const;
  void set_temperature(double t);
};

std::vector<double> Softmax(std::span<const double> logits, double t);
// sum_i sigma_i(x / T) * i, i = 1..n.
double SoftArgmax(std::span<const double> logits, double t);

struct ForwardResult {
  std::vector<double> logits;
  std::vector<double> probabilities;
  double soft_argmax = 0;
};
ForwardResult ForwardPlain(const LinearModel& model, const SoftArgmaxHead& head,
                           std::span<const double> x);
// 0-based class from a soft-argmax value.
int ClassFromSoftArgmax(double value, int classes);

struct HeadGradient {
  std::vector<double> logits;
  double temperature = 0;
};
// Gradient of SoftArgmax(x / T).
HeadGradient SoftArgmaxBackward(std::span<const double> logits, double t);
// -log softmax(x / T)[label] and its gradient.
double CrossEntropy(std::span<const double> logits, double t, int label);
HeadGradient CrossEntropyBackward(std::span<const double> logits, double t,
                                  int label);

enum class Optimizer { kSgd, kAdamW };

struct TrainConfig {
  double learning_rate = 5e-4;
  std::size_t batch_size = 32;
  int epochs = 20;
  double noise_std = 0.0;
  double range_penalty_weight = 1.0;
  double radius = 2.7;
  double weight_decay = 0.0;
  Optimizer optimizer = Optimizer::kSgd;

  void Validate() const;
  std::string Describe() const;
};

struct TrainResult {
  LinearModel model;
  std::vector<double> loss_history;  // mean loss per epoch
};

// Cross-entropy on softmax(logits / T) plus range_penalty_weight *
// sum_c max(0, |logit_c| - r)^2, with fresh N(0, noise_std^2) noise added
// to every feature each epoch. Shuffling and noise draw from separate
// streams forked off `prng`, so noise_std = 0 reproduces plain training.
TrainResult TrainNoiseInjection(const LinearModel& init,
                                const SoftArgmaxHead& head,
                                const Dataset& data, const TrainConfig& cfg,
                                Prng& prng);

// True when the mean of each window of `window` epochs does not exceed the
// previous window's mean by more than `tolerance`.
bool LossTrendDecreasing(std::span<const double> history, std::size_t window,
                         double tolerance = 0.0);

struct CalibrationConfig {
  int max_iterations = 500;
  double initial_step = 0.5;
  double min_temperature = 0.0;  // 0 disables the floor
};

struct CalibrationResult {
  double temperature = 1;
  double nll_before = 0;
  double nll_after = 0;
  int iterations = 0;
};

// Mean NLL of softmax(logits / T) over rows of `logits` (n per row).
double MeanNll(std::span<const double> logits, std::span<const int> labels,
               int classes, double t);
// Gradient descent with backtracking on log T; logits stay fixed.
CalibrationResult CalibrateOnLogits(std::span<const double> logits,
                                    std::span<const int> labels, int classes,
                                    const CalibrationConfig& cfg = {});
// The model is only read; W and b are untouched.
CalibrationResult CalibrateTemperature(const LinearModel& model,
                                       SoftArgmaxHead& head,
                                       const Dataset& validation,
                                       const CalibrationConfig& cfg = {});

struct Metrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double auroc = 0;
};

// Positive class 1 for two classes, macro averages otherwise. AUROC uses
// `scores` (higher means class 1) and needs both binary labels present.
Metrics ComputeMetrics(std::span<const int> predicted,
                       std::span<const int> labels,
                       std::span<const double> scores, int classes = 2);
// Mann-Whitney rank statistic with tied ranks averaged.
double Auroc(std::span<const double> scores, std::span<const int> labels);

// Empirical std of slot errors over `trials` encrypt/decrypt round trips of
// random vectors in [-1, 1].
double MeasureNoiseStd(const SchemeParamsPtr& params, const KeyMaterial& keys,
                       Prng& prng, int trials = 100);

// Ciphertext j holds feature j of every sample (sample i in slot i).
std::vector<Ciphertext> EncryptColumns(const PublicKey& pk,
                                       const Dataset& data, Prng& prng);

// One logit ciphertext per class, one level below the features.
std::vector<Ciphertext> EncryptedLogits(const LinearModel& model,
                                        std::span<const Ciphertext> features);

SoftmaxConfig HeadSoftmaxConfig(const SoftArgmaxHead& head, int classes);
// Smallest temperature keeping every centred logit of `data` inside the
// encrypted exponential's domain: max |x_c - mean(x)| / radius.
double DomainTemperatureFloor(const LinearModel& model, const Dataset& data,
                              double radius);
// Linear layer plus the soft-argmax head.
int ForwardDepth(const SoftmaxConfig& cfg);
inline constexpr int kDefaultForwardDepth = kDefaultHeadDepth + 1;

Ciphertext ForwardEncrypted(const LinearModel& model,
                            const SoftArgmaxHead& head,
                            std::span<const Ciphertext> features,
                            const RelinKey& evk);

}  // namespace hnn

#endif  // HNN_NEURAL_HPP_
