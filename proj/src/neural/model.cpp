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
#include <numeric>
#include <string>

#include "hnn/error.hpp"
#include "hnn/neural.hpp"

namespace hnn {

void Dataset::Validate() const {
  Require(d_in > 0, ErrorCode::kInvalidArgument, "dataset has no features");
  Require(classes >= 2, ErrorCode::kInvalidArgument, "need at least 2 classes");
  Require(features.size() == labels.size() * d_in, ErrorCode::kInvalidArgument,
          "feature and label counts disagree");
  for (int y : labels) {
    Require(y >= 0 && y < classes, ErrorCode::kInvalidArgument,
            "label " + std::to_string(y) + " out of range");
  }
  for (double v : features) {
    Require(std::isfinite(v), ErrorCode::kInvalidArgument,
            "non-finite feature");
  }
}

Dataset MakeTwoBlobs(std::size_t samples, std::size_t d_in, double separation,
                     Prng& prng) {
  Require(samples > 0 && d_in > 0, ErrorCode::kInvalidArgument,
          "empty blob dataset");
  Dataset out;
  out.d_in = d_in;
  out.classes = 2;
  out.features.resize(samples * d_in);
  out.labels.resize(samples);
  // Mean offset per coordinate so the two means are `separation` apart.
  const double shift = separation / (2 * std::sqrt(static_cast<double>(d_in)));
  for (std::size_t i = 0; i < samples; ++i) {
    const int y = static_cast<int>(i % 2);
    out.labels[i] = y;
    for (std::size_t j = 0; j < d_in; ++j) {
      out.features[i * d_in + j] = (y == 1 ? shift : -shift) + prng.NextNormal();
    }
  }
  return out;
}

std::pair<Dataset, Dataset> SplitDataset(const Dataset& data, double fraction,
                                         Prng& prng) {
  Require(fraction >= 0 && fraction <= 1, ErrorCode::kInvalidArgument,
          "split fraction outside [0, 1]");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), prng);
  const auto first = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(data.size())));
  std::pair<Dataset, Dataset> out;
  for (auto* part : {&out.first, &out.second}) {
    part->d_in = data.d_in;
    part->classes = data.classes;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    Dataset& dst = k < first ? out.first : out.second;
    const auto row = data.row(order[k]);
    dst.features.insert(dst.features.end(), row.begin(), row.end());
    dst.labels.push_back(data.labels[order[k]]);
  }
  return out;
}

LinearModel LinearModel::Zeros(std::size_t d_in, int classes) {
  LinearModel m;
  m.d_in = d_in;
  m.classes = classes;
  m.weights.assign(d_in * classes, 0.0);
  m.bias.assign(classes, 0.0);
  m.Validate();
  return m;
}

std::vector<double> LinearModel::Logits(std::span<const double> x) const {
  Require(x.size() == d_in, ErrorCode::kInvalidArgument,
          "expected " + std::to_string(d_in) + " features, got " +
              std::to_string(x.size()));
  std::vector<double> out(bias);
  for (std::size_t j = 0; j < d_in; ++j) {
    for (int c = 0; c < classes; ++c) out[c] += w(j, c) * x[j];
  }
  return out;
}

void LinearModel::Validate() const {
  Require(classes >= 2, ErrorCode::kInvalidArgument, "need at least 2 classes");
  Require(d_in > 0, ErrorCode::kInvalidArgument, "model has no inputs");
  Require(weights.size() == d_in * classes && bias.size() ==
              static_cast<std::size_t>(classes),
          ErrorCode::kInvalidArgument, "model shape mismatch");
  for (double v : weights) {
    Require(std::isfinite(v), ErrorCode::kInvalidArgument, "non-finite weight");
  }
  for (double v : bias) {
    Require(std::isfinite(v), ErrorCode::kInvalidArgument, "non-finite bias");
  }
}

double SoftArgmaxHead::temperature() const { return std::exp(log_temperature); }

void SoftArgmaxHead::set_temperature(double t) {
  Require(std::isfinite(t) && t > 0, ErrorCode::kInvalidArgument,
          "temperature must be positive");
  log_temperature = std::log(t);
}

std::vector<double> Softmax(std::span<const double> logits, double t) {
  Require(t > 0, ErrorCode::kInvalidArgument, "temperature must be positive");
  Require(!logits.empty(), ErrorCode::kInvalidArgument, "empty logits");
  const double hi = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp((logits[i] - hi) / t);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

double SoftArgmax(std::span<const double> logits, double t) {
  const std::vector<double> s = Softmax(logits, t);
  double acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * (i + 1.0);
  return acc;
}

ForwardResult ForwardPlain(const LinearModel& model, const SoftArgmaxHead& head,
                           std::span<const double> x) {
  ForwardResult out;
  out.logits = model.Logits(x);
  out.probabilities = Softmax(out.logits, head.temperature());
  for (std::size_t i = 0; i < out.probabilities.size(); ++i) {
    out.soft_argmax += out.probabilities[i] * (i + 1.0);
  }
  return out;
}

int ClassFromSoftArgmax(double value, int classes) {
  const long k = std::lround(value) - 1;
  return static_cast<int>(std::clamp<long>(k, 0, classes - 1));
}

HeadGradient SoftArgmaxBackward(std::span<const double> logits, double t) {
  const std::vector<double> s = Softmax(logits, t);
  double sa = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sa += s[i] * (i + 1.0);
  HeadGradient g;
  g.logits.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    g.logits[j] = s[j] / t * ((j + 1.0) - sa);
    // x_j enters as x_j / T, so d/dT = -(x_j / T) * d/dx_j.
    g.temperature -= logits[j] / t * g.logits[j];
  }
  return g;
}

double CrossEntropy(std::span<const double> logits, double t, int label) {
  Require(label >= 0 && static_cast<std::size_t>(label) < logits.size(),
          ErrorCode::kInvalidArgument, "label out of range");
  const double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0;
  for (double v : logits) sum += std::exp((v - hi) / t);
  return std::log(sum) - (logits[label] - hi) / t;
}

HeadGradient CrossEntropyBackward(std::span<const double> logits, double t,
                                  int label) {
  Require(label >= 0 && static_cast<std::size_t>(label) < logits.size(),
          ErrorCode::kInvalidArgument, "label out of range");
  const std::vector<double> s = Softmax(logits, t);
  HeadGradient g;
  g.logits.resize(s.size());
  double mean_logit = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    g.logits[j] = (s[j] - (static_cast<int>(j) == label ? 1.0 : 0.0)) / t;
    mean_logit += s[j] * logits[j];
  }
  g.temperature = (logits[label] - mean_logit) / (t * t);
  return g;
}

}  // namespace hnn
