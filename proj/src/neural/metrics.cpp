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
#include <vector>

#include "hnn/error.hpp"
#include "hnn/neural.hpp"

namespace hnn {

double Auroc(std::span<const double> scores, std::span<const int> labels) {
  Require(scores.size() == labels.size(), ErrorCode::kInvalidArgument,
          "score and label counts disagree");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double rank = (i + 1 + j) / 2.0;  // average of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      Require(labels[order[k]] == 0 || labels[order[k]] == 1,
              ErrorCode::kInvalidArgument, "AUROC needs binary labels");
      if (labels[order[k]] == 1) {
        positive_rank_sum += rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = labels.size() - positives;
  Require(positives > 0 && negatives > 0, ErrorCode::kInvalidArgument,
          "AUROC undefined with a single class");
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1) / 2) /
         (p * static_cast<double>(negatives));
}

Metrics ComputeMetrics(std::span<const int> predicted,
                       std::span<const int> labels,
                       std::span<const double> scores, int classes) {
  Require(predicted.size() == labels.size(), ErrorCode::kInvalidArgument,
          "prediction and label counts disagree");
  Require(!labels.empty(), ErrorCode::kInvalidArgument, "no samples");
  Require(classes >= 2, ErrorCode::kInvalidArgument, "need at least 2 classes");
  Metrics m;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    correct += predicted[i] == labels[i];
  }
  m.accuracy = static_cast<double>(correct) / labels.size();

  auto per_class = [&](int c, double& precision, double& recall) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const bool p = predicted[i] == c, y = labels[i] == c;
      tp += p && y;
      fp += p && !y;
      fn += !p && y;
    }
    precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  };
  auto f1 = [](double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; };

  if (classes == 2) {
    per_class(1, m.precision, m.recall);
    m.f1 = f1(m.precision, m.recall);
  } else {
    for (int c = 0; c < classes; ++c) {
      double p, r;
      per_class(c, p, r);
      m.precision += p / classes;
      m.recall += r / classes;
      m.f1 += f1(p, r) / classes;
    }
  }
  m.auroc = scores.empty() ? std::nan("") : Auroc(scores, labels);
  return m;
}

}  // namespace hnn
