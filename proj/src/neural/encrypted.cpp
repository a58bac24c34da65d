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
#include <string>
#include <vector>

#include "hnn/error.hpp"
#include "hnn/neural.hpp"

namespace hnn {

double MeasureNoiseStd(const SchemeParamsPtr& params, const KeyMaterial& keys,
                       Prng& prng, int trials) {
  Require(trials > 0, ErrorCode::kInvalidArgument, "need at least one trial");
  const Encoder& enc = params->encoder();
  const std::size_t slots = enc.slot_count();
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;
  std::vector<double> v(slots);
  for (int t = 0; t < trials; ++t) {
    for (double& x : v) x = 2 * prng.NextUnit() - 1;
    const Ciphertext ct = Encrypt(
        keys.pk, enc.Encode(v, params->delta(), params->max_level()), prng);
    const std::vector<double> got = DecryptSlots(keys.sk, ct);
    for (std::size_t j = 0; j < slots; ++j) {
      const double e = got[j] - v[j];
      sum += e;
      sum_sq += e * e;
      ++count;
    }
  }
  const double mean = sum / count;
  return std::sqrt(std::max(0.0, sum_sq / count - mean * mean));
}

std::vector<Ciphertext> EncryptColumns(const PublicKey& pk,
                                       const Dataset& data, Prng& prng) {
  const SchemeParams& p = *pk.params;
  Require(data.size() <= p.encoder().slot_count(), ErrorCode::kInvalidArgument,
          std::to_string(data.size()) + " samples exceed " +
              std::to_string(p.encoder().slot_count()) + " slots");
  std::vector<Ciphertext> out;
  out.reserve(data.d_in);
  std::vector<double> column(data.size());
  for (std::size_t j = 0; j < data.d_in; ++j) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      column[i] = data.features[i * data.d_in + j];
    }
    out.push_back(Encrypt(
        pk, p.encoder().Encode(column, p.delta(), p.max_level()), prng));
  }
  return out;
}

std::vector<Ciphertext> EncryptedLogits(const LinearModel& model,
                                        std::span<const Ciphertext> features) {
  model.Validate();
  Require(features.size() == model.d_in, ErrorCode::kInvalidArgument,
          "expected " + std::to_string(model.d_in) + " feature ciphertexts");
  const int level = features[0].level();
  for (const Ciphertext& ct : features) {
    Require(ct.level() == level, ErrorCode::kLevelMismatch,
            "feature ciphertexts must share a level");
  }
  Require(level >= 1, ErrorCode::kLevelExhausted,
          "no level left for the linear layer");
  std::vector<CiphertextRef> refs(features.begin(), features.end());
  std::vector<Ciphertext> out;
  std::vector<double> column(model.d_in);
  for (int c = 0; c < model.classes; ++c) {
    for (std::size_t j = 0; j < model.d_in; ++j) column[j] = model.w(j, c);
    out.push_back(LinearCombination(refs, column, model.bias[c], level - 1));
  }
  return out;
}

SoftmaxConfig HeadSoftmaxConfig(const SoftArgmaxHead& head, int classes) {
  SoftmaxConfig cfg;
  cfg.temperature = head.temperature();
  cfg.classes = classes;
  cfg.radius = head.radius;
  return cfg;
}

double DomainTemperatureFloor(const LinearModel& model, const Dataset& data,
                              double radius) {
  Require(radius > 0, ErrorCode::kInvalidArgument, "radius must be positive");
  Require(data.d_in == model.d_in, ErrorCode::kInvalidArgument,
          "dataset and model disagree on the input width");
  double worst = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::vector<double> x = model.Logits(data.row(i));
    double mean = 0;
    for (double v : x) mean += v;
    mean /= x.size();
    for (double v : x) worst = std::max(worst, std::abs(v - mean));
  }
  return worst / radius;
}

int ForwardDepth(const SoftmaxConfig& cfg) { return 1 + SoftmaxDepth(cfg); }

Ciphertext ForwardEncrypted(const LinearModel& model,
                            const SoftArgmaxHead& head,
                            std::span<const Ciphertext> features,
                            const RelinKey& evk) {
  const SoftmaxConfig cfg = HeadSoftmaxConfig(head, model.classes);
  return EncryptedSoftArgmax(EncryptedLogits(model, features), cfg, evk);
}

}  // namespace hnn
