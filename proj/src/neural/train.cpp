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
#include <sstream>
#include <string>

#include "hnn/error.hpp"
#include "hnn/neural.hpp"

namespace hnn {
namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

struct AdamState {
  std::vector<double> m, v;
  long step = 0;
};

void ApplyUpdate(std::vector<double>& param, const std::vector<double>& grad,
                 const TrainConfig& cfg, AdamState& state, bool decay) {
  if (cfg.optimizer == Optimizer::kSgd) {
    for (std::size_t i = 0; i < param.size(); ++i) {
      param[i] -= cfg.learning_rate * grad[i];
      if (decay) param[i] -= cfg.learning_rate * cfg.weight_decay * param[i];
    }
    return;
  }
  if (state.m.empty()) {
    state.m.assign(param.size(), 0.0);
    state.v.assign(param.size(), 0.0);
  }
  ++state.step;
  const double c1 = 1 - std::pow(kAdamBeta1, static_cast<double>(state.step));
  const double c2 = 1 - std::pow(kAdamBeta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < param.size(); ++i) {
    state.m[i] = kAdamBeta1 * state.m[i] + (1 - kAdamBeta1) * grad[i];
    state.v[i] = kAdamBeta2 * state.v[i] + (1 - kAdamBeta2) * grad[i] * grad[i];
    const double step =
        (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + kAdamEpsilon);
    param[i] -= cfg.learning_rate * step;
    if (decay) param[i] -= cfg.learning_rate * cfg.weight_decay * param[i];
  }
}

}  // namespace

void TrainConfig::Validate() const {
  Require(learning_rate > 0 && std::isfinite(learning_rate),
          ErrorCode::kInvalidArgument, "learning rate must be positive");
  Require(batch_size > 0, ErrorCode::kInvalidArgument,
          "batch size must be positive");
  Require(epochs >= 0, ErrorCode::kInvalidArgument, "negative epoch count");
  Require(noise_std >= 0, ErrorCode::kInvalidArgument, "negative noise std");
  Require(range_penalty_weight >= 0, ErrorCode::kInvalidArgument,
          "negative range penalty");
  Require(radius > 0, ErrorCode::kInvalidArgument, "radius must be positive");
  Require(weight_decay >= 0, ErrorCode::kInvalidArgument,
          "negative weight decay");
}

std::string TrainConfig::Describe() const {
  std::ostringstream os;
  os << "lr=" << learning_rate << " batch=" << batch_size
     << " epochs=" << epochs << " noise_std=" << noise_std
     << " range_penalty=" << range_penalty_weight << " radius=" << radius
     << " weight_decay=" << weight_decay << " optimizer="
     << (optimizer == Optimizer::kSgd ? "sgd" : "adamw");
  return os.str();
}

TrainResult TrainNoiseInjection(const LinearModel& init,
                                const SoftArgmaxHead& head,
                                const Dataset& data, const TrainConfig& cfg,
                                Prng& prng) {
  cfg.Validate();
  init.Validate();
  data.Validate();
  Require(data.size() > 0, ErrorCode::kInvalidArgument, "empty dataset");
  Require(data.d_in == init.d_in && data.classes == init.classes,
          ErrorCode::kInvalidArgument, "dataset and model shapes differ");

  Prng order_stream = prng.Fork();
  Prng noise_stream = prng.Fork();
  const double t = head.temperature();
  const int n = init.classes;
  const std::size_t d = init.d_in;

  TrainResult out{init, {}};
  LinearModel& m = out.model;
  AdamState w_state, b_state;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> x(d), gw(m.weights.size()), gb(n);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), order_stream);
    double epoch_loss = 0;
    for (std::size_t start = 0; start < order.size();
         start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      std::fill(gw.begin(), gw.end(), 0.0);
      std::fill(gb.begin(), gb.end(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        const auto row = data.row(i);
        for (std::size_t j = 0; j < d; ++j) {
          x[j] = row[j];
          if (cfg.noise_std > 0) x[j] += cfg.noise_std * noise_stream.NextNormal();
        }
        const std::vector<double> logits = m.Logits(x);
        double loss = CrossEntropy(logits, t, data.labels[i]);
        HeadGradient g = CrossEntropyBackward(logits, t, data.labels[i]);
        for (int c = 0; c < n; ++c) {
          const double over = std::fabs(logits[c]) - cfg.radius;
          if (over > 0) {
            loss += cfg.range_penalty_weight * over * over;
            g.logits[c] += cfg.range_penalty_weight * 2 * over *
                           (logits[c] > 0 ? 1.0 : -1.0);
          }
        }
        epoch_loss += loss;
        for (std::size_t j = 0; j < d; ++j) {
          for (int c = 0; c < n; ++c) gw[j * n + c] += x[j] * g.logits[c];
        }
        for (int c = 0; c < n; ++c) gb[c] += g.logits[c];
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (double& v : gw) v *= inv;
      for (double& v : gb) v *= inv;
      ApplyUpdate(m.weights, gw, cfg, w_state, true);
      ApplyUpdate(m.bias, gb, cfg, b_state, false);
    }
    epoch_loss /= static_cast<double>(data.size());
    if (!std::isfinite(epoch_loss)) {
      Fail(ErrorCode::kNumerical, "training diverged at epoch " +
                                      std::to_string(epoch) + " (" +
                                      cfg.Describe() + ")");
    }
    out.loss_history.push_back(epoch_loss);
  }
  return out;
}

bool LossTrendDecreasing(std::span<const double> history, std::size_t window,
                         double tolerance) {
  Require(window > 0, ErrorCode::kInvalidArgument, "window must be positive");
  double prev = 0;
  bool have_prev = false;
  for (std::size_t start = 0; start + window <= history.size();
       start += window) {
    double mean = 0;
    for (std::size_t i = start; i < start + window; ++i) mean += history[i];
    mean /= static_cast<double>(window);
    if (have_prev && mean > prev + tolerance) return false;
    prev = mean;
    have_prev = true;
  }
  return true;
}

double MeanNll(std::span<const double> logits, std::span<const int> labels,
               int classes, double t) {
  Require(logits.size() == labels.size() * classes,
          ErrorCode::kInvalidArgument, "logit and label counts disagree");
  Require(!labels.empty(), ErrorCode::kInvalidArgument, "no samples");
  double acc = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    acc += CrossEntropy(logits.subspan(i * classes, classes), t, labels[i]);
  }
  return acc / static_cast<double>(labels.size());
}

namespace {

// d/du of the mean NLL at T = e^u.
double NllSlope(std::span<const double> logits, std::span<const int> labels,
                int classes, double t) {
  double acc = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    acc += CrossEntropyBackward(logits.subspan(i * classes, classes), t,
                                labels[i])
               .temperature;
  }
  return t * acc / static_cast<double>(labels.size());
}

}  // namespace

CalibrationResult CalibrateOnLogits(std::span<const double> logits,
                                    std::span<const int> labels, int classes,
                                    const CalibrationConfig& cfg) {
  Require(cfg.max_iterations > 0 && cfg.initial_step > 0,
          ErrorCode::kInvalidArgument, "bad calibration settings");
  CalibrationResult out;
  double u = 0;
  double step = cfg.initial_step;
  double f = MeanNll(logits, labels, classes, 1.0);
  Require(std::isfinite(f), ErrorCode::kNumerical, "non-finite NLL");
  out.nll_before = f;
  for (out.iterations = 0; out.iterations < cfg.max_iterations;
       ++out.iterations) {
    const double g = NllSlope(logits, labels, classes, std::exp(u));
    Require(std::isfinite(g), ErrorCode::kNumerical, "non-finite NLL slope");
    if (std::fabs(g) < 1e-10) break;
    const double f_prev = f;
    // Armijo backtracking; the accepted step seeds the next iteration.
    bool moved = false;
    while (step > 1e-12) {
      const double cand = u - step * g;
      const double fc = MeanNll(logits, labels, classes, std::exp(cand));
      if (std::isfinite(fc) && fc <= f - 1e-4 * step * g * g) {
        u = cand;
        f = fc;
        moved = true;
        step *= 2;
        break;
      }
      step /= 2;
    }
    if (!moved || f_prev - f < 1e-13 * std::fabs(f)) break;
  }
  double t = std::exp(u);
  if (cfg.min_temperature > 0 && t < cfg.min_temperature) {
    t = cfg.min_temperature;
    f = MeanNll(logits, labels, classes, t);
  }
  out.temperature = t;
  out.nll_after = f;
  return out;
}

CalibrationResult CalibrateTemperature(const LinearModel& model,
                                       SoftArgmaxHead& head,
                                       const Dataset& validation,
                                       const CalibrationConfig& cfg) {
  model.Validate();
  validation.Validate();
  Require(validation.d_in == model.d_in &&
              validation.classes == model.classes,
          ErrorCode::kInvalidArgument, "dataset and model shapes differ");
  std::vector<double> logits;
  logits.reserve(validation.size() * model.classes);
  for (std::size_t i = 0; i < validation.size(); ++i) {
    const std::vector<double> l = model.Logits(validation.row(i));
    logits.insert(logits.end(), l.begin(), l.end());
  }
  const CalibrationResult r =
      CalibrateOnLogits(logits, validation.labels, model.classes, cfg);
  head.set_temperature(r.temperature);
  return r;
}

}  // namespace hnn
