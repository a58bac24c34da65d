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

#include "hnn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hnn/error.hpp"
#include "hnn/evaluator.hpp"
#include "hnn/keys.hpp"

namespace hnn {

BenchKernel ParseBenchKernel(std::string_view name) {
  if (name == "ntt") return BenchKernel::kNtt;
  if (name == "mult") return BenchKernel::kMult;
  if (name == "pipeline") return BenchKernel::kPipeline;
  Fail(ErrorCode::kInvalidArgument,
       "unknown kernel '" + std::string(name) + "' (ntt, mult, pipeline)");
}

double Percentile(std::vector<double> samples, double q) {
  Require(!samples.empty() && q > 0 && q <= 1, ErrorCode::kInvalidArgument,
          "percentile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * samples.size()));
  return samples[std::max<std::size_t>(rank, 1) - 1];
}

BenchReport RunBench(const SchemeParamsPtr& params, BenchKernel kernel,
                     int iterations, int warmup, std::uint64_t seed) {
  Require(iterations >= kMinBenchIterations, ErrorCode::kInvalidArgument,
          "bench needs at least " + std::to_string(kMinBenchIterations) +
              " iterations, got " + std::to_string(iterations));
  Require(warmup >= 0, ErrorCode::kInvalidArgument, "negative warmup");
  Prng prng(seed);
  const Encoder& enc = params->encoder();
  std::vector<double> v(enc.slot_count());
  for (double& x : v) x = 2 * prng.NextUnit() - 1;

  std::function<void()> body;
  KeyMaterial keys;
  Ciphertext x, y;
  RingElement element;
  if (kernel == BenchKernel::kNtt) {
    element = enc.Encode(v, params->delta(), params->max_level()).poly();
    element.ToDomainInPlace(Domain::kEvaluation);
    body = [&] {
      element.ToCoefficientInPlace();
      element.ToEvaluationInPlace();
    };
  } else {
    keys = KeyGen(params, prng);
    const int top = params->max_level();
    Require(top >= 1, ErrorCode::kLevelExhausted,
            "bench kernel needs at least one rescale level");
    x = Encrypt(keys.pk, enc.Encode(v, params->delta(), top), prng);
    y = Encrypt(keys.pk, enc.Encode(v, params->delta(), top), prng);
    if (kernel == BenchKernel::kMult) {
      body = [&] { Rescale(Mult(x, y, keys.evk)); };
    } else {
      body = [&] {
        const Ciphertext c =
            Encrypt(keys.pk, enc.Encode(v, params->delta(), top), prng);
        const std::vector<double> out =
            DecryptSlots(keys.sk, Rescale(Mult(c, c, keys.evk)));
        Require(std::isfinite(out[0]), ErrorCode::kNumerical, "bad decode");
      };
    }
  }

  for (int i = 0; i < warmup; ++i) body();
  std::vector<double> times;
  times.reserve(iterations);
  for (int i = 0; i < iterations; ++i) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - start;
    times.push_back(dt.count());
  }
  BenchReport r;
  r.iterations = iterations;
  r.warmup = warmup;
  r.median_seconds = Percentile(times, 0.5);
  r.p95_seconds = Percentile(times, 0.95);
  return r;
}

}  // namespace hnn
