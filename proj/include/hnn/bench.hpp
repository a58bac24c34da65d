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

#ifndef HNN_BENCH_HPP_
#define HNN_BENCH_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "hnn/params.hpp"

namespace hnn {

inline constexpr int kMinBenchIterations = 100;
inline constexpr int kBenchWarmup = 10;

enum class BenchKernel {
  kNtt,       // forward + inverse NTT of one top-level element
  kMult,      // Mult + Rescale of two fresh ciphertexts
  kPipeline,  // encode, encrypt, square, decrypt, decode
};

BenchKernel ParseBenchKernel(std::string_view name);

struct BenchReport {
  int iterations = 0;
  int warmup = 0;
  double median_seconds = 0;
  double p95_seconds = 0;
};

// Keys and inputs are prepared outside the timed region.
BenchReport RunBench(const SchemeParamsPtr& params, BenchKernel kernel,
                     int iterations = kMinBenchIterations,
                     int warmup = kBenchWarmup, std::uint64_t seed = 1);

// Nearest-rank percentile, q in (0, 1].
double Percentile(std::vector<double> samples, double q);

}  // namespace hnn

#endif  // HNN_BENCH_HPP_
