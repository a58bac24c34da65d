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

#include "hnn/params.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "hnn/error.hpp"

namespace hnn {
namespace {

struct SecurityRow {
  std::size_t degree;
  std::array<int, 3> max_bits;  // lambda = 128, 192, 256
};

constexpr std::array<SecurityRow, 6> kSecurityTable = {{
    {1024, {27, 19, 14}},
    {2048, {54, 37, 29}},
    {4096, {109, 75, 58}},
    {8192, {218, 152, 118}},
    {16384, {438, 305, 237}},
    {32768, {881, 611, 476}},
}};

int LambdaColumn(int lambda) {
  switch (lambda) {
    case 128: return 0;
    case 192: return 1;
    case 256: return 2;
    default:
      Fail(ErrorCode::kInvalidArgument,
           "security level must be 128, 192 or 256, got " +
               std::to_string(lambda));
  }
}

}  // namespace

std::optional<int> MaxModulusBits(int lambda, std::size_t degree) {
  const int column = LambdaColumn(lambda);
  for (const auto& row : kSecurityTable) {
    if (row.degree == degree) return row.max_bits[column];
  }
  return std::nullopt;
}

std::shared_ptr<const SchemeParams> SchemeParams::Create(
    const ParamsConfig& config) {
  auto params = std::shared_ptr<SchemeParams>(new SchemeParams());
  ParamsConfig& c = params->config_;
  c = config;
  LambdaColumn(c.lambda);
  params->ring_ = RingParams::Create(c.degree, c.moduli);
  const std::size_t n = c.degree;
  const double total_bits = params->ring_->Log2Modulus(params->ring_->max_level());

  if (!c.allow_insecure) {
    const auto max_bits = MaxModulusBits(c.lambda, n);
    Require(max_bits.has_value(), ErrorCode::kInsecureParams,
            "no security estimate for N = " + std::to_string(n) +
                "; set allow_insecure to use it anyway");
    Require(total_bits <= *max_bits, ErrorCode::kInsecureParams,
            "modulus of " + std::to_string(std::lround(std::ceil(total_bits))) +
                " bits exceeds the " + std::to_string(*max_bits) +
                "-bit limit for N = " + std::to_string(n) + " at lambda = " +
                std::to_string(c.lambda));
  }
  Require(c.delta_bits >= 10 && c.delta_bits <= 60, ErrorCode::kInvalidArgument,
          "delta_bits must lie in [10, 60]");
  if (c.slots == 0) c.slots = n / 2;
  Require(c.slots <= n / 2, ErrorCode::kInvalidArgument,
          "K exceeds the N/2 slot capacity");
  if (c.hamming_weight == 0) c.hamming_weight = n / 2;
  Require(c.hamming_weight <= n, ErrorCode::kInvalidArgument,
          "secret Hamming weight exceeds N");
  Require(std::isfinite(c.error_stddev) && c.error_stddev > 0,
          ErrorCode::kInvalidArgument, "error stddev must be positive");
  if (c.noise_budget_bits == 0) {
    c.noise_budget_bits = std::floor(total_bits) - c.delta_bits - 10;
  }
  Require(std::isfinite(c.noise_budget_bits) && c.noise_budget_bits > 0,
          ErrorCode::kInvalidArgument,
          "noise budget must be positive; the modulus chain is too short");

  const int top = params->ring_->max_level();
  params->level_scales_.resize(top + 1);
  long double scale = std::ldexp(1.0L, c.delta_bits);
  for (int level = top; level >= 0; --level) {
    params->level_scales_[level] = static_cast<double>(scale);
    if (level > 0) {
      scale = scale * scale /
              static_cast<long double>(params->ring_->modulus(level).value());
    }
  }
  params->encoder_ = std::make_unique<Encoder>(params->ring_);
  return params;
}

bool operator==(const SchemeParams& a, const SchemeParams& b) {
  const ParamsConfig& x = a.config_;
  const ParamsConfig& y = b.config_;
  return x.lambda == y.lambda && x.degree == y.degree && x.moduli == y.moduli &&
         x.delta_bits == y.delta_bits && x.slots == y.slots &&
         x.noise_budget_bits == y.noise_budget_bits &&
         x.hamming_weight == y.hamming_weight &&
         x.error_stddev == y.error_stddev &&
         x.allow_insecure == y.allow_insecure;
}

std::vector<std::uint64_t> ChooseModuli(std::size_t degree, int depth,
                                        int delta_bits) {
  const std::uint64_t two_n = 2 * degree;
  std::vector<std::uint64_t> moduli(depth + 1);
  moduli[0] = NttPrimesBelow(kFirstPrimeBits, two_n, 1).at(0);
  std::set<std::uint64_t> used = {moduli[0]};
  const long double target = std::ldexp(1.0L, delta_bits);
  long double scale = target;
  for (int level = depth; level >= 1; --level) {
    const std::uint64_t q = NearestNttPrime(scale * scale / target, two_n, used);
    moduli[level] = q;
    used.insert(q);
    scale = scale * scale / static_cast<long double>(q);
  }
  return moduli;
}

SchemeParamsPtr ParamGen(int lambda, std::size_t slots, int depth,
                         bool allow_insecure, int delta_bits) {
  LambdaColumn(lambda);
  Require(slots >= 1 && slots <= (std::size_t{1} << 15),
          ErrorCode::kInvalidArgument, "K must lie in [1, 2^15]");
  Require(depth >= 0 && depth <= 30, ErrorCode::kInvalidArgument,
          "depth must lie in [0, 30]");
  const int nominal_bits = kFirstPrimeBits + delta_bits * depth;
  std::size_t degree = std::max<std::size_t>(8, std::bit_ceil(2 * slots));
  if (!allow_insecure) {
    for (;; degree *= 2) {
      if (degree > kSecurityTable.back().degree) {
        Fail(ErrorCode::kNoSecureParams,
             "no secure parameters for K = " + std::to_string(slots) +
                 ", depth " + std::to_string(depth) + " at lambda = " +
                 std::to_string(lambda));
      }
      const auto max_bits = MaxModulusBits(lambda, degree);
      if (max_bits && nominal_bits <= *max_bits) break;
    }
  }
  ParamsConfig config;
  config.lambda = lambda;
  config.degree = degree;
  config.moduli = ChooseModuli(degree, depth, delta_bits);
  config.delta_bits = delta_bits;
  config.slots = slots;
  config.allow_insecure = allow_insecure;
  return SchemeParams::Create(config);
}

}  // namespace hnn
