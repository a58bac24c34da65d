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

#include "hnn/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hnn/error.hpp"

namespace hnn {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double Bits(double bound) { return bound > 0 ? std::log2(bound) : kNegInf; }

// The ledger stores log2(slot error * Delta); operations work on the raw
// error at the ciphertext's own scale.
double RawNoise(const Ciphertext& ct) {
  return std::exp2(ct.noise_bits()) * ct.scale() / ct.params()->delta();
}
double LedgerBits(const SchemeParams& params, double raw, double scale) {
  return Bits(raw * params.delta() / scale);
}

// Bound on |slot| for a sum of independent centred coefficients with the
// given total variance per coefficient (complex Gaussian tail).
double SlotBound(const SchemeParams& params, double coefficient_variance) {
  return kNoiseTail *
         std::sqrt(static_cast<double>(params.degree()) * coefficient_variance);
}

// max_j |slot_j(y)|^2 <= kEmbeddingTail^2 * sum_k y_k^2 for a random
// ternary or Gaussian y; products e * y are Gaussian given y.
double SmallSquareNorm(double sum_of_squares) {
  return kEmbeddingTail * kEmbeddingTail * sum_of_squares;
}

double ErrorVariance(const SchemeParams& params) {
  return params.error_stddev() * params.error_stddev() + 1.0 / 12;
}

double EncodingRoundingBound(const SchemeParams& params) {
  return SlotBound(params, 1.0 / 12);
}

double RescaleRoundingBound(const SchemeParams& params) {
  const double h = static_cast<double>(params.hamming_weight());
  return SlotBound(params, (1.0 + SmallSquareNorm(h)) / 12);
}

double RelinBound(const SchemeParams& params, std::size_t components) {
  const double digit_variance = std::ldexp(1.0, 2 * kGadgetBits) / 12;
  const double n = static_cast<double>(params.degree());
  return SlotBound(params, static_cast<double>(components) * digit_variance *
                               SmallSquareNorm(n * ErrorVariance(params)));
}

void EnforceBudget(const Ciphertext& ct) {
  const SchemeParams& params = *ct.params();
  if (ct.noise_bits() > params.noise_budget_bits()) {
    Fail(ErrorCode::kBudgetExceeded,
         "noise estimate of " + std::to_string(ct.noise_bits()) +
             " bits exceeds the budget of " +
             std::to_string(params.noise_budget_bits()) + " bits");
  }
  const double needed =
      std::log2(ct.magnitude() * ct.scale() + 2 * RawNoise(ct)) + 2;
  const double available = params.ring()->Log2Modulus(ct.level());
  if (!(needed <= available)) {
    Fail(ErrorCode::kBudgetExceeded,
         "scaled message needs " + std::to_string(needed) +
             " bits but level " + std::to_string(ct.level()) + " holds " +
             std::to_string(available));
  }
}

Ciphertext Checked(Ciphertext ct) {
  EnforceBudget(ct);
  return ct;
}

void CheckSameParams(const SchemeParamsPtr& a, const SchemeParamsPtr& b) {
  Require(a != nullptr && b != nullptr, ErrorCode::kInvalidArgument,
          "ciphertext without params");
  Require(a == b || *a == *b, ErrorCode::kParamsMismatch,
          "operands belong to different parameter sets");
}

void CheckLevels(int a, int b) {
  Require(a == b, ErrorCode::kLevelMismatch,
          "level mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void CheckScales(double a, double b) {
  Require(std::fabs(a - b) <= kScaleTolerance * std::max(a, b),
          ErrorCode::kScaleMismatch,
          "scale mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void CheckOperands(const Ciphertext& a, const Ciphertext& b) {
  CheckSameParams(a.params(), b.params());
  CheckLevels(a.level(), b.level());
}

void CheckPlaintext(const Ciphertext& a, const Plaintext& pt) {
  Require(pt.poly().params() != nullptr &&
              *pt.poly().params() == *a.params()->ring(),
          ErrorCode::kParamsMismatch, "plaintext uses different ring params");
  CheckLevels(a.level(), pt.level());
}

// Reduces a (possibly huge) integer-valued long double modulo q.
std::uint64_t ReduceLong(long double value, const Modulus& q) {
  const auto qv = static_cast<long double>(q.value());
  long double r = std::fmod(value, qv);
  if (r < 0) r += qv;
  return static_cast<std::uint64_t>(r);
}

// Adds the constant polynomial `value` to an evaluation-domain element.
void AddConstantInPlace(RingElement& e, long double value) {
  const RingParams& ring = *e.params();
  for (int i = 0; i <= e.level(); ++i) {
    const Modulus& q = ring.modulus(i);
    const std::uint64_t r = ReduceLong(value, q);
    for (auto& x : e.mutable_residue(i)) x = q.Add(x, r);
  }
}

std::size_t RelinComponents(const SchemeParams& params, int level) {
  std::size_t count = 0;
  for (int j = 0; j <= level; ++j) count += GadgetDigits(params, j);
  return count;
}

}  // namespace

Ciphertext::Ciphertext(SchemeParamsPtr params, std::vector<RingElement> parts,
                       double scale, double noise_bits, double magnitude)
    : params_(std::move(params)),
      parts_(std::move(parts)),
      scale_(scale),
      noise_bits_(noise_bits),
      magnitude_(magnitude) {}

double FreshNoiseBits(const SchemeParams& params) {
  // e0 + e * u + e1 * s with u and s of weight h.
  const double h = static_cast<double>(params.hamming_weight());
  const double variance =
      ErrorVariance(params) * (2 * SmallSquareNorm(h) + 1) + 1.0 / 12;
  return Bits(SlotBound(params, variance));
}

Ciphertext Encrypt(const PublicKey& pk, const Plaintext& pt, Prng& prng) {
  const SchemeParamsPtr& params = pk.params;
  Require(params != nullptr, ErrorCode::kInvalidArgument, "public key without params");
  const RingParamsPtr& ring = params->ring();
  Require(pt.poly().params() != nullptr && *pt.poly().params() == *ring,
          ErrorCode::kParamsMismatch, "plaintext uses different ring params");
  const int top = params->max_level();
  Require(pt.level() == top, ErrorCode::kLevelMismatch,
          "plaintexts must be encoded at the top level to be encrypted");
  const double sigma = params->error_stddev();

  RingElement u = NttForward(SampleTernary(ring, top, params->hamming_weight(), prng));
  RingElement c0 = pk.b;
  c0.MulInPlace(u);
  c0.AddInPlace(NttForward(SampleGaussian(ring, top, sigma, prng)));
  c0.AddInPlace(ToDomain(pt.poly(), Domain::kEvaluation));
  RingElement c1 = pk.a;
  c1.MulInPlace(u);
  c1.AddInPlace(NttForward(SampleGaussian(ring, top, sigma, prng)));
  return Checked(Ciphertext(params, {std::move(c0), std::move(c1)}, pt.scale(),
                            LedgerBits(*params, std::exp2(FreshNoiseBits(*params)),
                                       pt.scale()),
                            pt.bound()));
}

Ciphertext EncryptNoiseless(const SchemeParamsPtr& params, const Plaintext& pt) {
  Require(pt.poly().params() != nullptr && *pt.poly().params() == *params->ring(),
          ErrorCode::kParamsMismatch, "plaintext uses different ring params");
  RingElement c0 = ToDomain(pt.poly(), Domain::kEvaluation);
  RingElement c1(params->ring(), pt.level(), Domain::kEvaluation);
  return Checked(Ciphertext(params, {std::move(c0), std::move(c1)}, pt.scale(),
                            LedgerBits(*params, EncodingRoundingBound(*params),
                                       pt.scale()),
                            pt.bound()));
}

Plaintext Decrypt(const SecretKey& sk, const Ciphertext& ct) {
  CheckSameParams(sk.params, ct.params());
  Require(ct.size() >= 2, ErrorCode::kInvalidArgument,
          "ciphertext has fewer than two parts");
  const RingElement s = DropLevel(sk.s, ct.level());
  RingElement m = ct.part(ct.size() - 1);
  for (std::size_t i = ct.size() - 1; i-- > 0;) {
    m.MulInPlace(s);
    m.AddInPlace(ct.part(i));
  }
  m.ToCoefficientInPlace();
  return Plaintext(std::move(m), ct.scale(), ct.magnitude());
}

std::vector<double> DecryptSlots(const SecretKey& sk, const Ciphertext& ct) {
  return ct.params()->encoder().Decode(Decrypt(sk, ct));
}

Ciphertext Add(const Ciphertext& a, const Ciphertext& b) {
  CheckOperands(a, b);
  CheckScales(a.scale(), b.scale());
  const Ciphertext& longer = a.size() >= b.size() ? a : b;
  const Ciphertext& shorter = a.size() >= b.size() ? b : a;
  std::vector<RingElement> parts = longer.parts();
  for (std::size_t i = 0; i < shorter.size(); ++i) parts[i].AddInPlace(shorter.part(i));
  return Checked(Ciphertext(a.params(), std::move(parts), a.scale(),
                            std::max(a.noise_bits(), b.noise_bits()) + 1,
                            a.magnitude() + b.magnitude()));
}

Ciphertext Negate(const Ciphertext& a) {
  Ciphertext out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.mutable_part(i).NegateInPlace();
  return out;
}

Ciphertext Sub(const Ciphertext& a, const Ciphertext& b) {
  return Add(a, Negate(b));
}

Ciphertext AddPlain(const Ciphertext& a, const Plaintext& pt) {
  CheckPlaintext(a, pt);
  CheckScales(a.scale(), pt.scale());
  Ciphertext out = a;
  out.mutable_part(0).AddInPlace(ToDomain(pt.poly(), Domain::kEvaluation));
  out.set_noise_bits(LedgerBits(*a.params(),
                                RawNoise(a) + EncodingRoundingBound(*a.params()),
                                a.scale()));
  out.set_magnitude(a.magnitude() + pt.bound());
  return Checked(std::move(out));
}

Ciphertext AddConst(const Ciphertext& a, double value) {
  Require(std::isfinite(value), ErrorCode::kInvalidArgument, "constant is not finite");
  Ciphertext out = a;
  const long double scaled = static_cast<long double>(value) * a.scale();
  AddConstantInPlace(out.mutable_part(0), std::nearbyint(scaled));
  const double rounding = 0.5 + std::fabs(static_cast<double>(scaled)) * 0x1p-63;
  out.set_noise_bits(LedgerBits(*a.params(), RawNoise(a) + rounding, a.scale()));
  out.set_magnitude(a.magnitude() + std::fabs(value));
  return Checked(std::move(out));
}

Ciphertext Tensor(const Ciphertext& a, const Ciphertext& b) {
  CheckOperands(a, b);
  Require(a.size() == 2 && b.size() == 2, ErrorCode::kInvalidArgument,
          "tensor product needs two-part operands");
  RingElement d0 = a.part(0);
  d0.MulInPlace(b.part(0));
  RingElement d1 = a.part(0);
  d1.MulInPlace(b.part(1));
  RingElement cross = a.part(1);
  cross.MulInPlace(b.part(0));
  d1.AddInPlace(cross);
  RingElement d2 = a.part(1);
  d2.MulInPlace(b.part(1));
  const double ea = RawNoise(a);
  const double eb = RawNoise(b);
  const double noise = a.magnitude() * a.scale() * eb +
                       b.magnitude() * b.scale() * ea + ea * eb;
  return Checked(Ciphertext(a.params(), {std::move(d0), std::move(d1), std::move(d2)},
                            a.scale() * b.scale(),
                            LedgerBits(*a.params(), noise, a.scale() * b.scale()),
                            a.magnitude() * b.magnitude()));
}

Ciphertext Relinearize(const Ciphertext& a, const RelinKey& evk) {
  CheckSameParams(a.params(), evk.params);
  if (a.size() == 2) return a;
  Require(a.size() == 3, ErrorCode::kInvalidArgument,
          "relinearization expects a three-part ciphertext");
  const SchemeParams& params = *a.params();
  const RingParams& ring = *params.ring();
  const int level = a.level();
  const std::size_t n = ring.degree();
  const std::size_t residues = static_cast<std::size_t>(level) + 1;

  std::vector<std::uint64_t> c2(residues * n);
  for (std::size_t j = 0; j < residues; ++j) {
    auto src = a.part(2).residue(j);
    std::copy(src.begin(), src.end(), c2.begin() + j * n);
    ring.ntt(j).Inverse(c2.data() + j * n);
  }

  std::vector<uint128_t> acc0(residues * n, 0), acc1(residues * n, 0);
  std::vector<std::int64_t> rest(n);
  std::vector<std::uint64_t> tmp(n);
  constexpr std::int64_t kBase = std::int64_t{1} << kGadgetBits;
  // Each product is below 2^122, so 32 of them fit in the accumulator.
  constexpr int kLazyTerms = 32;
  int pending = 0;
  auto reduce_all = [&] {
    for (std::size_t i = 0; i < residues; ++i) {
      const Modulus& q = ring.modulus(i);
      for (std::size_t k = 0; k < n; ++k) {
        acc0[i * n + k] = q.Reduce(acc0[i * n + k]);
        acc1[i * n + k] = q.Reduce(acc1[i * n + k]);
      }
    }
    pending = 0;
  };

  for (const auto& component : evk.components) {
    const int j = component.prime;
    if (j > level) continue;
    // Balanced digits in [-2^19, 2^19) of the centred residue, low first.
    if (component.digit == 0) {
      const Modulus& qj = ring.modulus(j);
      for (std::size_t k = 0; k < n; ++k) rest[k] = qj.Centered(c2[j * n + k]);
    }
    const bool last = component.digit == GadgetDigits(params, j) - 1;
    if (pending == kLazyTerms) reduce_all();
    for (std::size_t i = 0; i < residues; ++i) {
      const Modulus& q = ring.modulus(i);
      for (std::size_t k = 0; k < n; ++k) {
        std::int64_t d = rest[k];
        if (!last) d = ((rest[k] + kBase / 2) & (kBase - 1)) - kBase / 2;
        tmp[k] = q.FromSigned(d);
      }
      ring.ntt(i).Forward(tmp.data());
      const auto kb = component.b.residue(i);
      const auto ka = component.a.residue(i);
      uint128_t* out0 = acc0.data() + i * n;
      uint128_t* out1 = acc1.data() + i * n;
      for (std::size_t k = 0; k < n; ++k) {
        out0[k] += uint128_t{tmp[k]} * kb[k];
        out1[k] += uint128_t{tmp[k]} * ka[k];
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t d = ((rest[k] + kBase / 2) & (kBase - 1)) - kBase / 2;
      rest[k] = (rest[k] - d) >> kGadgetBits;
    }
    ++pending;
  }

  RingElement c0 = a.part(0);
  RingElement c1 = a.part(1);
  for (std::size_t i = 0; i < residues; ++i) {
    const Modulus& q = ring.modulus(i);
    auto r0 = c0.mutable_residue(i);
    auto r1 = c1.mutable_residue(i);
    for (std::size_t k = 0; k < n; ++k) {
      r0[k] = q.Add(r0[k], q.Reduce(acc0[i * n + k]));
      r1[k] = q.Add(r1[k], q.Reduce(acc1[i * n + k]));
    }
  }
  const double noise =
      RawNoise(a) + RelinBound(params, RelinComponents(params, level));
  return Checked(Ciphertext(a.params(), {std::move(c0), std::move(c1)}, a.scale(),
                            LedgerBits(params, noise, a.scale()), a.magnitude()));
}

Ciphertext Mult(const Ciphertext& a, const Ciphertext& b, const RelinKey& evk) {
  return Relinearize(Tensor(a, b), evk);
}

Ciphertext MultPlain(const Ciphertext& a, const Plaintext& pt) {
  CheckPlaintext(a, pt);
  const RingElement m = ToDomain(pt.poly(), Domain::kEvaluation);
  Ciphertext out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.mutable_part(i).MulInPlace(m);
  const double ea = RawNoise(a);
  const double ep = EncodingRoundingBound(*a.params());
  const double noise = a.magnitude() * a.scale() * ep +
                       pt.bound() * pt.scale() * ea + ea * ep;
  out.set_scale(a.scale() * pt.scale());
  out.set_noise_bits(LedgerBits(*a.params(), noise, out.scale()));
  out.set_magnitude(a.magnitude() * pt.bound());
  return Checked(std::move(out));
}

Ciphertext MultConst(const Ciphertext& a, double value, double const_scale) {
  Require(std::isfinite(value) && std::isfinite(const_scale) && const_scale > 0,
          ErrorCode::kInvalidArgument, "constant or its scale is not finite");
  const double scaled = std::nearbyint(value * const_scale);
  Require(std::fabs(scaled) < 0x1p62, ErrorCode::kInvalidArgument,
          "scaled constant does not fit in 62 bits");
  Ciphertext out = a;
  const auto k = static_cast<std::int64_t>(scaled);
  for (std::size_t i = 0; i < out.size(); ++i) out.mutable_part(i).MulScalarInPlace(k);
  const double ea = RawNoise(a);
  const double noise = (std::fabs(value) * const_scale + 0.5) * ea +
                       0.5 * a.magnitude() * a.scale();
  out.set_scale(a.scale() * const_scale);
  out.set_noise_bits(LedgerBits(*a.params(), noise, out.scale()));
  out.set_magnitude(a.magnitude() * std::fabs(value));
  return Checked(std::move(out));
}

Ciphertext MultInteger(const Ciphertext& a, std::int64_t k) {
  Ciphertext out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.mutable_part(i).MulScalarInPlace(k);
  const double factor = std::fabs(static_cast<double>(k));
  out.set_noise_bits(a.noise_bits() + Bits(factor));
  out.set_magnitude(a.magnitude() * factor);
  if (k == 0) out.set_noise_bits(kNegInf);
  return Checked(std::move(out));
}

Ciphertext Rescale(const Ciphertext& a) {
  const int level = a.level();
  Require(level >= 1, ErrorCode::kLevelExhausted, "no level left to rescale");
  const SchemeParams& params = *a.params();
  const RingParams& ring = *params.ring();
  const std::size_t n = ring.degree();
  const Modulus& top = ring.modulus(level);
  std::vector<std::uint64_t> last(n), tmp(n);
  std::vector<RingElement> parts = a.parts();
  for (auto& part : parts) {
    // (c - [c]_{q_l}) / q_l with the centred remainder: exact rounding.
    auto src = part.residue(level);
    std::copy(src.begin(), src.end(), last.begin());
    ring.ntt(level).Inverse(last.data());
    for (int i = 0; i < level; ++i) {
      const Modulus& q = ring.modulus(i);
      for (std::size_t k = 0; k < n; ++k) tmp[k] = q.FromSigned(top.Centered(last[k]));
      ring.ntt(i).Forward(tmp.data());
      const std::uint64_t inv = q.Inverse(q.Reduce(top.value()));
      const std::uint64_t inv_shoup = q.ShoupPrecompute(inv);
      auto dst = part.mutable_residue(i);
      for (std::size_t k = 0; k < n; ++k) {
        dst[k] = q.MulShoup(q.Sub(dst[k], tmp[k]), inv, inv_shoup);
      }
    }
    part.DropToLevelInPlace(level - 1);
  }
  const double q = static_cast<double>(top.value());
  const double noise = RawNoise(a) / q + RescaleRoundingBound(params);
  return Checked(Ciphertext(a.params(), std::move(parts), a.scale() / q,
                            LedgerBits(params, noise, a.scale() / q),
                            a.magnitude()));
}

Ciphertext DropLevel(const Ciphertext& a, int level) {
  Require(level >= 0 && level <= a.level(), ErrorCode::kLevelMismatch,
          "cannot raise a ciphertext from level " + std::to_string(a.level()) +
              " to " + std::to_string(level));
  std::vector<RingElement> parts = a.parts();
  for (auto& part : parts) part.DropToLevelInPlace(level);
  return Checked(Ciphertext(a.params(), std::move(parts), a.scale(),
                            a.noise_bits(), a.magnitude()));
}

Ciphertext LinearCombination(std::span<const CiphertextRef> inputs,
                             std::span<const double> weights, double bias,
                             int target_level) {
  Require(!inputs.empty() && inputs.size() == weights.size(),
          ErrorCode::kInvalidArgument,
          "linear combination needs one weight per input");
  const Ciphertext& first = inputs.front().get();
  const SchemeParamsPtr& params = first.params();
  const int level = first.level();
  Require(level >= 1, ErrorCode::kLevelExhausted, "no level left to rescale");
  Require(target_level >= 0 && target_level < level, ErrorCode::kLevelMismatch,
          "target level must lie below the input level");
  const double scale = first.scale();
  const long double q = static_cast<long double>(params->ring()->modulus(level).value());
  const long double target_scale = params->LevelScale(target_level);
  const long double const_scale = q * target_scale / scale;
  Require(const_scale >= 1, ErrorCode::kScaleMismatch,
          "input scale is too large for the target level");

  std::vector<RingElement> parts;
  double noise = 0;
  double magnitude = std::fabs(bias);
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const Ciphertext& ct = inputs[j].get();
    CheckOperands(first, ct);
    CheckScales(scale, ct.scale());
    Require(std::isfinite(weights[j]), ErrorCode::kInvalidArgument,
            "weight is not finite");
    const long double scaled = std::nearbyint(weights[j] * const_scale);
    Require(std::fabs(scaled) < 0x1p62L, ErrorCode::kInvalidArgument,
            "scaled weight does not fit in 62 bits");
    const auto k = static_cast<std::int64_t>(scaled);
    if (parts.size() < ct.size()) {
      parts.resize(ct.size(), RingElement(params->ring(), level, Domain::kEvaluation));
    }
    for (std::size_t i = 0; i < ct.size(); ++i) {
      parts[i].AddInPlace(MulScalar(ct.part(i), k));
    }
    noise += static_cast<double>(std::fabs(weights[j]) * const_scale + 0.5) *
                 RawNoise(ct) +
             0.5 * ct.magnitude() * ct.scale();
    magnitude += std::fabs(weights[j]) * ct.magnitude();
  }
  if (bias != 0) {
    Require(std::isfinite(bias), ErrorCode::kInvalidArgument, "bias is not finite");
    const long double scaled = bias * scale * const_scale;
    AddConstantInPlace(parts[0], std::nearbyint(scaled));
    noise += 0.5 + static_cast<double>(std::fabs(scaled)) * 0x1p-63;
  }
  Ciphertext product(params, std::move(parts),
                     static_cast<double>(scale * const_scale),
                     LedgerBits(*params, noise, static_cast<double>(scale * const_scale)),
                     magnitude);
  Ciphertext out = Rescale(Checked(std::move(product)));
  out.set_scale(static_cast<double>(target_scale));
  return DropLevel(out, target_level);
}

Ciphertext MultConstToLevel(const Ciphertext& a, double value, int target_level) {
  const CiphertextRef inputs[] = {std::cref(a)};
  const double weights[] = {value};
  return LinearCombination(inputs, weights, 0.0, target_level);
}

std::pair<Ciphertext, Ciphertext> AlignOperands(const Ciphertext& a,
                                                const Ciphertext& b) {
  CheckSameParams(a.params(), b.params());
  std::pair<Ciphertext, Ciphertext> out{a, b};
  const int level = std::min(a.level(), b.level());
  if (a.level() > level) out.first = MultConstToLevel(a, 1.0, level);
  if (b.level() > level) out.second = MultConstToLevel(b, 1.0, level);
  const double sa = out.first.scale();
  const double sb = out.second.scale();
  if (std::fabs(sa - sb) > kScaleTolerance * std::max(sa, sb)) {
    Require(level >= 1, ErrorCode::kLevelExhausted,
            "no level left to align scales");
    out.first = MultConstToLevel(out.first, 1.0, level - 1);
    out.second = MultConstToLevel(out.second, 1.0, level - 1);
  }
  return out;
}

Ciphertext AssumeMagnitude(const Ciphertext& a, double bound) {
  Require(bound >= 0, ErrorCode::kInvalidArgument, "negative magnitude bound");
  Ciphertext out = a;
  out.set_magnitude(std::min(a.magnitude(), bound));
  return out;
}

double NoiseMeasure(const SecretKey& sk, const Ciphertext& ct,
                    std::span<const double> reference) {
  const std::vector<double> slots = DecryptSlots(sk, ct);
  double worst = 0;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    const double ref = j < reference.size() ? reference[j] : 0.0;
    worst = std::max(worst, std::fabs(slots[j] - ref));
  }
  return Bits(worst * ct.params()->delta());
}

}  // namespace hnn
