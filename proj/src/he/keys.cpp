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

#include "hnn/keys.hpp"

#include "hnn/error.hpp"

namespace hnn {

int GadgetDigits(const SchemeParams& params, int prime) {
  const int bits = params.ring()->modulus(prime).bit_count();
  return (bits + kGadgetBits - 1) / kGadgetBits;
}

KeyMaterial KeyGen(const SchemeParamsPtr& params, Prng& prng) {
  Require(params != nullptr, ErrorCode::kInvalidArgument, "null params");
  const RingParamsPtr& ring = params->ring();
  const int top = params->max_level();
  const double sigma = params->error_stddev();

  KeyMaterial keys;
  keys.sk.params = params;
  keys.sk.s = NttForward(
      SampleTernary(ring, top, params->hamming_weight(), prng));
  const RingElement& s = keys.sk.s;

  auto encrypt_zero = [&](RingElement& b, RingElement& a) {
    a = SampleUniform(ring, top, prng, Domain::kEvaluation);
    b = NttForward(SampleGaussian(ring, top, sigma, prng));
    RingElement as = a;
    as.MulInPlace(s);
    b.SubInPlace(as);
  };

  keys.pk.params = params;
  encrypt_zero(keys.pk.b, keys.pk.a);

  RingElement s_squared = s;
  s_squared.MulInPlace(s);
  keys.evk.params = params;
  for (int j = 0; j <= top; ++j) {
    const Modulus& q = ring->modulus(j);
    for (int t = 0; t < GadgetDigits(*params, j); ++t) {
      RelinKey::Component component{j, t, {}, {}};
      encrypt_zero(component.b, component.a);
      const std::uint64_t factor = q.Pow(2, static_cast<std::uint64_t>(kGadgetBits) * t);
      auto dst = component.b.mutable_residue(j);
      auto src = s_squared.residue(j);
      for (std::size_t k = 0; k < dst.size(); ++k) {
        dst[k] = q.Add(dst[k], q.Mul(src[k], factor));
      }
      keys.evk.components.push_back(std::move(component));
    }
  }
  return keys;
}

}  // namespace hnn
