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

#ifndef HNN_KEYS_HPP_
#define HNN_KEYS_HPP_

#include <vector>

#include "hnn/params.hpp"
#include "hnn/prng.hpp"

namespace hnn {

inline constexpr int kGadgetBits = 20;

// All key polynomials live at the top level in the evaluation domain.
struct SecretKey {
  SchemeParamsPtr params;
  RingElement s;
};

// b = -a*s + e.
struct PublicKey {
  SchemeParamsPtr params;
  RingElement b;
  RingElement a;
};

// Component (j, t) encrypts 2^(20 t) s^2 in the residue of q_j only:
// b = -a*s + e + [i == j] 2^(20 t) s^2 (mod q_i). Relinearization feeds it
// balanced base-2^20 digits of the centred residues.
struct RelinKey {
  struct Component {
    int prime;
    int digit;
    RingElement b;
    RingElement a;
  };
  SchemeParamsPtr params;
  std::vector<Component> components;  // ordered by (prime, digit)
};

struct KeyMaterial {
  SecretKey sk;
  PublicKey pk;
  RelinKey evk;
};

// Number of base-2^20 digits needed for residues of q_j.
int GadgetDigits(const SchemeParams& params, int prime);

KeyMaterial KeyGen(const SchemeParamsPtr& params, Prng& prng);

}  // namespace hnn

#endif  // HNN_KEYS_HPP_
