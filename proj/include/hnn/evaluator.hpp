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

#ifndef HNN_EVALUATOR_HPP_
#define HNN_EVALUATOR_HPP_

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hnn/ciphertext.hpp"
#include "hnn/keys.hpp"

namespace hnn {

// Tail factor of the heuristic noise bounds, in standard deviations.
inline constexpr double kNoiseTail = 6.0;
// Tail factor for the largest slot of a random small polynomial.
inline constexpr double kEmbeddingTail = 5.0;
// Relative tolerance when comparing the scales of two operands.
inline constexpr double kScaleTolerance = 0x1p-30;

using CiphertextRef = std::reference_wrapper<const Ciphertext>;

// log2 of the fresh-encryption bound on |slot error| * scale.
double FreshNoiseBits(const SchemeParams& params);

Ciphertext Encrypt(const PublicKey& pk, const Plaintext& pt, Prng& prng);
// (m, 0): no randomness and no error. Test hook only.
Ciphertext EncryptNoiseless(const SchemeParamsPtr& params, const Plaintext& pt);

// Accepts ciphertexts of any size (sum of c_i s^i).
Plaintext Decrypt(const SecretKey& sk, const Ciphertext& ct);
std::vector<double> DecryptSlots(const SecretKey& sk, const Ciphertext& ct);

Ciphertext Add(const Ciphertext& a, const Ciphertext& b);
Ciphertext Sub(const Ciphertext& a, const Ciphertext& b);
Ciphertext Negate(const Ciphertext& a);
Ciphertext AddPlain(const Ciphertext& a, const Plaintext& pt);
Ciphertext AddConst(const Ciphertext& a, double value);

// Three-part product (c0 c0', c0 c1' + c1 c0', c1 c1').
Ciphertext Tensor(const Ciphertext& a, const Ciphertext& b);
Ciphertext Relinearize(const Ciphertext& a, const RelinKey& evk);
// Tensor followed by relinearization; the caller rescales.
Ciphertext Mult(const Ciphertext& a, const Ciphertext& b, const RelinKey& evk);
Ciphertext MultPlain(const Ciphertext& a, const Plaintext& pt);
// Multiplies by round(value * const_scale); the scale grows by const_scale.
Ciphertext MultConst(const Ciphertext& a, double value, double const_scale);
Ciphertext MultInteger(const Ciphertext& a, std::int64_t k);

Ciphertext Rescale(const Ciphertext& a);
Ciphertext DropLevel(const Ciphertext& a, int level);

// sum_j weights[j] * inputs[j] + bias, landing on `target_level` (below the
// inputs' level) with that level's canonical scale. Costs one rescale.
Ciphertext LinearCombination(std::span<const CiphertextRef> inputs,
                             std::span<const double> weights, double bias,
                             int target_level);
Ciphertext MultConstToLevel(const Ciphertext& a, double value,
                            int target_level);

// Brings both operands to a common level and scale. The higher one is moved
// down; if the scales still differ both drop one more level.
std::pair<Ciphertext, Ciphertext> AlignOperands(const Ciphertext& a,
                                                const Ciphertext& b);

// Caller-asserted bound |slot| <= bound (e.g. a known input domain); the
// ledger keeps the smaller of this and its own magnitude estimate.
Ciphertext AssumeMagnitude(const Ciphertext& a, double bound);

// log2(max_j |decoded_j - reference_j| * Delta); -inf for an exact match.
// Slots past the end of reference are compared against zero.
double NoiseMeasure(const SecretKey& sk, const Ciphertext& ct,
                    std::span<const double> reference);

}  // namespace hnn

#endif  // HNN_EVALUATOR_HPP_
