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

#ifndef HNN_RING_HPP_
#define HNN_RING_HPP_

// Exact arithmetic in R_Q = Z_Q[X]/(X^N + 1) with Q = q_0 * ... * q_L held in
// residue-number-system form: one length-N residue vector per prime.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hnn/modarith.hpp"
#include "hnn/prng.hpp"

namespace hnn {

// Negacyclic NTT for one prime: forward is Cooley-Tukey with bit-reversed
// powers of a primitive 2N-th root psi, inverse is Gentleman-Sande. Output of
// Forward() at index i is a(psi^(2 * bitrev(i) + 1)).
class NttTables {
 public:
  NttTables(std::size_t degree, const Modulus& modulus);

  void Forward(std::uint64_t* values) const;
  void Inverse(std::uint64_t* values) const;

  std::uint64_t psi() const { return psi_; }
  // Exponent e such that Forward() output slot i holds a(psi^e).
  std::uint64_t EvaluationExponent(std::size_t i) const;

 private:
  std::size_t degree_;
  int log_degree_;
  Modulus modulus_;
  std::uint64_t psi_;
  std::vector<std::uint64_t> roots_;          // psi^bitrev(i)
  std::vector<std::uint64_t> roots_shoup_;
  std::vector<std::uint64_t> inv_roots_;      // psi^-bitrev(i)
  std::vector<std::uint64_t> inv_roots_shoup_;
  std::uint64_t inv_degree_;
  std::uint64_t inv_degree_shoup_;
};

// Ring degree and modulus chain. Immutable and shared by every element
// defined over it.
class RingParams {
 public:
  // Validates: degree a power of two >= 8; primes distinct, prime and
  // congruent to 1 mod 2 * degree.
  static std::shared_ptr<const RingParams> Create(
      std::size_t degree, std::vector<std::uint64_t> primes);

  std::size_t degree() const { return degree_; }
  int log_degree() const { return log_degree_; }
  std::size_t prime_count() const { return moduli_.size(); }
  int max_level() const { return static_cast<int>(moduli_.size()) - 1; }
  const Modulus& modulus(std::size_t j) const { return moduli_[j]; }
  const NttTables& ntt(std::size_t j) const { return *ntt_[j]; }
  std::vector<std::uint64_t> primes() const;

  // log2(q_0 * ... * q_level).
  double Log2Modulus(int level) const;
  // q_j^-1 mod q_i, for j < i (Garner's mixed-radix conversion).
  std::uint64_t GarnerInverse(std::size_t i, std::size_t j) const {
    return garner_inverse_[i * moduli_.size() + j];
  }

  friend bool operator==(const RingParams& a, const RingParams& b);

 private:
  RingParams() = default;

  std::size_t degree_ = 0;
  int log_degree_ = 0;
  std::vector<Modulus> moduli_;
  std::vector<std::unique_ptr<NttTables>> ntt_;
  std::vector<std::uint64_t> garner_inverse_;
};

using RingParamsPtr = std::shared_ptr<const RingParams>;

enum class Domain { kCoefficient, kEvaluation };

// A ring element at some level l: residues modulo q_0..q_l, either as
// coefficients or as NTT evaluations. Value type; the free functions below
// never modify their inputs.
class RingElement {
 public:
  RingElement() = default;
  // The zero element.
  RingElement(RingParamsPtr params, int level, Domain domain);

  // Coefficient-domain element from small signed integers.
  static RingElement FromSigned(RingParamsPtr params, int level,
                                std::span<const std::int64_t> coefficients);

  const RingParamsPtr& params() const { return params_; }
  int level() const { return level_; }
  Domain domain() const { return domain_; }
  std::size_t degree() const { return params_->degree(); }

  std::span<const std::uint64_t> residue(std::size_t j) const {
    return {data_.data() + j * degree(), degree()};
  }
  std::span<std::uint64_t> mutable_residue(std::size_t j) {
    return {data_.data() + j * degree(), degree()};
  }

  // In-place forms of the free functions, used by the scheme internals.
  void ToEvaluationInPlace();
  void ToCoefficientInPlace();
  void ToDomainInPlace(Domain domain);
  void AddInPlace(const RingElement& other);
  void SubInPlace(const RingElement& other);
  void NegateInPlace();
  void MulInPlace(const RingElement& other);  // both in evaluation domain
  void MulScalarInPlace(std::int64_t scalar);
  void DropToLevelInPlace(int level);

  friend bool operator==(const RingElement& a, const RingElement& b);

 private:
  RingParamsPtr params_;
  int level_ = -1;
  Domain domain_ = Domain::kCoefficient;
  std::vector<std::uint64_t> data_;
};

// Transforms. Both reject an input already in the target domain.
RingElement NttForward(const RingElement& a);
RingElement NttInverse(const RingElement& a);
// Returns `a` in `domain`, converting only if needed.
RingElement ToDomain(const RingElement& a, Domain domain);

RingElement Add(const RingElement& a, const RingElement& b);
RingElement Sub(const RingElement& a, const RingElement& b);
RingElement Negate(const RingElement& a);
// Product in R_Q. Operands are converted to the evaluation domain if needed;
// the result is in the evaluation domain.
RingElement RingMul(const RingElement& a, const RingElement& b);
// Quadratic-time negacyclic convolution; coefficient domain only.
RingElement SchoolbookMul(const RingElement& a, const RingElement& b);
RingElement MulScalar(const RingElement& a, std::int64_t scalar);
RingElement DropLevel(const RingElement& a, int new_level);

// Samplers. All return coefficient-domain elements unless a domain is given.
RingElement SampleUniform(const RingParamsPtr& params, int level, Prng& prng,
                          Domain domain = Domain::kCoefficient);
// Exactly `hamming_weight` coefficients set to +-1, the rest zero.
RingElement SampleTernary(const RingParamsPtr& params, int level,
                          std::size_t hamming_weight, Prng& prng);
// Rounded centred normal with standard deviation `sigma`, truncated at
// 6 * sigma.
RingElement SampleGaussian(const RingParamsPtr& params, int level,
                           double sigma, Prng& prng);

// Signed coefficients of a level-0 coefficient-domain element, or of any
// level when the values are known to fit in (-q_0/2, q_0/2].
std::vector<std::int64_t> CenteredCoefficients(const RingElement& a);

// Exact centred CRT lift of every coefficient, evaluated in extended
// precision: x in (-Q_l/2, Q_l/2]. Coefficient domain only.
std::vector<long double> LiftCoefficients(const RingElement& a);

}  // namespace hnn

#endif  // HNN_RING_HPP_
