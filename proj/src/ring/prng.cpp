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

#include "hnn/prng.hpp"

#include <sodium.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace hnn {
namespace {

void EnsureSodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Prng::Prng(const std::array<std::uint8_t, 32>& key) : key_(key) {
  EnsureSodium();
}

Prng::Prng(std::uint64_t seed) {
  EnsureSodium();
  std::uint8_t material[16] = {'h', 'n', 'n', '-', 'p', 'r', 'n', 'g'};
  for (int i = 0; i < 8; ++i) {
    material[8 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
  }
  crypto_hash_sha256(key_.data(), material, sizeof(material));
}

Prng Prng::FromEntropy() {
  EnsureSodium();
  std::array<std::uint8_t, 32> key;
  randombytes_buf(key.data(), key.size());
  return Prng(key);
}

Prng Prng::Fork() {
  std::array<std::uint8_t, 32> key;
  for (std::size_t i = 0; i < key.size(); i += 8) {
    const std::uint64_t word = NextU64();
    std::memcpy(key.data() + i, &word, 8);
  }
  return Prng(key);
}

void Prng::Refill() {
  constexpr std::uint32_t kBlocks = sizeof(buffer_) / 64;
  if (block_counter_ > std::numeric_limits<std::uint32_t>::max() - kBlocks) {
    // Counter space of this nonce is used up; move to the next nonce.
    for (auto& byte : nonce_) {
      if (++byte != 0) break;
    }
    block_counter_ = 0;
  }
  buffer_.fill(0);
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(),
                                     buffer_.size(), nonce_.data(),
                                     block_counter_, key_.data());
  block_counter_ += kBlocks;
  cursor_ = 0;
}

std::uint64_t Prng::NextU64() {
  if (cursor_ + 8 > buffer_.size()) Refill();
  std::uint64_t value;
  std::memcpy(&value, buffer_.data() + cursor_, 8);
  cursor_ += 8;
  return value;
}

std::uint64_t Prng::UniformBelow(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: bound is zero");
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = NextU64();
    if (x <= limit) return x % bound;
  }
}

double Prng::NextUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Prng::NextNormal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = NextUnit();
  while (u1 <= 0.0) u1 = NextUnit();
  const double u2 = NextUnit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

}  // namespace hnn
