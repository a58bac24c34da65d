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

#ifndef HNN_IO_HPP_
#define HNN_IO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hnn/evaluator.hpp"
#include "hnn/neural.hpp"

namespace hnn {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::uint16_t kBlobVersion = 1;
inline constexpr std::uint16_t kBundleVersion = 1;
inline constexpr int kModelVersion = 1;

Digest Sha256(std::span<const std::uint8_t> data);
std::string HexDigest(const Digest& d);

// ---- parameter files ----

// Text document, one "key value" pair per line; '#' starts a comment.
std::string SerializeParams(const SchemeParams& params);
// Runs SchemeParams::Create, so the security table is enforced unless the
// file sets allow_insecure.
SchemeParamsPtr ParseParams(std::string_view text);
// SHA-256 of SerializeParams.
Digest ParamsHash(const SchemeParams& params);

// ---- blobs ----
//
// "HNN1" | kind u8 | version u16 | params hash [32] | payload | SHA-256 of
// everything before it [32]. Integers are little-endian. Ring elements are
// always written with L + 1 residues (unused ones zero), so sizes depend only
// on the parameters.

enum class BlobKind : std::uint8_t {
  kPublicKey = 0,
  kSecretKey = 1,
  kRelinKey = 2,
  kCiphertext = 3,
  kPlaintext = 4,
};

std::size_t BlobSize(const SchemeParams& params, BlobKind kind);
// Validates magic and length only.
BlobKind PeekBlobKind(std::span<const std::uint8_t> blob);

Bytes SerializePublicKey(const PublicKey& pk);
Bytes SerializeSecretKey(const SecretKey& sk);
Bytes SerializeRelinKey(const RelinKey& evk);
// Two-part ciphertexts only; relinearize first.
Bytes SerializeCiphertext(const Ciphertext& ct);
Bytes SerializePlaintext(const Plaintext& pt, const SchemeParams& params);

PublicKey ParsePublicKey(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params);
SecretKey ParseSecretKey(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params);
RelinKey ParseRelinKey(std::span<const std::uint8_t> blob,
                       const SchemeParamsPtr& params);
Ciphertext ParseCiphertext(std::span<const std::uint8_t> blob,
                           const SchemeParamsPtr& params);
Plaintext ParsePlaintext(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params);

// ---- ciphertext bundles ----
//
// "HNNB" | version u16 | params hash [32] | count u32 | slots used u32 |
// count x (length u64 | ciphertext blob) | SHA-256 [32].

struct CiphertextBundle {
  std::vector<Ciphertext> ciphertexts;
  std::size_t slots_used = 0;
};

Bytes SerializeBundle(const CiphertextBundle& bundle);
CiphertextBundle ParseBundle(std::span<const std::uint8_t> bytes,
                             const SchemeParamsPtr& params);

// ---- model files ----

struct ModelFile {
  LinearModel model;
  SoftArgmaxHead head;
  std::uint64_t seed = 0;
  std::string config_hash;  // hex digest of the training configuration
};

std::string SerializeModel(const ModelFile& file);
ModelFile ParseModel(std::string_view text);

// ---- CSV ----

// One sample per row: features, then an integer label. A first line that
// does not parse as numbers is taken as a header.
Dataset ParseCsv(std::string_view text, bool has_labels = true);
// Header line f0,...,label.
std::string FormatCsv(const Dataset& data);

// ---- files ----

Bytes ReadFileBytes(const std::filesystem::path& path);
std::string ReadFileText(const std::filesystem::path& path);
// Writes through a temporary file and renames. `private_file` restricts the
// mode to 0600.
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> data,
                    bool private_file = false);
void WriteFileText(const std::filesystem::path& path, std::string_view text,
                   bool private_file = false);

}  // namespace hnn

#endif  // HNN_IO_HPP_
