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

#include <sodium.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <string>

#include "hnn/error.hpp"
#include "hnn/io.hpp"

namespace hnn {
namespace {

constexpr char kBlobMagic[4] = {'H', 'N', 'N', '1'};
constexpr char kBundleMagic[4] = {'H', 'N', 'N', 'B'};
constexpr std::size_t kBlobHeader = 4 + 1 + 2 + 32;
constexpr std::size_t kElementHeader = 1 + 4;  // domain, level
constexpr std::size_t kCiphertextMeta = 4 + 8 * 3;  // parts, scale, noise, magnitude
constexpr std::size_t kPlaintextMeta = 8 * 2;        // scale, bound

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U16(std::uint16_t v) { Le(v, 2); }
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Raw(std::span<const std::uint8_t> data) {
    out_.insert(out_.end(), data.begin(), data.end());
  }
  void Raw(const char* data, std::size_t n) {
    out_.insert(out_.end(), data, data + n);
  }
  void Element(const RingElement& e) {
    U8(static_cast<std::uint8_t>(e.domain()));
    U32(static_cast<std::uint32_t>(e.level()));
    const std::size_t primes = e.params()->prime_count();
    for (std::size_t j = 0; j < primes; ++j) {
      if (static_cast<int>(j) <= e.level()) {
        for (std::uint64_t c : e.residue(j)) U64(c);
      } else {
        out_.resize(out_.size() + 8 * e.degree(), 0);
      }
    }
  }
  Bytes& bytes() { return out_; }

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t U8() { return static_cast<std::uint8_t>(Le(1)); }
  std::uint16_t U16() { return static_cast<std::uint16_t>(Le(2)); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Le(4)); }
  std::uint64_t U64() { return Le(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::span<const std::uint8_t> Raw(std::size_t n) {
    Need(n);
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  RingElement Element(const RingParamsPtr& ring) {
    const std::uint8_t domain = U8();
    Require(domain <= 1, ErrorCode::kFormat, "bad domain tag");
    const std::uint32_t level = U32();
    Require(level <= static_cast<std::uint32_t>(ring->max_level()),
            ErrorCode::kFormat, "element level above the chain");
    RingElement e(ring, static_cast<int>(level), static_cast<Domain>(domain));
    for (std::size_t j = 0; j < ring->prime_count(); ++j) {
      const std::uint64_t q = ring->modulus(j).value();
      if (j <= level) {
        for (std::uint64_t& c : e.mutable_residue(j)) {
          c = U64();
          Require(c < q, ErrorCode::kFormat, "residue out of range");
        }
      } else {
        for (std::size_t k = 0; k < ring->degree(); ++k) {
          Require(U64() == 0, ErrorCode::kFormat, "nonzero padding");
        }
      }
    }
    return e;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void Need(std::size_t n) const {
    Require(in_.size() - pos_ >= n, ErrorCode::kFormat, "truncated data");
  }
  std::uint64_t Le(int n) {
    Need(n);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::size_t ElementSize(const SchemeParams& p) {
  return kElementHeader + p.bytes_per_element();
}

std::size_t PayloadSize(const SchemeParams& p, BlobKind kind) {
  const std::size_t e = ElementSize(p);
  switch (kind) {
    case BlobKind::kPublicKey:
      return 2 * e;
    case BlobKind::kSecretKey:
      return e;
    case BlobKind::kRelinKey: {
      std::size_t count = 0;
      for (int j = 0; j <= p.max_level(); ++j) count += GadgetDigits(p, j);
      return 4 + count * (8 + 2 * e);
    }
    case BlobKind::kCiphertext:
      return kCiphertextMeta + 2 * e;
    case BlobKind::kPlaintext:
      return kPlaintextMeta + e;
  }
  Fail(ErrorCode::kFormat, "unknown blob kind");
}

Writer BeginBlob(const SchemeParams& params, BlobKind kind) {
  Writer w;
  w.Raw(kBlobMagic, 4);
  w.U8(static_cast<std::uint8_t>(kind));
  w.U16(kBlobVersion);
  const Digest h = ParamsHash(params);
  w.Raw(h);
  return w;
}

Bytes FinishBlob(Writer& w) {
  const Digest sum = Sha256(w.bytes());
  w.Raw(sum);
  return std::move(w.bytes());
}

void CheckMagic(std::span<const std::uint8_t> data, const char* magic,
                std::size_t min_size, const char* what) {
  Require(data.size() >= min_size && std::memcmp(data.data(), magic, 4) == 0,
          ErrorCode::kFormat, std::string("not an ") + what);
}

void CheckChecksum(std::span<const std::uint8_t> data) {
  const auto body = data.first(data.size() - 32);
  const Digest sum = Sha256(body);
  Require(std::memcmp(sum.data(), data.data() + body.size(), 32) == 0,
          ErrorCode::kChecksum, "checksum mismatch; the file is corrupted");
}

void CheckParamsHash(std::span<const std::uint8_t> hash,
                     const SchemeParams& params) {
  const Digest want = ParamsHash(params);
  Require(std::memcmp(hash.data(), want.data(), 32) == 0,
          ErrorCode::kParamsMismatch,
          "key/ciphertext from different worlds: parameter hash differs");
}

// Verifies the envelope and returns a reader positioned at the payload.
Reader OpenBlob(std::span<const std::uint8_t> blob, BlobKind kind,
                const SchemeParams& params) {
  CheckMagic(blob, kBlobMagic, kBlobHeader + 32, "HNN blob");
  CheckChecksum(blob);
  Reader r(blob.first(blob.size() - 32));
  r.Raw(4);
  const auto got = static_cast<BlobKind>(r.U8());
  Require(got == kind, ErrorCode::kFormat,
          "blob kind " + std::to_string(static_cast<int>(got)) +
              " where kind " + std::to_string(static_cast<int>(kind)) +
              " was expected");
  Require(r.U16() == kBlobVersion, ErrorCode::kFormat,
          "unsupported blob version");
  CheckParamsHash(r.Raw(32), params);
  Require(r.remaining() == PayloadSize(params, kind), ErrorCode::kFormat,
          "payload size does not match the parameters");
  return r;
}

void CheckParams(const SchemeParamsPtr& a, const SchemeParamsPtr& b) {
  Require(a && b && *a == *b, ErrorCode::kParamsMismatch,
          "objects belong to different parameter sets");
}

}  // namespace

Digest Sha256(std::span<const std::uint8_t> data) {
  Digest out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

std::string HexDigest(const Digest& d) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

// ---- params ----

std::string SerializeParams(const SchemeParams& params) {
  const ParamsConfig& c = params.config();
  std::ostringstream os;
  os.precision(17);
  os << "# hnn parameter set\n";
  os << "version " << kParamsVersion << "\n";
  os << "lambda " << c.lambda << "\n";
  os << "N " << c.degree << "\n";
  os << "modulus_bits";
  for (std::size_t j = 0; j < c.moduli.size(); ++j) {
    os << " " << params.ring()->modulus(j).bit_count();
  }
  os << "\nmoduli";
  for (std::uint64_t q : c.moduli) os << " " << q;
  os << "\ndelta_bits " << c.delta_bits << "\n";
  os << "K " << c.slots << "\n";
  os << "noise_budget_bits " << c.noise_budget_bits << "\n";
  os << "hamming_weight " << c.hamming_weight << "\n";
  os << "error_stddev " << c.error_stddev << "\n";
  os << "allow_insecure " << (c.allow_insecure ? 1 : 0) << "\n";
  return os.str();
}

namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& token) {
  T value{};
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  Require(ec == std::errc() && ptr == end, ErrorCode::kFormat,
          "bad value '" + token + "' for " + key);
  return value;
}

}  // namespace

SchemeParamsPtr ParseParams(std::string_view text) {
  std::map<std::string, std::vector<std::string>> fields;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    Require(!fields.contains(key), ErrorCode::kFormat, "duplicate key " + key);
    std::vector<std::string>& values = fields[key];
    for (std::string v; ls >> v;) values.push_back(v);
    Require(!values.empty(), ErrorCode::kFormat, "missing value for " + key);
  }
  static const char* kKeys[] = {"version", "lambda", "N", "modulus_bits",
                                "moduli", "delta_bits", "K",
                                "noise_budget_bits", "hamming_weight",
                                "error_stddev", "allow_insecure"};
  for (const char* k : kKeys) {
    Require(fields.contains(k), ErrorCode::kFormat,
            std::string("params file lacks ") + k);
  }
  Require(fields.size() == std::size(kKeys), ErrorCode::kFormat,
          "unknown key in params file");
  auto one = [&](const char* key) -> const std::string& {
    Require(fields[key].size() == 1, ErrorCode::kFormat,
            std::string("expected one value for ") + key);
    return fields[key][0];
  };
  Require(ParseNumber<int>("version", one("version")) == kParamsVersion,
          ErrorCode::kFormat, "unsupported params version");
  ParamsConfig c;
  c.lambda = ParseNumber<int>("lambda", one("lambda"));
  c.degree = ParseNumber<std::size_t>("N", one("N"));
  for (const std::string& q : fields["moduli"]) {
    c.moduli.push_back(ParseNumber<std::uint64_t>("moduli", q));
  }
  c.delta_bits = ParseNumber<int>("delta_bits", one("delta_bits"));
  c.slots = ParseNumber<std::size_t>("K", one("K"));
  c.noise_budget_bits =
      ParseNumber<double>("noise_budget_bits", one("noise_budget_bits"));
  c.hamming_weight =
      ParseNumber<std::size_t>("hamming_weight", one("hamming_weight"));
  c.error_stddev = ParseNumber<double>("error_stddev", one("error_stddev"));
  const int insecure = ParseNumber<int>("allow_insecure", one("allow_insecure"));
  Require(insecure == 0 || insecure == 1, ErrorCode::kFormat,
          "allow_insecure must be 0 or 1");
  c.allow_insecure = insecure == 1;
  Require(c.slots > 0 && c.hamming_weight > 0 && c.noise_budget_bits > 0,
          ErrorCode::kFormat, "K, hamming_weight and noise budget must be set");

  const auto& bits = fields["modulus_bits"];
  Require(bits.size() == c.moduli.size(), ErrorCode::kFormat,
          "modulus_bits and moduli lengths differ");
  SchemeParamsPtr params = SchemeParams::Create(c);
  for (std::size_t j = 0; j < bits.size(); ++j) {
    Require(ParseNumber<int>("modulus_bits", bits[j]) ==
                params->ring()->modulus(j).bit_count(),
            ErrorCode::kFormat, "modulus_bits disagrees with moduli");
  }
  return params;
}

Digest ParamsHash(const SchemeParams& params) {
  const std::string text = SerializeParams(params);
  return Sha256({reinterpret_cast<const std::uint8_t*>(text.data()),
                 text.size()});
}

// ---- blobs ----

std::size_t BlobSize(const SchemeParams& params, BlobKind kind) {
  return kBlobHeader + PayloadSize(params, kind) + 32;
}

BlobKind PeekBlobKind(std::span<const std::uint8_t> blob) {
  CheckMagic(blob, kBlobMagic, kBlobHeader + 32, "HNN blob");
  const std::uint8_t kind = blob[4];
  Require(kind <= 4, ErrorCode::kFormat, "unknown blob kind");
  return static_cast<BlobKind>(kind);
}

Bytes SerializePublicKey(const PublicKey& pk) {
  Writer w = BeginBlob(*pk.params, BlobKind::kPublicKey);
  w.Element(pk.b);
  w.Element(pk.a);
  return FinishBlob(w);
}

Bytes SerializeSecretKey(const SecretKey& sk) {
  Writer w = BeginBlob(*sk.params, BlobKind::kSecretKey);
  w.Element(sk.s);
  return FinishBlob(w);
}

Bytes SerializeRelinKey(const RelinKey& evk) {
  Writer w = BeginBlob(*evk.params, BlobKind::kRelinKey);
  w.U32(static_cast<std::uint32_t>(evk.components.size()));
  for (const RelinKey::Component& c : evk.components) {
    w.U32(static_cast<std::uint32_t>(c.prime));
    w.U32(static_cast<std::uint32_t>(c.digit));
    w.Element(c.b);
    w.Element(c.a);
  }
  return FinishBlob(w);
}

Bytes SerializeCiphertext(const Ciphertext& ct) {
  Require(ct.size() == 2, ErrorCode::kInvalidArgument,
          "only two-part ciphertexts are serialized; relinearize first");
  Writer w = BeginBlob(*ct.params(), BlobKind::kCiphertext);
  w.U32(2);
  w.F64(ct.scale());
  w.F64(ct.noise_bits());
  w.F64(ct.magnitude());
  w.Element(ct.part(0));
  w.Element(ct.part(1));
  return FinishBlob(w);
}

Bytes SerializePlaintext(const Plaintext& pt, const SchemeParams& params) {
  Writer w = BeginBlob(params, BlobKind::kPlaintext);
  w.F64(pt.scale());
  w.F64(pt.bound());
  w.Element(pt.poly());
  return FinishBlob(w);
}

PublicKey ParsePublicKey(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params) {
  Reader r = OpenBlob(blob, BlobKind::kPublicKey, *params);
  PublicKey pk{params, r.Element(params->ring()), r.Element(params->ring())};
  return pk;
}

SecretKey ParseSecretKey(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params) {
  Reader r = OpenBlob(blob, BlobKind::kSecretKey, *params);
  return SecretKey{params, r.Element(params->ring())};
}

RelinKey ParseRelinKey(std::span<const std::uint8_t> blob,
                       const SchemeParamsPtr& params) {
  Reader r = OpenBlob(blob, BlobKind::kRelinKey, *params);
  RelinKey evk{params, {}};
  const std::uint32_t count = r.U32();
  for (int j = 0; j <= params->max_level(); ++j) {
    for (int t = 0; t < GadgetDigits(*params, j); ++t) {
      Require(evk.components.size() < count, ErrorCode::kFormat,
              "relinearization key too short");
      RelinKey::Component c;
      c.prime = static_cast<int>(r.U32());
      c.digit = static_cast<int>(r.U32());
      Require(c.prime == j && c.digit == t, ErrorCode::kFormat,
              "relinearization key components out of order");
      c.b = r.Element(params->ring());
      c.a = r.Element(params->ring());
      evk.components.push_back(std::move(c));
    }
  }
  Require(evk.components.size() == count, ErrorCode::kFormat,
          "relinearization key component count mismatch");
  return evk;
}

Ciphertext ParseCiphertext(std::span<const std::uint8_t> blob,
                           const SchemeParamsPtr& params) {
  Reader r = OpenBlob(blob, BlobKind::kCiphertext, *params);
  Require(r.U32() == 2, ErrorCode::kFormat, "ciphertext must have two parts");
  const double scale = r.F64();
  const double noise = r.F64();
  const double magnitude = r.F64();
  Require(std::isfinite(scale) && scale > 0, ErrorCode::kFormat,
          "bad ciphertext scale");
  Require(!std::isnan(noise) && !(std::isinf(noise) && noise > 0), ErrorCode::kFormat,
          "bad noise estimate");
  Require(std::isfinite(magnitude) && magnitude >= 0, ErrorCode::kFormat,
          "bad magnitude bound");
  std::vector<RingElement> parts;
  parts.push_back(r.Element(params->ring()));
  parts.push_back(r.Element(params->ring()));
  Require(parts[0].level() == parts[1].level() &&
              parts[0].domain() == Domain::kEvaluation &&
              parts[1].domain() == Domain::kEvaluation,
          ErrorCode::kFormat, "inconsistent ciphertext parts");
  return Ciphertext(params, std::move(parts), scale, noise, magnitude);
}

Plaintext ParsePlaintext(std::span<const std::uint8_t> blob,
                         const SchemeParamsPtr& params) {
  Reader r = OpenBlob(blob, BlobKind::kPlaintext, *params);
  const double scale = r.F64();
  const double bound = r.F64();
  Require(std::isfinite(scale) && scale > 0, ErrorCode::kFormat,
          "bad plaintext scale");
  Require(!std::isnan(bound) && bound >= 0, ErrorCode::kFormat,
          "bad plaintext bound");
  return Plaintext(r.Element(params->ring()), scale, bound);
}

// ---- bundles ----

Bytes SerializeBundle(const CiphertextBundle& bundle) {
  Require(!bundle.ciphertexts.empty(), ErrorCode::kInvalidArgument,
          "empty ciphertext bundle");
  const SchemeParamsPtr& params = bundle.ciphertexts[0].params();
  Require(bundle.slots_used <= params->encoder().slot_count(),
          ErrorCode::kInvalidArgument, "slot occupancy exceeds N/2");
  Writer w;
  w.Raw(kBundleMagic, 4);
  w.U16(kBundleVersion);
  w.Raw(ParamsHash(*params));
  w.U32(static_cast<std::uint32_t>(bundle.ciphertexts.size()));
  w.U32(static_cast<std::uint32_t>(bundle.slots_used));
  for (const Ciphertext& ct : bundle.ciphertexts) {
    CheckParams(ct.params(), params);
    const Bytes blob = SerializeCiphertext(ct);
    w.U64(blob.size());
    w.Raw(blob);
  }
  return FinishBlob(w);
}

CiphertextBundle ParseBundle(std::span<const std::uint8_t> bytes,
                             const SchemeParamsPtr& params) {
  CheckMagic(bytes, kBundleMagic, 4 + 2 + 32 + 8 + 32, "HNN ciphertext bundle");
  CheckChecksum(bytes);
  Reader r(bytes.first(bytes.size() - 32));
  r.Raw(4);
  Require(r.U16() == kBundleVersion, ErrorCode::kFormat,
          "unsupported bundle version");
  CheckParamsHash(r.Raw(32), *params);
  CiphertextBundle out;
  const std::uint32_t count = r.U32();
  out.slots_used = r.U32();
  Require(out.slots_used <= params->encoder().slot_count(), ErrorCode::kFormat,
          "slot occupancy exceeds N/2");
  const std::size_t blob_size = BlobSize(*params, BlobKind::kCiphertext);
  Require(r.remaining() == count * (8 + blob_size), ErrorCode::kFormat,
          "bundle size does not match its manifest");
  for (std::uint32_t i = 0; i < count; ++i) {
    Require(r.U64() == blob_size, ErrorCode::kFormat, "bad blob length");
    out.ciphertexts.push_back(ParseCiphertext(r.Raw(blob_size), params));
  }
  return out;
}

}  // namespace hnn
