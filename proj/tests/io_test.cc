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

#include <gtest/gtest.h>
#include <sys/stat.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <vector>

#include "he_fixtures.hpp"
#include "hnn/error.hpp"
#include "hnn/io.hpp"

namespace hnn {
namespace {

using testing::EncryptVector;
using testing::GetWorld;
using testing::World;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidArgument;
}

// N = 8, three primes: tiny blobs for exhaustive checks.
const World& TinyWorld() { return GetWorld(128, 4, 2, true); }

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("hnn_io_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(ParamsFile, RoundTrip) {
  for (const World* w : {&TinyWorld(), &GetWorld(128, 2048, 1)}) {
    const std::string text = SerializeParams(*w->params);
    const SchemeParamsPtr back = ParseParams(text);
    EXPECT_TRUE(*back == *w->params);
    EXPECT_EQ(SerializeParams(*back), text);
    EXPECT_EQ(ParamsHash(*back), ParamsHash(*w->params));
  }
}

TEST(ParamsFile, Rejections) {
  const std::string good = SerializeParams(*TinyWorld().params);
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_EQ(CodeOf([&] { ParseParams(replace("allow_insecure 1", "allow_insecure 0")); }),
            ErrorCode::kInsecureParams);
  EXPECT_EQ(CodeOf([&] { ParseParams(replace("lambda", "lambada")); }),
            ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { ParseParams(replace("delta_bits 40", "delta_bits x")); }),
            ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { ParseParams(replace("modulus_bits 60", "modulus_bits 59")); }),
            ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { ParseParams(good + "lambda 128\n"); }),
            ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { ParseParams("version 1\n"); }), ErrorCode::kFormat);
  // Comments and blank lines are fine.
  EXPECT_TRUE(*ParseParams("\n# note\n" + good) == *TinyWorld().params);
}

TEST(Blobs, RoundTripEveryKind) {
  const World& w = TinyWorld();
  Prng prng(1);
  const Bytes pk = SerializePublicKey(w.keys.pk);
  const Bytes sk = SerializeSecretKey(w.keys.sk);
  const Bytes evk = SerializeRelinKey(w.keys.evk);
  const PublicKey pk2 = ParsePublicKey(pk, w.params);
  EXPECT_TRUE(pk2.a == w.keys.pk.a && pk2.b == w.keys.pk.b);
  EXPECT_TRUE(ParseSecretKey(sk, w.params).s == w.keys.sk.s);
  const RelinKey evk2 = ParseRelinKey(evk, w.params);
  ASSERT_EQ(evk2.components.size(), w.keys.evk.components.size());
  for (std::size_t i = 0; i < evk2.components.size(); ++i) {
    EXPECT_TRUE(evk2.components[i].a == w.keys.evk.components[i].a);
    EXPECT_TRUE(evk2.components[i].b == w.keys.evk.components[i].b);
  }
  const Ciphertext ct = EncryptVector(w, {0.5, -0.25}, prng);
  const Ciphertext ct2 = ParseCiphertext(SerializeCiphertext(ct), w.params);
  EXPECT_TRUE(ct2.part(0) == ct.part(0) && ct2.part(1) == ct.part(1));
  EXPECT_EQ(ct2.scale(), ct.scale());
  EXPECT_EQ(ct2.noise_bits(), ct.noise_bits());
  EXPECT_EQ(ct2.magnitude(), ct.magnitude());
  const Plaintext pt = w.params->encoder().Encode(std::vector<double>{1, 2}, 1024.0, 1);
  const Plaintext pt2 = ParsePlaintext(SerializePlaintext(pt, *w.params), w.params);
  EXPECT_TRUE(pt2.poly() == pt.poly());
  EXPECT_EQ(pt2.scale(), pt.scale());
  EXPECT_EQ(pt2.bound(), pt.bound());
  EXPECT_EQ(PeekBlobKind(evk), BlobKind::kRelinKey);
}

TEST(Blobs, ReloadedKeysStillWork) {
  const World& w = GetWorld(128, 2048, 1);
  Prng prng(2);
  const PublicKey pk = ParsePublicKey(SerializePublicKey(w.keys.pk), w.params);
  const SecretKey sk = ParseSecretKey(SerializeSecretKey(w.keys.sk), w.params);
  const RelinKey evk = ParseRelinKey(SerializeRelinKey(w.keys.evk), w.params);
  // b + a s is the small key error.
  RingElement e = RingMul(pk.a, sk.s);
  e.AddInPlace(pk.b);
  e.ToCoefficientInPlace();
  for (std::int64_t c : CenteredCoefficients(e)) {
    EXPECT_LT(std::llabs(c), 6 * w.params->error_stddev());
  }
  const auto v = testing::RandomVector(2048, prng);
  const auto& p = *w.params;
  const Ciphertext x =
      Encrypt(pk, p.encoder().Encode(v, p.delta(), p.max_level()), prng);
  const Ciphertext sq = Rescale(Mult(x, x, evk));
  const auto got = DecryptSlots(sk, sq);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(got[i], v[i] * v[i], 1e-4);
}

TEST(Blobs, SizesDependOnlyOnParams) {
  const World& w = GetWorld(128, 2048, 1);
  Prng prng(3);
  const Ciphertext fresh = EncryptVector(w, {0.1}, prng);
  const Ciphertext deep = Rescale(Mult(fresh, fresh, w.keys.evk));
  const Ciphertext dropped = DropLevel(fresh, 0);
  const std::size_t want = BlobSize(*w.params, BlobKind::kCiphertext);
  EXPECT_EQ(SerializeCiphertext(fresh).size(), want);
  EXPECT_EQ(SerializeCiphertext(deep).size(), want);
  EXPECT_EQ(SerializeCiphertext(dropped).size(), want);
  EXPECT_EQ(SerializePublicKey(w.keys.pk).size(),
            BlobSize(*w.params, BlobKind::kPublicKey));
  EXPECT_EQ(SerializeSecretKey(w.keys.sk).size(),
            BlobSize(*w.params, BlobKind::kSecretKey));
  EXPECT_EQ(SerializeRelinKey(w.keys.evk).size(),
            BlobSize(*w.params, BlobKind::kRelinKey));
  // Lower-level ciphertexts still decrypt after the padded round trip.
  const auto back = ParseCiphertext(SerializeCiphertext(deep), w.params);
  EXPECT_EQ(back.level(), 0);
  EXPECT_NEAR(DecryptSlots(w.keys.sk, back)[0], 0.01, 1e-4);
}

TEST(Blobs, SameSeedSameBytes) {
  const SchemeParamsPtr params = TinyWorld().params;
  Prng a(99), b(99), c(100);
  const KeyMaterial ka = KeyGen(params, a), kb = KeyGen(params, b),
                    kc = KeyGen(params, c);
  EXPECT_EQ(Sha256(SerializePublicKey(ka.pk)), Sha256(SerializePublicKey(kb.pk)));
  EXPECT_EQ(Sha256(SerializeRelinKey(ka.evk)), Sha256(SerializeRelinKey(kb.evk)));
  EXPECT_NE(Sha256(SerializePublicKey(ka.pk)), Sha256(SerializePublicKey(kc.pk)));
}

TEST(Blobs, LittleEndianLayout) {
  const World& w = TinyWorld();
  Prng prng(4);
  const Ciphertext ct = EncryptVector(w, {0.5}, prng);
  const Bytes blob = SerializeCiphertext(ct);
  EXPECT_EQ(std::string(blob.begin(), blob.begin() + 4), "HNN1");
  EXPECT_EQ(blob[4], 3);  // ciphertext
  EXPECT_EQ(blob[5], 1);  // version, low byte first
  EXPECT_EQ(blob[6], 0);
  const Digest h = ParamsHash(*w.params);
  EXPECT_TRUE(std::equal(h.begin(), h.end(), blob.begin() + 7));
  std::size_t off = 39;
  EXPECT_EQ(blob[off], 2);  // part count u32
  EXPECT_EQ(blob[off + 1] | blob[off + 2] | blob[off + 3], 0);
  off += 4;
  std::uint64_t scale_bits = 0;
  for (int i = 0; i < 8; ++i) scale_bits |= std::uint64_t{blob[off + i]} << (8 * i);
  EXPECT_EQ(std::bit_cast<double>(scale_bits), ct.scale());
  off += 24;
  EXPECT_EQ(blob[off], 1);  // evaluation domain
  off += 5;
  std::uint64_t first = 0;
  for (int i = 0; i < 8; ++i) first |= std::uint64_t{blob[off + i]} << (8 * i);
  EXPECT_EQ(first, ct.part(0).residue(0)[0]);
  const Digest sum = Sha256({blob.data(), blob.size() - 32});
  EXPECT_TRUE(std::equal(sum.begin(), sum.end(), blob.end() - 32));
}

TEST(Blobs, ParamsMismatch) {
  const World& tiny = TinyWorld();
  const World& other = GetWorld(128, 4, 3, true);
  const Bytes pk = SerializePublicKey(tiny.keys.pk);
  EXPECT_EQ(CodeOf([&] { ParsePublicKey(pk, other.params); }),
            ErrorCode::kParamsMismatch);
}

TEST(Blobs, StructuralErrors) {
  const World& w = TinyWorld();
  Prng prng(5);
  const Ciphertext ct = EncryptVector(w, {0.5}, prng);
  const Bytes blob = SerializeCiphertext(ct);
  EXPECT_EQ(CodeOf([&] { ParsePublicKey(blob, w.params); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] {
              ParseCiphertext(std::span(blob).first(blob.size() - 1), w.params);
            }),
            ErrorCode::kChecksum);
  EXPECT_EQ(CodeOf([&] { ParseCiphertext(std::span(blob).first(10), w.params); }),
            ErrorCode::kFormat);
  const Ciphertext three = Tensor(ct, ct);
  EXPECT_EQ(CodeOf([&] { SerializeCiphertext(three); }),
            ErrorCode::kInvalidArgument);
}

TEST(Blobs, FuzzSingleByteCorruption) {
  const World& w = TinyWorld();
  Prng prng(6);
  const Ciphertext ct = EncryptVector(w, {0.5, 0.25}, prng);
  const Bytes blob = SerializeCiphertext(ct);
  const Bytes key = SerializeRelinKey(w.keys.evk);
  const Bytes bundle = SerializeBundle({{ct, ct}, 2});
  int detected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Bytes& base = trial % 3 == 0 ? blob : (trial % 3 == 1 ? key : bundle);
    Bytes bad = base;
    const std::size_t pos = prng.UniformBelow(bad.size());
    bad[pos] ^= static_cast<std::uint8_t>(1 + prng.UniformBelow(255));
    try {
      if (trial % 3 == 0) {
        ParseCiphertext(bad, w.params);
      } else if (trial % 3 == 1) {
        ParseRelinKey(bad, w.params);
      } else {
        ParseBundle(bad, w.params);
      }
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kChecksum ||
                  e.code() == ErrorCode::kFormat)
          << e.what();
      ++detected;
    }
  }
  EXPECT_EQ(detected, 1000);
}

TEST(Bundles, RoundTrip) {
  const World& w = TinyWorld();
  Prng prng(7);
  CiphertextBundle b;
  for (int i = 0; i < 3; ++i) b.ciphertexts.push_back(EncryptVector(w, {0.1 * i}, prng));
  b.slots_used = 1;
  const CiphertextBundle back = ParseBundle(SerializeBundle(b), w.params);
  ASSERT_EQ(back.ciphertexts.size(), 3u);
  EXPECT_EQ(back.slots_used, 1u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(back.ciphertexts[i].part(1) == b.ciphertexts[i].part(1));
  }
  EXPECT_EQ(CodeOf([&] { ParseBundle(SerializeBundle(b), GetWorld(128, 4, 3, true).params); }),
            ErrorCode::kParamsMismatch);
  EXPECT_EQ(CodeOf([&] { ParseBundle(SerializeCiphertext(b.ciphertexts[0]), w.params); }),
            ErrorCode::kFormat);
}

TEST(ModelFile, RoundTripIsExact) {
  Prng prng(8);
  ModelFile f;
  f.model = LinearModel::Zeros(5, 3);
  for (double& v : f.model.weights) v = prng.NextNormal() / 3;
  f.model.bias = {1e-300, -0.0, 123.456};
  f.head.set_temperature(1.2345678901234567);
  f.head.radius = 2.7;
  f.seed = 42;
  f.config_hash = HexDigest(Sha256(std::vector<std::uint8_t>{1, 2, 3}));
  const std::string text = SerializeModel(f);
  const ModelFile g = ParseModel(text);
  EXPECT_EQ(g.model, f.model);
  EXPECT_EQ(g.head.temperature(), f.head.temperature());
  EXPECT_EQ(g.head.radius, f.head.radius);
  EXPECT_EQ(g.seed, 42u);
  EXPECT_EQ(g.config_hash, f.config_hash);
  EXPECT_EQ(SerializeModel(g), text);
  EXPECT_EQ(CodeOf([&] { ParseModel(text + "7\n"); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { ParseModel(text.substr(0, text.size() / 2)); }),
            ErrorCode::kFormat);
}

TEST(Csv, RoundTripAndHeader) {
  Prng prng(9);
  const Dataset d = MakeTwoBlobs(20, 3, 2.0, prng);
  const Dataset back = ParseCsv(FormatCsv(d));
  EXPECT_EQ(back.features, d.features);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.d_in, 3u);
  const Dataset h = ParseCsv("f0,f1,label\n1.5, -2,1\n0,0,0\n");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.features[1], -2.0);
  const Dataset nolabel = ParseCsv("1,2\n3,4\n", false);
  EXPECT_EQ(nolabel.d_in, 2u);
  EXPECT_EQ(CodeOf([] { ParseCsv("1,2,0\n1,0\n"); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([] { ParseCsv("1,x,0\n"); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([] { ParseCsv(""); }), ErrorCode::kFormat);
}

TEST(Files, PrivateModeAndErrors) {
  const auto path = TempPath("sk");
  WriteFileText(path, "secret", true);
  struct stat st;
  ASSERT_EQ(::stat(path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);
  EXPECT_EQ(ReadFileText(path), "secret");
  std::filesystem::remove(path);
  EXPECT_EQ(CodeOf([&] { ReadFileBytes(path); }), ErrorCode::kIo);
  EXPECT_EQ(CodeOf([] { WriteFileText("/nonexistent-dir/x", "y"); }),
            ErrorCode::kIo);
}

}  // namespace
}  // namespace hnn
