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

#include "hnn/hnn.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "hnn/bench.hpp"
#include "hnn/error.hpp"
#include "hnn/io.hpp"
#include "hnn/neural.hpp"

struct hnn_params {
  hnn::SchemeParamsPtr p;
};
struct hnn_public_key {
  hnn::PublicKey k;
};
struct hnn_secret_key {
  hnn::SecretKey k;
};
struct hnn_relin_key {
  hnn::RelinKey k;
};
struct hnn_bundle {
  hnn::CiphertextBundle b;
};
struct hnn_dataset {
  hnn::Dataset d;
};
struct hnn_model {
  hnn::ModelFile f;
};

namespace {

using hnn::ErrorCode;

thread_local std::string last_error;

hnn_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return HNN_E_INVALID_ARGUMENT;
    case ErrorCode::kDomainMismatch: return HNN_E_DOMAIN_MISMATCH;
    case ErrorCode::kParamsMismatch: return HNN_E_PARAMS_MISMATCH;
    case ErrorCode::kLevelMismatch: return HNN_E_LEVEL_MISMATCH;
    case ErrorCode::kScaleMismatch: return HNN_E_SCALE_MISMATCH;
    case ErrorCode::kLevelExhausted: return HNN_E_LEVEL_EXHAUSTED;
    case ErrorCode::kBudgetExceeded: return HNN_E_BUDGET_EXCEEDED;
    case ErrorCode::kInsecureParams: return HNN_E_INSECURE_PARAMS;
    case ErrorCode::kNoSecureParams: return HNN_E_NO_SECURE_PARAMS;
    case ErrorCode::kFormat: return HNN_E_FORMAT;
    case ErrorCode::kChecksum: return HNN_E_CHECKSUM;
    case ErrorCode::kIo: return HNN_E_IO;
    case ErrorCode::kNumerical: return HNN_E_NUMERICAL;
  }
  return HNN_E_INTERNAL;
}

std::optional<ErrorCode> CodeOf(hnn_status s) {
  if (s <= HNN_OK || s >= HNN_E_INTERNAL) return std::nullopt;
  return static_cast<ErrorCode>(s - 1);
}

template <typename F>
hnn_status Guard(F&& body) {
  try {
    body();
    return HNN_OK;
  } catch (const hnn::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return HNN_E_INTERNAL;
}

template <typename T>
const T& Need(const T* p, const char* what) {
  hnn::Require(p != nullptr, ErrorCode::kInvalidArgument,
               std::string(what) + " is null");
  return *p;
}

template <typename T>
T* NeedPtr(T* p, const char* what) {
  hnn::Require(p != nullptr, ErrorCode::kInvalidArgument,
               std::string(what) + " is null");
  return p;
}

template <typename T>
T** NeedOut(T** out) {
  hnn::Require(out != nullptr, ErrorCode::kInvalidArgument,
               "output pointer is null");
  *out = nullptr;
  return out;
}

void NeedCapacity(size_t capacity, size_t want) {
  hnn::Require(capacity >= want, ErrorCode::kInvalidArgument,
               "buffer holds " + std::to_string(capacity) + " values, need " +
                   std::to_string(want));
}

hnn::Prng MakePrng(uint64_t seed, int use_seed) {
  return use_seed ? hnn::Prng(seed) : hnn::Prng::FromEntropy();
}

std::string ConfigText(const hnn::TrainConfig& cfg, double temperature) {
  return cfg.Describe() + " temperature=" + std::to_string(temperature);
}

}  // namespace

extern "C" {

int hnn_status_exit_code(hnn_status status) {
  if (status == HNN_OK) return 0;
  const auto code = CodeOf(status);
  if (!code) return 1;
  switch (hnn::ClassOf(*code)) {
    case hnn::ErrorClass::kUsage: return 2;
    case hnn::ErrorClass::kFormat: return 3;
    case hnn::ErrorClass::kCryptoState: return 4;
    case hnn::ErrorClass::kIo: return 5;
    case hnn::ErrorClass::kInternal: return 1;
  }
  return 1;
}

const char* hnn_status_name(hnn_status status) {
  switch (status) {
    case HNN_OK: return "ok";
    case HNN_E_INVALID_ARGUMENT: return "invalid argument";
    case HNN_E_DOMAIN_MISMATCH: return "domain mismatch";
    case HNN_E_PARAMS_MISMATCH: return "params mismatch";
    case HNN_E_LEVEL_MISMATCH: return "level mismatch";
    case HNN_E_SCALE_MISMATCH: return "scale mismatch";
    case HNN_E_LEVEL_EXHAUSTED: return "level exhausted";
    case HNN_E_BUDGET_EXCEEDED: return "noise budget exceeded";
    case HNN_E_INSECURE_PARAMS: return "insecure parameters";
    case HNN_E_NO_SECURE_PARAMS: return "no secure parameters";
    case HNN_E_FORMAT: return "format error";
    case HNN_E_CHECKSUM: return "checksum mismatch";
    case HNN_E_IO: return "i/o error";
    case HNN_E_NUMERICAL: return "numerical error";
    case HNN_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hnn_last_error(void) { return last_error.c_str(); }

const char* hnn_version(void) { return "0.1.0"; }

// ---- parameters ----

hnn_status hnn_params_generate(int lambda, size_t slots, int depth,
                               int delta_bits, int allow_insecure,
                               hnn_params** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_params{
        hnn::ParamGen(lambda, slots, depth, allow_insecure != 0, delta_bits)};
  });
}

hnn_status hnn_params_load(const char* path, hnn_params** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_params{
        hnn::ParseParams(hnn::ReadFileText(NeedPtr(path, "path")))};
  });
}

hnn_status hnn_params_save(const hnn_params* params, const char* path) {
  return Guard([&] {
    hnn::WriteFileText(NeedPtr(path, "path"),
                       hnn::SerializeParams(*Need(params, "params").p));
  });
}

hnn_status hnn_params_get_info(const hnn_params* params, hnn_params_info* out) {
  return Guard([&] {
    const hnn::SchemeParams& p = *Need(params, "params").p;
    Need(out, "info");
    out->lambda = p.lambda();
    out->degree = p.degree();
    out->slots = p.slots();
    out->levels = p.max_level();
    out->delta_bits = p.delta_bits();
    out->total_modulus_bits = p.total_modulus_bits();
    out->noise_budget_bits = p.noise_budget_bits();
    out->allow_insecure = p.allow_insecure() ? 1 : 0;
    out->ciphertext_bytes = hnn::BlobSize(p, hnn::BlobKind::kCiphertext);
  });
}

hnn_status hnn_params_hash(const hnn_params* params, char out[65]) {
  return Guard([&] {
    const std::string hex =
        hnn::HexDigest(hnn::ParamsHash(*Need(params, "params").p));
    std::memcpy(NeedPtr(out, "out"), hex.c_str(), hex.size() + 1);
  });
}

void hnn_params_free(hnn_params* params) { delete params; }

// ---- keys ----

hnn_status hnn_keygen(const hnn_params* params, uint64_t seed, int use_seed,
                      hnn_public_key** pk, hnn_secret_key** sk,
                      hnn_relin_key** evk) {
  return Guard([&] {
    NeedOut(pk);
    NeedOut(sk);
    NeedOut(evk);
    hnn::Prng prng = MakePrng(seed, use_seed);
    hnn::KeyMaterial keys = hnn::KeyGen(Need(params, "params").p, prng);
    *pk = new hnn_public_key{std::move(keys.pk)};
    *sk = new hnn_secret_key{std::move(keys.sk)};
    *evk = new hnn_relin_key{std::move(keys.evk)};
  });
}

hnn_status hnn_public_key_save(const hnn_public_key* pk, const char* path) {
  return Guard([&] {
    hnn::WriteFileBytes(NeedPtr(path, "path"),
                        hnn::SerializePublicKey(Need(pk, "public key").k));
  });
}

hnn_status hnn_secret_key_save(const hnn_secret_key* sk, const char* path) {
  return Guard([&] {
    hnn::WriteFileBytes(NeedPtr(path, "path"),
                        hnn::SerializeSecretKey(Need(sk, "secret key").k),
                        /*private_file=*/true);
  });
}

hnn_status hnn_relin_key_save(const hnn_relin_key* evk, const char* path) {
  return Guard([&] {
    hnn::WriteFileBytes(NeedPtr(path, "path"),
                        hnn::SerializeRelinKey(Need(evk, "relin key").k));
  });
}

hnn_status hnn_public_key_load(const hnn_params* params, const char* path,
                               hnn_public_key** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_public_key{hnn::ParsePublicKey(
        hnn::ReadFileBytes(NeedPtr(path, "path")), Need(params, "params").p)};
  });
}

hnn_status hnn_secret_key_load(const hnn_params* params, const char* path,
                               hnn_secret_key** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_secret_key{hnn::ParseSecretKey(
        hnn::ReadFileBytes(NeedPtr(path, "path")), Need(params, "params").p)};
  });
}

hnn_status hnn_relin_key_load(const hnn_params* params, const char* path,
                              hnn_relin_key** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_relin_key{hnn::ParseRelinKey(
        hnn::ReadFileBytes(NeedPtr(path, "path")), Need(params, "params").p)};
  });
}

void hnn_public_key_free(hnn_public_key* pk) { delete pk; }
void hnn_secret_key_free(hnn_secret_key* sk) { delete sk; }
void hnn_relin_key_free(hnn_relin_key* evk) { delete evk; }

// ---- datasets ----

hnn_status hnn_dataset_create(const double* features, const int* labels,
                              size_t samples, size_t dim, int classes,
                              hnn_dataset** out) {
  return Guard([&] {
    NeedOut(out);
    hnn::Dataset d;
    d.d_in = dim;
    d.classes = classes;
    if (samples > 0) {
      NeedPtr(features, "features");
      NeedPtr(labels, "labels");
      d.features.assign(features, features + samples * dim);
      d.labels.assign(labels, labels + samples);
    }
    d.Validate();
    *out = new hnn_dataset{std::move(d)};
  });
}

hnn_status hnn_dataset_two_blobs(size_t samples, size_t dim,
                                 double separation, uint64_t seed,
                                 hnn_dataset** out) {
  return Guard([&] {
    NeedOut(out);
    hnn::Prng prng(seed);
    *out = new hnn_dataset{hnn::MakeTwoBlobs(samples, dim, separation, prng)};
  });
}

hnn_status hnn_dataset_load_csv(const char* path, int has_labels,
                                hnn_dataset** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_dataset{hnn::ParseCsv(
        hnn::ReadFileText(NeedPtr(path, "path")), has_labels != 0)};
  });
}

hnn_status hnn_dataset_save_csv(const hnn_dataset* data, const char* path) {
  return Guard([&] {
    hnn::WriteFileText(NeedPtr(path, "path"),
                       hnn::FormatCsv(Need(data, "dataset").d));
  });
}

size_t hnn_dataset_size(const hnn_dataset* data) {
  return data ? data->d.size() : 0;
}

size_t hnn_dataset_dim(const hnn_dataset* data) {
  return data ? data->d.d_in : 0;
}

hnn_status hnn_dataset_labels(const hnn_dataset* data, int* out,
                              size_t capacity) {
  return Guard([&] {
    const hnn::Dataset& d = Need(data, "dataset").d;
    NeedCapacity(capacity, d.size());
    if (d.size() > 0) {
      std::memcpy(NeedPtr(out, "out"), d.labels.data(), d.size() * sizeof(int));
    }
  });
}

void hnn_dataset_free(hnn_dataset* data) { delete data; }

// ---- bundles ----

hnn_status hnn_encrypt_dataset(const hnn_public_key* pk,
                               const hnn_dataset* data, uint64_t seed,
                               int use_seed, hnn_bundle** out) {
  return Guard([&] {
    NeedOut(out);
    const hnn::Dataset& d = Need(data, "dataset").d;
    hnn::Prng prng = MakePrng(seed, use_seed);
    hnn::CiphertextBundle b;
    b.ciphertexts = hnn::EncryptColumns(Need(pk, "public key").k, d, prng);
    b.slots_used = d.size();
    *out = new hnn_bundle{std::move(b)};
  });
}

hnn_status hnn_bundle_load(const hnn_params* params, const char* path,
                           hnn_bundle** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_bundle{hnn::ParseBundle(
        hnn::ReadFileBytes(NeedPtr(path, "path")), Need(params, "params").p)};
  });
}

hnn_status hnn_bundle_save(const hnn_bundle* bundle, const char* path) {
  return Guard([&] {
    hnn::WriteFileBytes(NeedPtr(path, "path"),
                        hnn::SerializeBundle(Need(bundle, "bundle").b));
  });
}

size_t hnn_bundle_count(const hnn_bundle* bundle) {
  return bundle ? bundle->b.ciphertexts.size() : 0;
}

size_t hnn_bundle_slots_used(const hnn_bundle* bundle) {
  return bundle ? bundle->b.slots_used : 0;
}

hnn_status hnn_bundle_decrypt(const hnn_secret_key* sk,
                              const hnn_bundle* bundle, size_t index,
                              double* out, size_t capacity) {
  return Guard([&] {
    const hnn::CiphertextBundle& b = Need(bundle, "bundle").b;
    hnn::Require(index < b.ciphertexts.size(), ErrorCode::kInvalidArgument,
                 "ciphertext index " + std::to_string(index) +
                     " out of range");
    NeedCapacity(capacity, b.slots_used);
    const std::vector<double> slots =
        hnn::DecryptSlots(Need(sk, "secret key").k, b.ciphertexts[index]);
    for (size_t i = 0; i < b.slots_used; ++i) NeedPtr(out, "out")[i] = slots[i];
  });
}

void hnn_bundle_free(hnn_bundle* bundle) { delete bundle; }

// ---- models ----

void hnn_train_config_default(hnn_train_config* cfg) {
  if (cfg == nullptr) return;
  const hnn::TrainConfig d;
  cfg->learning_rate = d.learning_rate;
  cfg->batch_size = d.batch_size;
  cfg->epochs = d.epochs;
  cfg->noise_std = d.noise_std;
  cfg->range_penalty_weight = d.range_penalty_weight;
  cfg->radius = d.radius;
  cfg->weight_decay = d.weight_decay;
  cfg->optimizer = HNN_OPT_SGD;
  cfg->temperature = 1.0;
  cfg->seed = 1;
}

hnn_status hnn_measure_noise_std(const hnn_params* params, int trials,
                                 uint64_t seed, double* out) {
  return Guard([&] {
    const hnn::SchemeParamsPtr& p = Need(params, "params").p;
    NeedPtr(out, "out");
    hnn::Prng prng(seed);
    const hnn::KeyMaterial keys = hnn::KeyGen(p, prng);
    *out = hnn::MeasureNoiseStd(p, keys, prng, trials);
  });
}

hnn_status hnn_train(const hnn_dataset* data, const hnn_train_config* cfg,
                     hnn_model** out, double* final_loss) {
  return Guard([&] {
    NeedOut(out);
    const hnn::Dataset& d = Need(data, "dataset").d;
    const hnn_train_config& c = Need(cfg, "config");
    hnn::TrainConfig tc;
    tc.learning_rate = c.learning_rate;
    tc.batch_size = c.batch_size;
    tc.epochs = c.epochs;
    tc.noise_std = c.noise_std;
    tc.range_penalty_weight = c.range_penalty_weight;
    tc.radius = c.radius;
    tc.weight_decay = c.weight_decay;
    hnn::Require(c.optimizer == HNN_OPT_SGD || c.optimizer == HNN_OPT_ADAMW,
                 ErrorCode::kInvalidArgument, "unknown optimizer");
    tc.optimizer = c.optimizer == HNN_OPT_ADAMW ? hnn::Optimizer::kAdamW
                                                : hnn::Optimizer::kSgd;
    hnn::ModelFile f;
    f.head.radius = c.radius;
    f.head.set_temperature(c.temperature);
    hnn::Prng prng(c.seed);
    hnn::TrainResult r = hnn::TrainNoiseInjection(
        hnn::LinearModel::Zeros(d.d_in, d.classes), f.head, d, tc, prng);
    f.model = std::move(r.model);
    f.seed = c.seed;
    const std::string text = ConfigText(tc, c.temperature);
    f.config_hash = hnn::HexDigest(hnn::Sha256(
        {reinterpret_cast<const uint8_t*>(text.data()), text.size()}));
    if (final_loss != nullptr) {
      *final_loss = r.loss_history.empty() ? std::nan("")
                                           : r.loss_history.back();
    }
    *out = new hnn_model{std::move(f)};
  });
}

hnn_status hnn_calibrate(hnn_model* model, const hnn_dataset* validation,
                         double min_temperature,
                         hnn_calibration_report* report) {
  return Guard([&] {
    hnn::Require(model != nullptr, ErrorCode::kInvalidArgument,
                 "model is null");
    const hnn::Dataset& d = Need(validation, "dataset").d;
    hnn::Require(min_temperature >= 0, ErrorCode::kInvalidArgument,
                 "negative temperature floor");
    const double floor = hnn::DomainTemperatureFloor(model->f.model, d,
                                                     model->f.head.radius);
    hnn::CalibrationConfig cfg;
    cfg.min_temperature = std::max(min_temperature, floor);
    const hnn::CalibrationResult r =
        hnn::CalibrateTemperature(model->f.model, model->f.head, d, cfg);
    if (report != nullptr) {
      report->temperature = r.temperature;
      report->nll_before = r.nll_before;
      report->nll_after = r.nll_after;
      report->iterations = r.iterations;
      report->domain_floor = floor;
    }
  });
}

hnn_status hnn_model_load(const char* path, hnn_model** out) {
  return Guard([&] {
    NeedOut(out);
    *out = new hnn_model{
        hnn::ParseModel(hnn::ReadFileText(NeedPtr(path, "path")))};
  });
}

hnn_status hnn_model_save(const hnn_model* model, const char* path) {
  return Guard([&] {
    hnn::WriteFileText(NeedPtr(path, "path"),
                       hnn::SerializeModel(Need(model, "model").f));
  });
}

double hnn_model_temperature(const hnn_model* model) {
  return model ? model->f.head.temperature() : std::nan("");
}

int hnn_model_classes(const hnn_model* model) {
  return model ? model->f.model.classes : 0;
}

hnn_status hnn_model_predict(const hnn_model* model, const hnn_dataset* data,
                             double* scores, size_t capacity) {
  return Guard([&] {
    const hnn::ModelFile& f = Need(model, "model").f;
    const hnn::Dataset& d = Need(data, "dataset").d;
    hnn::Require(d.d_in == f.model.d_in, ErrorCode::kInvalidArgument,
                 "dataset has " + std::to_string(d.d_in) +
                     " features, model expects " +
                     std::to_string(f.model.d_in));
    NeedCapacity(capacity, d.size());
    for (size_t i = 0; i < d.size(); ++i) {
      NeedPtr(scores, "scores")[i] =
          hnn::ForwardPlain(f.model, f.head, d.row(i)).soft_argmax;
    }
  });
}

hnn_status hnn_infer(const hnn_model* model, const hnn_relin_key* evk,
                     const hnn_bundle* features, hnn_bundle** out) {
  return Guard([&] {
    NeedOut(out);
    const hnn::ModelFile& f = Need(model, "model").f;
    const hnn::CiphertextBundle& in = Need(features, "bundle").b;
    hnn::CiphertextBundle result;
    result.ciphertexts.push_back(hnn::ForwardEncrypted(
        f.model, f.head, in.ciphertexts, Need(evk, "relin key").k));
    result.slots_used = in.slots_used;
    *out = new hnn_bundle{std::move(result)};
  });
}

int hnn_class_from_score(double score, int classes) {
  try {
    return hnn::ClassFromSoftArgmax(score, classes);
  } catch (const std::exception& e) {
    last_error = e.what();
    return -1;
  }
}

void hnn_model_free(hnn_model* model) { delete model; }

// ---- metrics ----

hnn_status hnn_compute_metrics(const int* predicted, const int* labels,
                               const double* scores, size_t count,
                               int classes, hnn_metrics* out) {
  return Guard([&] {
    Need(out, "metrics");
    hnn::Require(count > 0, ErrorCode::kInvalidArgument, "no samples");
    std::span<const double> s;
    if (scores != nullptr && classes == 2) s = {scores, count};
    const hnn::Metrics m = hnn::ComputeMetrics(
        {NeedPtr(predicted, "predicted"), count},
        {NeedPtr(labels, "labels"), count}, s, classes);
    out->accuracy = m.accuracy;
    out->precision = m.precision;
    out->recall = m.recall;
    out->f1 = m.f1;
    out->auroc = m.auroc;
  });
}

// ---- benchmarks ----

hnn_status hnn_bench(const hnn_params* params, const char* kernel,
                     int iterations, int warmup, hnn_bench_report* out) {
  return Guard([&] {
    Need(out, "report");
    const hnn::BenchReport r =
        hnn::RunBench(Need(params, "params").p,
                      hnn::ParseBenchKernel(NeedPtr(kernel, "kernel")),
                      iterations, warmup);
    out->iterations = r.iterations;
    out->warmup = r.warmup;
    out->median_seconds = r.median_seconds;
    out->p95_seconds = r.p95_seconds;
  });
}

}  // extern "C"
