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

/* C interface to the HNN library. Every object is an opaque handle released
 * with its matching *_free function (NULL is accepted). Functions return an
 * hnn_status; on failure hnn_last_error() describes the most recent error on
 * the calling thread. Handles are not safe for concurrent mutation. */
#ifndef HNN_HNN_H_
#define HNN_HNN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HNN_BUILDING_LIBRARY)
#define HNN_API __attribute__((visibility("default")))
#else
#define HNN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hnn_status {
  HNN_OK = 0,
  HNN_E_INVALID_ARGUMENT = 1,
  HNN_E_DOMAIN_MISMATCH = 2,
  HNN_E_PARAMS_MISMATCH = 3,
  HNN_E_LEVEL_MISMATCH = 4,
  HNN_E_SCALE_MISMATCH = 5,
  HNN_E_LEVEL_EXHAUSTED = 6,
  HNN_E_BUDGET_EXCEEDED = 7,
  HNN_E_INSECURE_PARAMS = 8,
  HNN_E_NO_SECURE_PARAMS = 9,
  HNN_E_FORMAT = 10,
  HNN_E_CHECKSUM = 11,
  HNN_E_IO = 12,
  HNN_E_NUMERICAL = 13,
  HNN_E_INTERNAL = 14
} hnn_status;

/* Process exit code for a status: 0 ok, 2 usage, 3 format or checksum,
 * 4 crypto state (level, scale, noise budget), 5 I/O, 1 anything else. */
HNN_API int hnn_status_exit_code(hnn_status status);
HNN_API const char* hnn_status_name(hnn_status status);
/* Thread-local; valid until the next failing call on this thread. */
HNN_API const char* hnn_last_error(void);
HNN_API const char* hnn_version(void);

typedef struct hnn_params hnn_params;
typedef struct hnn_public_key hnn_public_key;
typedef struct hnn_secret_key hnn_secret_key;
typedef struct hnn_relin_key hnn_relin_key;
typedef struct hnn_bundle hnn_bundle;
typedef struct hnn_dataset hnn_dataset;
typedef struct hnn_model hnn_model;

/* ---- parameters ---- */

typedef struct hnn_params_info {
  int lambda;
  size_t degree;
  size_t slots;
  int levels; /* rescale levels available to a fresh ciphertext */
  int delta_bits;
  double total_modulus_bits;
  double noise_budget_bits;
  int allow_insecure;
  size_t ciphertext_bytes; /* serialized size of any ciphertext */
} hnn_params_info;

HNN_API hnn_status hnn_params_generate(int lambda, size_t slots, int depth,
                                       int delta_bits, int allow_insecure,
                                       hnn_params** out);
HNN_API hnn_status hnn_params_load(const char* path, hnn_params** out);
HNN_API hnn_status hnn_params_save(const hnn_params* params, const char* path);
HNN_API hnn_status hnn_params_get_info(const hnn_params* params,
                                       hnn_params_info* out);
/* Lower-case hex SHA-256 of the canonical parameter text; 65 bytes. */
HNN_API hnn_status hnn_params_hash(const hnn_params* params, char out[65]);
HNN_API void hnn_params_free(hnn_params* params);

/* ---- keys ---- */

/* With use_seed != 0 the keys are a deterministic function of seed;
 * otherwise the operating system supplies the randomness. */
HNN_API hnn_status hnn_keygen(const hnn_params* params, uint64_t seed,
                              int use_seed, hnn_public_key** pk,
                              hnn_secret_key** sk, hnn_relin_key** evk);
HNN_API hnn_status hnn_public_key_save(const hnn_public_key* pk,
                                       const char* path);
/* Written with mode 0600. */
HNN_API hnn_status hnn_secret_key_save(const hnn_secret_key* sk,
                                       const char* path);
HNN_API hnn_status hnn_relin_key_save(const hnn_relin_key* evk,
                                      const char* path);
HNN_API hnn_status hnn_public_key_load(const hnn_params* params,
                                       const char* path, hnn_public_key** out);
HNN_API hnn_status hnn_secret_key_load(const hnn_params* params,
                                       const char* path, hnn_secret_key** out);
HNN_API hnn_status hnn_relin_key_load(const hnn_params* params,
                                      const char* path, hnn_relin_key** out);
HNN_API void hnn_public_key_free(hnn_public_key* pk);
HNN_API void hnn_secret_key_free(hnn_secret_key* sk);
HNN_API void hnn_relin_key_free(hnn_relin_key* evk);

/* ---- datasets ---- */

HNN_API hnn_status hnn_dataset_create(const double* features,
                                      const int* labels, size_t samples,
                                      size_t dim, int classes,
                                      hnn_dataset** out);
/* Two Gaussian blobs, labels alternating 0, 1. */
HNN_API hnn_status hnn_dataset_two_blobs(size_t samples, size_t dim,
                                         double separation, uint64_t seed,
                                         hnn_dataset** out);
/* Label in the last column when has_labels != 0; a header line is skipped. */
HNN_API hnn_status hnn_dataset_load_csv(const char* path, int has_labels,
                                        hnn_dataset** out);
HNN_API hnn_status hnn_dataset_save_csv(const hnn_dataset* data,
                                        const char* path);
HNN_API size_t hnn_dataset_size(const hnn_dataset* data);
HNN_API size_t hnn_dataset_dim(const hnn_dataset* data);
/* Copies size() labels into out. */
HNN_API hnn_status hnn_dataset_labels(const hnn_dataset* data, int* out,
                                      size_t capacity);
HNN_API void hnn_dataset_free(hnn_dataset* data);

/* ---- ciphertext bundles ---- */

/* Feature j of every sample goes to ciphertext j, sample i in slot i. */
HNN_API hnn_status hnn_encrypt_dataset(const hnn_public_key* pk,
                                       const hnn_dataset* data, uint64_t seed,
                                       int use_seed, hnn_bundle** out);
HNN_API hnn_status hnn_bundle_load(const hnn_params* params, const char* path,
                                   hnn_bundle** out);
HNN_API hnn_status hnn_bundle_save(const hnn_bundle* bundle, const char* path);
HNN_API size_t hnn_bundle_count(const hnn_bundle* bundle);
HNN_API size_t hnn_bundle_slots_used(const hnn_bundle* bundle);
/* Decrypts ciphertext `index` into out[0 .. slots_used). */
HNN_API hnn_status hnn_bundle_decrypt(const hnn_secret_key* sk,
                                      const hnn_bundle* bundle, size_t index,
                                      double* out, size_t capacity);
HNN_API void hnn_bundle_free(hnn_bundle* bundle);

/* ---- models ---- */

typedef enum hnn_optimizer { HNN_OPT_SGD = 0, HNN_OPT_ADAMW = 1 } hnn_optimizer;

typedef struct hnn_train_config {
  double learning_rate;
  size_t batch_size;
  int epochs;
  double noise_std; /* feature noise injected during training */
  double range_penalty_weight;
  double radius; /* logit range the encrypted head supports */
  double weight_decay;
  hnn_optimizer optimizer;
  double temperature;
  uint64_t seed;
} hnn_train_config;

typedef struct hnn_calibration_report {
  double temperature;
  double nll_before;
  double nll_after;
  int iterations;
  double domain_floor; /* see hnn_calibrate */
} hnn_calibration_report;

HNN_API void hnn_train_config_default(hnn_train_config* cfg);
/* Empirical std of slot errors over `trials` encrypt/decrypt round trips
 * under fresh keys; a matched value for hnn_train_config.noise_std. */
HNN_API hnn_status hnn_measure_noise_std(const hnn_params* params, int trials,
                                         uint64_t seed, double* out);
/* Trains a linear layer under a soft-argmax head from zero weights.
 * final_loss may be NULL. */
HNN_API hnn_status hnn_train(const hnn_dataset* data,
                             const hnn_train_config* cfg, hnn_model** out,
                             double* final_loss);
/* Fits the head temperature on `validation` in place. The temperature never
 * drops below max(min_temperature, domain_floor), where domain_floor is the
 * smallest value keeping every centred validation logit divided by the
 * temperature inside the head radius. Below it the encrypted head would
 * leave its approximation domain. */
HNN_API hnn_status hnn_calibrate(hnn_model* model,
                                 const hnn_dataset* validation,
                                 double min_temperature,
                                 hnn_calibration_report* report);
HNN_API hnn_status hnn_model_load(const char* path, hnn_model** out);
HNN_API hnn_status hnn_model_save(const hnn_model* model, const char* path);
HNN_API double hnn_model_temperature(const hnn_model* model);
HNN_API int hnn_model_classes(const hnn_model* model);
/* Plaintext soft-argmax scores in [1, classes]; out holds size() values. */
HNN_API hnn_status hnn_model_predict(const hnn_model* model,
                                     const hnn_dataset* data, double* scores,
                                     size_t capacity);
/* Encrypted forward pass: one soft-argmax ciphertext. */
HNN_API hnn_status hnn_infer(const hnn_model* model, const hnn_relin_key* evk,
                             const hnn_bundle* features, hnn_bundle** out);
/* 0-based class for a soft-argmax score. */
HNN_API int hnn_class_from_score(double score, int classes);
HNN_API void hnn_model_free(hnn_model* model);

/* ---- metrics ---- */

typedef struct hnn_metrics {
  double accuracy;
  double precision;
  double recall;
  double f1;
  double auroc; /* NaN unless there are two classes */
} hnn_metrics;

/* Scores: higher means class 1. scores may be NULL, leaving auroc NaN. */
HNN_API hnn_status hnn_compute_metrics(const int* predicted, const int* labels,
                                       const double* scores, size_t count,
                                       int classes, hnn_metrics* out);

/* ---- benchmarks ---- */

typedef struct hnn_bench_report {
  int iterations;
  int warmup;
  double median_seconds;
  double p95_seconds;
} hnn_bench_report;

/* kernel is "ntt", "mult" or "pipeline"; iterations must be >= 100. */
HNN_API hnn_status hnn_bench(const hnn_params* params, const char* kernel,
                             int iterations, int warmup,
                             hnn_bench_report* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* HNN_HNN_H_ */
