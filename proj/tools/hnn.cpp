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

// hnn: command-line front end. Talks to the library through the C API only.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hnn/hnn.h"

namespace {

constexpr char kBanner[] =
    "hnn: encrypted inference for linear models with a soft-argmax head.\n"
    "\n"
    "  !! SECRET KEY WARNING !!\n"
    "  keygen writes sk.bin (mode 0600). It decrypts everything encrypted\n"
    "  under pk.bin. Keep it on the client. The inference server needs only\n"
    "  params, pk.bin, evk.bin and the model file.\n";

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Params = Handle<hnn_params, hnn_params_free>;
using PublicKey = Handle<hnn_public_key, hnn_public_key_free>;
using SecretKey = Handle<hnn_secret_key, hnn_secret_key_free>;
using RelinKey = Handle<hnn_relin_key, hnn_relin_key_free>;
using Bundle = Handle<hnn_bundle, hnn_bundle_free>;
using Dataset = Handle<hnn_dataset, hnn_dataset_free>;
using Model = Handle<hnn_model, hnn_model_free>;

// Failure raised by the tool itself rather than the library.
struct CliError {
  hnn_status status;
  std::string message;
};

void Check(hnn_status s) {
  if (s != HNN_OK) throw CliError{s, hnn_last_error()};
}

template <typename H, typename F>
H Make(F&& f) {
  typename H::pointer raw = nullptr;
  Check(f(&raw));
  return H(raw);
}

Params LoadParams(const std::string& path) {
  return Make<Params>(
      [&](hnn_params** out) { return hnn_params_load(path.c_str(), out); });
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CliError{HNN_E_IO, "cannot open " + path + " for writing"};
  out.precision(17);
  return out;
}

void CloseOutput(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw CliError{HNN_E_IO, "write to " + path + " failed"};
}

// ---- commands ----

struct ParamsArgs {
  int lambda = 128;
  std::size_t slots = 512;
  int depth = 18;
  int delta_bits = 40;
  bool allow_insecure = false;
  std::string out;
};

void PrintInfo(const hnn_params* p) {
  hnn_params_info info;
  Check(hnn_params_get_info(p, &info));
  char hash[65];
  Check(hnn_params_hash(p, hash));
  std::printf(
      "lambda=%d N=%zu slots=%zu levels=%d delta_bits=%d log2(Q)=%.1f "
      "noise_budget_bits=%.1f ciphertext_bytes=%zu%s\nparams_hash=%s\n",
      info.lambda, info.degree, info.slots, info.levels, info.delta_bits,
      info.total_modulus_bits, info.noise_budget_bits, info.ciphertext_bytes,
      info.allow_insecure ? " INSECURE" : "", hash);
}

void RunParams(const ParamsArgs& a) {
  Params p = Make<Params>([&](hnn_params** out) {
    return hnn_params_generate(a.lambda, a.slots, a.depth, a.delta_bits,
                               a.allow_insecure, out);
  });
  Check(hnn_params_save(p.get(), a.out.c_str()));
  PrintInfo(p.get());
}

struct KeygenArgs {
  std::string params, out_dir;
  std::optional<std::uint64_t> seed;
};

void RunKeygen(const KeygenArgs& a) {
  Params p = LoadParams(a.params);
  hnn_public_key* pk = nullptr;
  hnn_secret_key* sk = nullptr;
  hnn_relin_key* evk = nullptr;
  Check(hnn_keygen(p.get(), a.seed.value_or(0), a.seed.has_value(), &pk, &sk,
                   &evk));
  PublicKey pk_h(pk);
  SecretKey sk_h(sk);
  RelinKey evk_h(evk);
  const std::string dir = a.out_dir.empty() ? "." : a.out_dir;
  Check(hnn_public_key_save(pk, (dir + "/pk.bin").c_str()));
  Check(hnn_relin_key_save(evk, (dir + "/evk.bin").c_str()));
  Check(hnn_secret_key_save(sk, (dir + "/sk.bin").c_str()));
  std::printf("wrote %s/pk.bin %s/evk.bin %s/sk.bin (secret, mode 0600)\n",
              dir.c_str(), dir.c_str(), dir.c_str());
}

struct EncryptArgs {
  std::string params, pk, in, out;
  std::optional<std::uint64_t> seed;
  bool no_labels = false;
};

void RunEncrypt(const EncryptArgs& a) {
  Params p = LoadParams(a.params);
  PublicKey pk = Make<PublicKey>([&](hnn_public_key** out) {
    return hnn_public_key_load(p.get(), a.pk.c_str(), out);
  });
  Dataset d = Make<Dataset>([&](hnn_dataset** out) {
    return hnn_dataset_load_csv(a.in.c_str(), !a.no_labels, out);
  });
  Bundle b = Make<Bundle>([&](hnn_bundle** out) {
    return hnn_encrypt_dataset(pk.get(), d.get(), a.seed.value_or(0),
                               a.seed.has_value(), out);
  });
  Check(hnn_bundle_save(b.get(), a.out.c_str()));
  std::printf("encrypted %zu samples x %zu features\n",
              hnn_dataset_size(d.get()), hnn_dataset_dim(d.get()));
}

struct DecryptArgs {
  std::string params, sk, in, out;
  int classes = 2;
  bool features = false;
};

void RunDecrypt(const DecryptArgs& a) {
  Params p = LoadParams(a.params);
  SecretKey sk = Make<SecretKey>([&](hnn_secret_key** out) {
    return hnn_secret_key_load(p.get(), a.sk.c_str(), out);
  });
  Bundle b = Make<Bundle>([&](hnn_bundle** out) {
    return hnn_bundle_load(p.get(), a.in.c_str(), out);
  });
  const std::size_t n = hnn_bundle_slots_used(b.get());
  const std::size_t count = hnn_bundle_count(b.get());
  std::vector<std::vector<double>> columns(count, std::vector<double>(n));
  for (std::size_t j = 0; j < count; ++j) {
    Check(hnn_bundle_decrypt(sk.get(), b.get(), j, columns[j].data(), n));
  }
  std::ofstream out = OpenOutput(a.out);
  if (a.features) {
    for (std::size_t j = 0; j < count; ++j) out << (j ? ",f" : "f") << j;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < count; ++j) out << (j ? "," : "") << columns[j][i];
      out << '\n';
    }
  } else {
    if (count != 1) {
      throw CliError{HNN_E_INVALID_ARGUMENT,
                     "bundle holds " + std::to_string(count) +
                         " ciphertexts; score output needs exactly one "
                         "(use --features for encrypted inputs)"};
    }
    out << "sample,score,class\n";
    for (std::size_t i = 0; i < n; ++i) {
      const int c = hnn_class_from_score(columns[0][i], a.classes);
      if (c < 0) Check(HNN_E_INVALID_ARGUMENT);
      out << i << ',' << columns[0][i] << ',' << c << '\n';
    }
  }
  CloseOutput(out, a.out);
}

struct InferArgs {
  std::string params, evk, model, in, out;
};

void RunInfer(const InferArgs& a) {
  Params p = LoadParams(a.params);
  RelinKey evk = Make<RelinKey>([&](hnn_relin_key** out) {
    return hnn_relin_key_load(p.get(), a.evk.c_str(), out);
  });
  Model m = Make<Model>(
      [&](hnn_model** out) { return hnn_model_load(a.model.c_str(), out); });
  Bundle in = Make<Bundle>([&](hnn_bundle** out) {
    return hnn_bundle_load(p.get(), a.in.c_str(), out);
  });
  Bundle result = Make<Bundle>([&](hnn_bundle** out) {
    return hnn_infer(m.get(), evk.get(), in.get(), out);
  });
  Check(hnn_bundle_save(result.get(), a.out.c_str()));
  std::printf("inferred %zu samples\n", hnn_bundle_slots_used(result.get()));
}

struct TrainArgs {
  std::string data, out, optimizer = "sgd", params;
  hnn_train_config cfg;
  bool noise_given = false;
};

void RunTrain(TrainArgs a) {
  if (a.optimizer == "sgd") {
    a.cfg.optimizer = HNN_OPT_SGD;
  } else if (a.optimizer == "adamw") {
    a.cfg.optimizer = HNN_OPT_ADAMW;
  } else {
    throw CliError{HNN_E_INVALID_ARGUMENT, "unknown optimizer " + a.optimizer};
  }
  if (!a.params.empty() && !a.noise_given) {
    Params p = LoadParams(a.params);
    Check(hnn_measure_noise_std(p.get(), 100, a.cfg.seed, &a.cfg.noise_std));
    std::printf("measured encryption noise std %.3g\n", a.cfg.noise_std);
  }
  Dataset d = Make<Dataset>([&](hnn_dataset** out) {
    return hnn_dataset_load_csv(a.data.c_str(), 1, out);
  });
  double loss = 0;
  Model m = Make<Model>([&](hnn_model** out) {
    return hnn_train(d.get(), &a.cfg, out, &loss);
  });
  Check(hnn_model_save(m.get(), a.out.c_str()));
  std::printf("trained on %zu samples, final epoch loss %.6g\n",
              hnn_dataset_size(d.get()), loss);
}

struct CalibrateArgs {
  std::string model, data, out;
  double min_temperature = 0;
};

void RunCalibrate(const CalibrateArgs& a) {
  Model m = Make<Model>(
      [&](hnn_model** out) { return hnn_model_load(a.model.c_str(), out); });
  Dataset d = Make<Dataset>([&](hnn_dataset** out) {
    return hnn_dataset_load_csv(a.data.c_str(), 1, out);
  });
  hnn_calibration_report r;
  Check(hnn_calibrate(m.get(), d.get(), a.min_temperature, &r));
  Check(hnn_model_save(m.get(), a.out.c_str()));
  std::printf(
      "temperature=%.9g nll_before=%.6g nll_after=%.6g iterations=%d "
      "domain_floor=%.6g\n",
      r.temperature, r.nll_before, r.nll_after, r.iterations, r.domain_floor);
}

struct MetricsArgs {
  std::string data, pred, model;
};

// Reads the sample,score,class file written by decrypt.
void ReadPredictions(const std::string& path, std::size_t n,
                     std::vector<double>& scores, std::vector<int>& classes) {
  std::ifstream in(path);
  if (!in) throw CliError{HNN_E_IO, "cannot read " + path};
  std::string line;
  std::getline(in, line);
  if (line != "sample,score,class") {
    throw CliError{HNN_E_FORMAT, path + ": expected a decrypt score file"};
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t i;
    double s;
    int c;
    char c1, c2;
    if (!(row >> i >> c1 >> s >> c2 >> c) || c1 != ',' || c2 != ',' ||
        i != scores.size()) {
      throw CliError{HNN_E_FORMAT, path + ": bad row '" + line + "'"};
    }
    scores.push_back(s);
    classes.push_back(c);
  }
  if (scores.size() != n) {
    throw CliError{HNN_E_FORMAT, path + " has " + std::to_string(scores.size()) +
                                     " rows, dataset has " + std::to_string(n)};
  }
}

void RunMetrics(const MetricsArgs& a) {
  if (a.pred.empty() == a.model.empty()) {
    throw CliError{HNN_E_INVALID_ARGUMENT,
                   "give exactly one of --pred and --model"};
  }
  Dataset d = Make<Dataset>([&](hnn_dataset** out) {
    return hnn_dataset_load_csv(a.data.c_str(), 1, out);
  });
  const std::size_t n = hnn_dataset_size(d.get());
  std::vector<int> labels(n), predicted;
  Check(hnn_dataset_labels(d.get(), labels.data(), n));
  std::vector<double> scores;
  int classes = 2;
  if (!a.pred.empty()) {
    ReadPredictions(a.pred, n, scores, predicted);
    for (int l : labels) classes = std::max(classes, l + 1);
    for (int c : predicted) classes = std::max(classes, c + 1);
  } else {
    Model m = Make<Model>(
        [&](hnn_model** out) { return hnn_model_load(a.model.c_str(), out); });
    classes = hnn_model_classes(m.get());
    scores.resize(n);
    Check(hnn_model_predict(m.get(), d.get(), scores.data(), n));
    for (double s : scores) predicted.push_back(hnn_class_from_score(s, classes));
  }
  hnn_metrics r;
  Check(hnn_compute_metrics(predicted.data(), labels.data(), scores.data(), n,
                            classes, &r));
  std::printf("samples=%zu accuracy=%.6f precision=%.6f recall=%.6f f1=%.6f "
              "auroc=%.6f\n",
              n, r.accuracy, r.precision, r.recall, r.f1, r.auroc);
}

struct DatasetArgs {
  std::size_t samples = 1000, dim = 64;
  double separation = 3.0;
  std::uint64_t seed = 1;
  std::string out;
};

void RunDataset(const DatasetArgs& a) {
  Dataset d = Make<Dataset>([&](hnn_dataset** out) {
    return hnn_dataset_two_blobs(a.samples, a.dim, a.separation, a.seed, out);
  });
  Check(hnn_dataset_save_csv(d.get(), a.out.c_str()));
  std::printf("wrote %zu samples x %zu features\n", a.samples, a.dim);
}

struct BenchArgs {
  std::string params, kernel;
  int iterations = 100, warmup = 10;
};

void RunBench(const BenchArgs& a) {
  Params p = LoadParams(a.params);
  hnn_bench_report r;
  Check(hnn_bench(p.get(), a.kernel.c_str(), a.iterations, a.warmup, &r));
  std::printf("kernel=%s iterations=%d warmup=%d median_ms=%.4f p95_ms=%.4f\n",
              a.kernel.c_str(), r.iterations, r.warmup,
              r.median_seconds * 1e3, r.p95_seconds * 1e3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{kBanner, "hnn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hnn_version());
  std::function<void()> action;

  ParamsArgs pa;
  auto* params = app.add_subcommand("params", "Generate a parameter file");
  params->add_option("--lambda", pa.lambda, "Security level")
      ->check(CLI::IsMember({128, 192, 256}))
      ->capture_default_str();
  params->add_option("--slots", pa.slots, "Samples per ciphertext")
      ->capture_default_str();
  params->add_option("--depth", pa.depth, "Multiplicative depth")
      ->capture_default_str();
  params->add_option("--delta-bits", pa.delta_bits, "log2 of the scale")
      ->capture_default_str();
  params->add_flag("--allow-insecure", pa.allow_insecure,
                   "Skip the security table (testing only)");
  params->add_option("-o,--out", pa.out, "Output file")->required();
  params->callback([&] { action = [&] { RunParams(pa); }; });

  KeygenArgs ka;
  auto* keygen = app.add_subcommand(
      "keygen", "Generate pk.bin, evk.bin and the SECRET key sk.bin");
  keygen->add_option("-p,--params", ka.params, "Parameter file")->required();
  keygen->add_option("-o,--out-dir", ka.out_dir, "Output directory");
  keygen->add_option("--seed", ka.seed,
                     "Deterministic keys (testing only; defaults to OS "
                     "randomness)");
  keygen->callback([&] { action = [&] { RunKeygen(ka); }; });

  EncryptArgs ea;
  auto* encrypt = app.add_subcommand(
      "encrypt", "Encrypt a CSV column-wise into a ciphertext bundle");
  encrypt->add_option("-p,--params", ea.params)->required();
  encrypt->add_option("--pk", ea.pk, "Public key")->required();
  encrypt->add_option("-i,--in", ea.in, "Input CSV")->required();
  encrypt->add_option("-o,--out", ea.out, "Output bundle")->required();
  encrypt->add_option("--seed", ea.seed, "Deterministic encryption");
  encrypt->add_flag("--no-labels", ea.no_labels,
                    "CSV has no label column");
  encrypt->callback([&] { action = [&] { RunEncrypt(ea); }; });

  DecryptArgs da;
  auto* decrypt = app.add_subcommand(
      "decrypt", "Decrypt a bundle to CSV (sample,score,class)");
  decrypt->add_option("-p,--params", da.params)->required();
  decrypt->add_option("--sk", da.sk, "Secret key")->required();
  decrypt->add_option("-i,--in", da.in, "Input bundle")->required();
  decrypt->add_option("-o,--out", da.out, "Output CSV")->required();
  decrypt->add_option("--classes", da.classes, "Number of classes")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  decrypt->add_flag("--features", da.features,
                    "Write every ciphertext as a feature column");
  decrypt->callback([&] { action = [&] { RunDecrypt(da); }; });

  InferArgs ia;
  auto* infer = app.add_subcommand(
      "infer", "Evaluate the model on encrypted features (server side)");
  infer->add_option("-p,--params", ia.params)->required();
  infer->add_option("--evk", ia.evk, "Relinearization key")->required();
  infer->add_option("-m,--model", ia.model, "Model file")->required();
  infer->add_option("-i,--in", ia.in, "Feature bundle")->required();
  infer->add_option("-o,--out", ia.out, "Score bundle")->required();
  infer->callback([&] { action = [&] { RunInfer(ia); }; });

  TrainArgs ta;
  hnn_train_config_default(&ta.cfg);
  auto* train = app.add_subcommand("train", "Train a linear model");
  train->add_option("-d,--data", ta.data, "Training CSV")->required();
  train->add_option("-o,--out", ta.out, "Model file")->required();
  train->add_option("--epochs", ta.cfg.epochs)->capture_default_str();
  train->add_option("--lr", ta.cfg.learning_rate)->capture_default_str();
  train->add_option("--batch", ta.cfg.batch_size)->capture_default_str();
  auto* noise = train->add_option(
      "--noise-std", ta.cfg.noise_std,
      "Feature noise injected while training (default: measured from "
      "--params, else 0)");
  train->add_option("-p,--params", ta.params,
                    "Measure the injected noise under these parameters");
  train->add_option("--range-penalty", ta.cfg.range_penalty_weight)
      ->capture_default_str();
  train->add_option("--radius", ta.cfg.radius,
                    "Logit range of the encrypted head")
      ->capture_default_str();
  train->add_option("--weight-decay", ta.cfg.weight_decay)
      ->capture_default_str();
  train->add_option("--optimizer", ta.optimizer)
      ->check(CLI::IsMember({"sgd", "adamw"}))
      ->capture_default_str();
  train->add_option("--temperature", ta.cfg.temperature)
      ->capture_default_str();
  train->add_option("--seed", ta.cfg.seed)->capture_default_str();
  train->callback([&] {
    ta.noise_given = noise->count() > 0;
    action = [&] { RunTrain(ta); };
  });

  CalibrateArgs ca;
  auto* calibrate = app.add_subcommand(
      "calibrate", "Fit the head temperature on validation data");
  calibrate->add_option("-m,--model", ca.model)->required();
  calibrate->add_option("-d,--data", ca.data, "Validation CSV")->required();
  calibrate->add_option("-o,--out", ca.out, "Calibrated model")->required();
  calibrate->add_option("--min-temperature", ca.min_temperature)
      ->capture_default_str();
  calibrate->callback([&] { action = [&] { RunCalibrate(ca); }; });

  MetricsArgs ma;
  auto* metrics = app.add_subcommand(
      "metrics", "Score decrypted predictions or a plaintext model");
  metrics->add_option("-d,--data", ma.data, "Labelled CSV")->required();
  metrics->add_option("--pred", ma.pred, "Output of decrypt");
  metrics->add_option("-m,--model", ma.model, "Plaintext model");
  metrics->callback([&] { action = [&] { RunMetrics(ma); }; });

  DatasetArgs sa;
  auto* dataset = app.add_subcommand("dataset", "Write a synthetic dataset");
  dataset->add_option("--samples", sa.samples)->capture_default_str();
  dataset->add_option("--dim", sa.dim)->capture_default_str();
  dataset->add_option("--separation", sa.separation)->capture_default_str();
  dataset->add_option("--seed", sa.seed)->capture_default_str();
  dataset->add_option("-o,--out", sa.out)->required();
  dataset->callback([&] { action = [&] { RunDataset(sa); }; });

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time a kernel");
  bench->add_option("-p,--params", ba.params)->required();
  bench->add_option("-k,--kernel", ba.kernel, "ntt, mult or pipeline")
      ->required();
  bench->add_option("--iterations", ba.iterations, "At least 100")
      ->capture_default_str();
  bench->add_option("--warmup", ba.warmup)->capture_default_str();
  bench->callback([&] { action = [&] { RunBench(ba); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hnn_status_exit_code(HNN_E_INVALID_ARGUMENT);
  }

  try {
    action();
  } catch (const CliError& e) {
    std::fprintf(stderr, "hnn: %s: %s\n", hnn_status_name(e.status),
                 e.message.c_str());
    return hnn_status_exit_code(e.status);
  }
  return 0;
}
