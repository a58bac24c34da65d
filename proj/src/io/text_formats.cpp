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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "hnn/error.hpp"
#include "hnn/io.hpp"

namespace hnn {
namespace {

// Shortest text that reads back to the same double.
std::string Exact(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double ToDouble(std::string_view token, const char* what) {
  double v = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  Require(ec == std::errc() && ptr == end && std::isfinite(v),
          ErrorCode::kFormat,
          std::string("bad ") + what + " '" + std::string(token) + "'");
  return v;
}

template <typename T>
T ToInt(std::string_view token, const char* what) {
  T v = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  Require(ec == std::errc() && ptr == end, ErrorCode::kFormat,
          std::string("bad ") + what + " '" + std::string(token) + "'");
  return v;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Reads "key value" and checks the key.
std::string Expect(std::istringstream& in, const char* key) {
  std::string k, v;
  Require(static_cast<bool>(in >> k >> v) && k == key, ErrorCode::kFormat,
          std::string("model file: expected ") + key);
  return v;
}

}  // namespace

std::string SerializeModel(const ModelFile& file) {
  const LinearModel& m = file.model;
  m.Validate();
  std::ostringstream os;
  os << "hnn-model " << kModelVersion << "\n";
  os << "d_in " << m.d_in << "\n";
  os << "classes " << m.classes << "\n";
  os << "temperature " << Exact(file.head.temperature()) << "\n";
  os << "radius " << Exact(file.head.radius) << "\n";
  os << "seed " << file.seed << "\n";
  os << "config_hash " << (file.config_hash.empty() ? "-" : file.config_hash)
     << "\n";
  os << "W\n";
  for (std::size_t j = 0; j < m.d_in; ++j) {
    for (int c = 0; c < m.classes; ++c) {
      os << (c ? " " : "") << Exact(m.w(j, c));
    }
    os << "\n";
  }
  os << "b\n";
  for (int c = 0; c < m.classes; ++c) os << (c ? " " : "") << Exact(m.bias[c]);
  os << "\n";
  return os.str();
}

ModelFile ParseModel(std::string_view text) {
  std::istringstream in{std::string(text)};
  ModelFile f;
  Require(ToInt<int>(Expect(in, "hnn-model"), "model version") == kModelVersion,
          ErrorCode::kFormat, "unsupported model version");
  f.model.d_in = ToInt<std::size_t>(Expect(in, "d_in"), "d_in");
  f.model.classes = ToInt<int>(Expect(in, "classes"), "classes");
  Require(f.model.d_in > 0 && f.model.d_in < (1u << 20) &&
              f.model.classes >= 2 && f.model.classes < (1 << 16),
          ErrorCode::kFormat, "model shape out of range");
  const double t = ToDouble(Expect(in, "temperature"), "temperature");
  Require(t > 0, ErrorCode::kFormat, "temperature must be positive");
  f.head.set_temperature(t);
  f.head.radius = ToDouble(Expect(in, "radius"), "radius");
  Require(f.head.radius > 0, ErrorCode::kFormat, "radius must be positive");
  f.seed = ToInt<std::uint64_t>(Expect(in, "seed"), "seed");
  f.config_hash = Expect(in, "config_hash");
  if (f.config_hash == "-") f.config_hash.clear();
  std::string tag;
  Require(static_cast<bool>(in >> tag) && tag == "W", ErrorCode::kFormat,
          "model file: expected W");
  f.model.weights.resize(f.model.d_in * f.model.classes);
  for (double& w : f.model.weights) {
    std::string tok;
    Require(static_cast<bool>(in >> tok), ErrorCode::kFormat,
            "model file: too few weights");
    w = ToDouble(tok, "weight");
  }
  Require(static_cast<bool>(in >> tag) && tag == "b", ErrorCode::kFormat,
          "model file: expected b");
  f.model.bias.resize(f.model.classes);
  for (double& b : f.model.bias) {
    std::string tok;
    Require(static_cast<bool>(in >> tok), ErrorCode::kFormat,
            "model file: too few biases");
    b = ToDouble(tok, "bias");
  }
  std::string extra;
  Require(!(in >> extra), ErrorCode::kFormat, "model file: trailing data");
  f.model.Validate();
  return f;
}

Dataset ParseCsv(std::string_view text, bool has_labels) {
  Dataset d;
  d.d_in = 0;
  int max_label = -1;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const auto cells = SplitCommas(line);
    if (d.labels.empty() && d.d_in == 0) {
      // Header detection: the first cell is not a number.
      double probe;
      auto [ptr, ec] = std::from_chars(cells[0].data(),
                                       cells[0].data() + cells[0].size(), probe);
      if (ec != std::errc() && line_no == 1) continue;
    }
    const std::size_t width = cells.size() - (has_labels ? 1 : 0);
    Require(width > 0, ErrorCode::kFormat,
            "line " + std::to_string(line_no) + ": no features");
    if (d.d_in == 0) d.d_in = width;
    Require(width == d.d_in, ErrorCode::kFormat,
            "line " + std::to_string(line_no) + ": expected " +
                std::to_string(d.d_in) + " features, got " +
                std::to_string(width));
    for (std::size_t j = 0; j < width; ++j) {
      d.features.push_back(ToDouble(cells[j], "feature"));
    }
    const int label = has_labels ? ToInt<int>(cells.back(), "label") : 0;
    Require(label >= 0, ErrorCode::kFormat, "negative label");
    max_label = std::max(max_label, label);
    d.labels.push_back(label);
  }
  Require(!d.labels.empty(), ErrorCode::kFormat, "CSV has no samples");
  d.classes = std::max(2, max_label + 1);
  return d;
}

std::string FormatCsv(const Dataset& data) {
  std::string out;
  for (std::size_t j = 0; j < data.d_in; ++j) out += "f" + std::to_string(j) + ",";
  out += "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) {
      out += Exact(v);
      out += ',';
    }
    out += std::to_string(data.labels[i]);
    out += '\n';
  }
  return out;
}

}  // namespace hnn
