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

#include <sys/stat.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "hnn/error.hpp"
#include "hnn/io.hpp"

namespace hnn {

Bytes ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.is_open(), ErrorCode::kIo,
          "cannot open " + path.string() + ": " + std::strerror(errno));
  Bytes out((std::istreambuf_iterator<char>(in)),
            std::istreambuf_iterator<char>());
  Require(!in.bad(), ErrorCode::kIo, "read failed for " + path.string());
  return out;
}

std::string ReadFileText(const std::filesystem::path& path) {
  const Bytes b = ReadFileBytes(path);
  return std::string(b.begin(), b.end());
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> data, bool private_file) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    Require(out.is_open(), ErrorCode::kIo,
            "cannot write " + path.string() + ": " + std::strerror(errno));
    if (private_file) {
      Require(::chmod(tmp.c_str(), S_IRUSR | S_IWUSR) == 0, ErrorCode::kIo,
              "cannot restrict permissions on " + path.string());
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    out.flush();
    Require(out.good(), ErrorCode::kIo, "write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  Require(!ec, ErrorCode::kIo,
          "cannot move " + tmp.string() + " into place: " + ec.message());
}

void WriteFileText(const std::filesystem::path& path, std::string_view text,
                   bool private_file) {
  WriteFileBytes(path,
                 {reinterpret_cast<const std::uint8_t*>(text.data()),
                  text.size()},
                 private_file);
}

}  // namespace hnn
