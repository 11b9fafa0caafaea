/* Copyright 2026 The svac Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "svac/frame.hpp"

namespace svac::testing {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("svac_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline Frame random_frame(std::mt19937_64& rng, int h, int w, std::int64_t index = 0) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(h) * w * 3);
  for (auto& b : data) b = static_cast<std::uint8_t>(byte(rng));
  return Frame(h, w, std::move(data), index);
}

inline Frame constant_frame(int h, int w, std::uint8_t value, std::int64_t index = 0) {
  return Frame(h, w, std::vector<std::uint8_t>(static_cast<std::size_t>(h) * w * 3, value), index);
}

inline FrameSequence indexed_sequence(std::size_t count, int h = 2, int w = 2) {
  std::vector<Frame> frames;
  for (std::size_t t = 0; t < count; ++t) {
    frames.push_back(constant_frame(h, w, static_cast<std::uint8_t>(t % 256),
                                    static_cast<std::int64_t>(t)));
  }
  return FrameSequence(std::move(frames));
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace svac::testing
