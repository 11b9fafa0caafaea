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

#include "svac/token_ops.hpp"

#include <fstream>
#include <sstream>

namespace svac {

std::size_t keep_count(std::size_t token_count, double keep_ratio) {
  return static_cast<std::size_t>(std::llround(keep_ratio * static_cast<double>(token_count)));
}

std::vector<double> read_score_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kMissingPath, path.string());
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());

  std::vector<double> scores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    double v = 0.0;
    std::string rest;
    if (!(ss >> v) || (ss >> rest)) {
      throw Error(ErrorCode::kMalformedHeader,
                  path.string() + ":" + std::to_string(line_no) + ": not a decimal value");
    }
    scores.push_back(v);
  }
  return scores;
}

}  // namespace svac
