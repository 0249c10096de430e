// Copyright 2026 The axedp Authors
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

#include "testing/generators.h"

#include <cstdlib>
#include <filesystem>

#include <unistd.h>

namespace axedp::test {

std::vector<std::int64_t> Gen::Levels(std::size_t length,
                                      std::int64_t max_step,
                                      std::int64_t max_initial) {
  std::vector<std::int64_t> out;
  out.reserve(length);
  if (length == 0) return out;
  std::int64_t level = Int(-max_initial, max_initial);
  out.push_back(level);
  for (std::size_t i = 1; i < length; ++i) {
    if (!Coin(0.15)) level += Int(-max_step, max_step);
    out.push_back(level);
  }
  return out;
}

std::vector<double> Gen::Probabilities(std::size_t length) {
  std::vector<double> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (Coin(0.2)) {
      out.push_back(static_cast<double>(Int(0, 10)) / 10.0);
    } else {
      out.push_back(Real(0.0, 1.0));
    }
  }
  return out;
}

std::string ScratchDir(const std::string& name) {
  namespace fs = std::filesystem;
  const char* root = std::getenv("AXEDP_TEST_TMPDIR");
  fs::path base = root != nullptr && *root != '\0'
                      ? fs::path(root)
                      : fs::temp_directory_path() / "axedp_tests";
  fs::path dir = base / (name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace axedp::test
