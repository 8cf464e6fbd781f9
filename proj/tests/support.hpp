// Copyright 2026 The smartgen Authors
// SPDX-License-Identifier: Apache-2.0
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

#pragma once

#include <filesystem>
#include <string>

#include "smartgen/generators.hpp"

namespace smartgen::testing {

// Ids 1..n with their reference categories; families cycle through the eleven
// default generators so every root can actually be generated.
inline Registry full_registry(int n = 101) {
  const Registry base = default_registry();
  Registry out;
  for (int id = 1; id <= n; ++id) {
    RootPuzzleSpec spec = base.spec((id - 1) % 11 + 1);
    spec.root_id = id;
    spec.category = root_category(id);
    const auto family = spec.family;
    out.add(std::move(spec), make_generator(family));
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("smartgen_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace smartgen::testing
