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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smartgen/core.hpp"
#include "smartgen/rng.hpp"

namespace smartgen {

// Distractors are integers within max(3, ceil(0.5 * |answer|)) of the answer,
// clamped to [min_value, max_value].
struct IntegerWindow {
  std::int64_t min_value = 0;
  std::optional<std::int64_t> max_value;
};

// Distractors come from `preferred` first; the window tops the set up when
// fewer than four usable values remain.
struct IntegerPool {
  std::vector<std::int64_t> preferred;
  IntegerWindow fallback;
};

// Options are the letters A-E drawn in the scene.
struct LabelPolicy {};

// Word answers: four decoys drawn from the pool.
struct DecoyPolicy {
  std::vector<std::string> decoys;
};

using OptionPolicy = std::variant<IntegerWindow, IntegerPool, LabelPolicy, DecoyPolicy>;

struct OptionSet {
  std::array<std::string, 5> options;
  int answer_index = 0;
  AnswerType answer_type;
};

inline constexpr int kMaxWindowWidenings = 3;

// Places the correct answer at a uniformly drawn slot. Throws DegeneracyError
// when four distinct distractors cannot be found (after three doublings of an
// integer window), PreconditionError when the answer does not fit the type.
OptionSet assemble_options(const AnswerValue& answer, const AnswerType& type,
                           const OptionPolicy& policy, Rng& rng);

}  // namespace smartgen
