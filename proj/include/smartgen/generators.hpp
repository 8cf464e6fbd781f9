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
#include <memory>
#include <string>
#include <vector>

#include "smartgen/core.hpp"
#include "smartgen/dataset.hpp"
#include "smartgen/options.hpp"
#include "smartgen/rng.hpp"
#include "smartgen/scene.hpp"
#include "smartgen/solvers.hpp"
#include "smartgen/textgen.hpp"

namespace smartgen {

inline constexpr int kDefaultRetryBudget = 1000;
inline constexpr int kDefaultInstancesPerRoot = 2000;

// One sampled puzzle before options are assembled.
struct Draft {
  json config;  // everything the oracle needs, and nothing it does not
  AnswerValue answer;
  Scene scene;
  std::string question;
  OptionPolicy policy;
};

class FamilyGenerator {
 public:
  virtual ~FamilyGenerator() = default;
  virtual Family family() const = 0;
  // One attempt. Throws DegeneracyError (or a subclass) to ask for a resample.
  virtual Draft sample(const RootPuzzleSpec& spec, Rng& rng) const = 0;
  // Independent brute-force answer for a stored config.
  virtual AnswerValue oracle(const json& config) const = 0;
};

std::shared_ptr<const FamilyGenerator> make_generator(Family family);

// Eleven roots, ids 1..11, one per family, covering all eight categories.
Registry default_registry();

// Rejection-samples until a draft passes every check; throws GenerationError
// carrying root id and seed once `budget` attempts fail.
PuzzleInstance generate_instance(const RootPuzzleSpec& spec, const FamilyGenerator& generator,
                                 std::uint64_t seed, int instance_id = 1,
                                 int budget = kDefaultRetryBudget);

// Seed derived from (global_seed, root_id, instance_id).
PuzzleInstance generate_instance(const Registry& registry, std::uint64_t global_seed, int root_id,
                                 int instance_id, int budget = kDefaultRetryBudget);

struct OracleCheck {
  bool ok = false;
  std::string expected;  // rendered oracle answer
  std::string detail;    // why it failed
};

// Recomputes the answer from `config` and compares it with the embedded
// answer value and the option at answer_index.
OracleCheck check_against_oracle(const FamilyGenerator& generator, const RootPuzzleSpec& spec,
                                 const json& config, const AnswerValue& answer_value,
                                 const std::array<std::string, 5>& options, int answer_index);

struct Mismatch {
  int root_id = 0;
  int instance_id = 0;
  std::string detail;
};

// Runs check_against_oracle on every record, spread over `threads` workers
// (0 = hardware concurrency). Mismatches come back in manifest order.
std::vector<Mismatch> verify_dataset(const Dataset& dataset, unsigned threads = 0);

// ---- word problems ---------------------------------------------------------

// Question text for a word-problem config from template "<kind>.<variant>",
// with word and name slots optionally pinned.
std::string word_problem_question(const WordProblemConfig& config, const std::string& template_id,
                                  const Bindings& pins, Rng& rng);

json word_problem_to_json(const WordProblemConfig& config);
WordProblemConfig word_problem_from_json(const json& j);

// The eleven image-free puzzles with their reference wording, options and
// answers, as root specs (ids 7, 9, 30, 38, 47, 71, 88, 89, 90, 91, 93) and
// instances.
struct ReferenceWordProblem {
  RootPuzzleSpec spec;
  PuzzleInstance instance;
  WordProblemConfig config;
};
std::vector<ReferenceWordProblem> reference_word_problems();

}  // namespace smartgen
