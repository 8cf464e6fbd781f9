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
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "smartgen/scene.hpp"

namespace smartgen {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

enum class SkillCategory {
  Counting,
  Arithmetic,
  Logic,
  Algebra,
  SpatialReasoning,
  PatternFinding,
  PathFinding,
  Measurement,
};

inline constexpr std::array<SkillCategory, 8> kAllCategories = {
    SkillCategory::Counting,         SkillCategory::Arithmetic,     SkillCategory::Logic,
    SkillCategory::Algebra,          SkillCategory::SpatialReasoning, SkillCategory::PatternFinding,
    SkillCategory::PathFinding,      SkillCategory::Measurement,
};

std::string_view to_string(SkillCategory category);
SkillCategory parse_category(std::string_view name);

inline constexpr std::array<char, 5> kOptionLetters = {'A', 'B', 'C', 'D', 'E'};
inline constexpr int kNumOptions = 5;

std::string option_letter(int index);
// -1 when `text` is not one of A..E.
int option_index(std::string_view text);

// Integer answers are carried as int64; option labels and words as strings.
using AnswerValue = std::variant<std::int64_t, std::string>;

enum class AnswerKind { Integer, OptionLabel, Word };

std::string_view to_string(AnswerKind kind);

struct AnswerType {
  AnswerKind kind = AnswerKind::Integer;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::string unit;  // Integer only; rendered after the value ("18 km")

  static AnswerType integer(std::int64_t lo, std::int64_t hi, std::string unit = {});
  static AnswerType option_label() { return {AnswerKind::OptionLabel, 0, 0, {}}; }
  static AnswerType word() { return {AnswerKind::Word, 0, 0, {}}; }

  // Kind matches and, for Integer, the value lies in [lo, hi].
  bool admits(const AnswerValue& value) const;

  bool operator==(const AnswerType&) const = default;
};

std::string render_value(const AnswerValue& value);
std::string render_answer(const AnswerValue& value, const AnswerType& type);

enum class Family {
  Containment,
  RoadGrid,
  PathCount,
  FenceJump,
  BoardRowCol,
  StickStack,
  DiagramOp,
  ShelfOrder,
  Cipher,
  HolePunch,
  WordProblem,
};

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

struct RootPuzzleSpec {
  int root_id = 0;
  SkillCategory category = SkillCategory::Counting;
  Family family = Family::Containment;
  AnswerType answer_type;
  json param_space = json::object();
  bool needs_image = true;

  bool operator==(const RootPuzzleSpec&) const = default;
};

// Immutable generated tuple <image, question, options, answer>. The only way
// to build one is `create`, which checks every instance invariant.
class PuzzleInstance {
 public:
  static PuzzleInstance create(const RootPuzzleSpec& spec, int instance_id, std::uint64_t seed,
                               Scene scene, std::string question,
                               std::array<std::string, 5> options, int answer_index,
                               AnswerValue answer_value, json config);

  int root_id() const { return root_id_; }
  int instance_id() const { return instance_id_; }
  std::uint64_t seed() const { return seed_; }
  SkillCategory category() const { return category_; }
  const AnswerType& answer_type() const { return answer_type_; }
  bool needs_image() const { return needs_image_; }
  const Scene& scene() const { return scene_; }
  const std::string& question() const { return question_; }
  const std::array<std::string, 5>& options() const { return options_; }
  int answer_index() const { return answer_index_; }
  const AnswerValue& answer_value() const { return answer_value_; }
  // Sampled family configuration; input of the independent oracle.
  const json& config() const { return config_; }

  bool operator==(const PuzzleInstance&) const = default;

 private:
  PuzzleInstance() = default;

  int root_id_ = 0;
  int instance_id_ = 0;
  std::uint64_t seed_ = 0;
  SkillCategory category_ = SkillCategory::Counting;
  AnswerType answer_type_;
  bool needs_image_ = true;
  Scene scene_;
  std::string question_;
  std::array<std::string, 5> options_;
  int answer_index_ = 0;
  AnswerValue answer_value_;
  json config_;
};

class FamilyGenerator;

struct GeneratorHandle {
  const FamilyGenerator* generator = nullptr;
  const RootPuzzleSpec* spec = nullptr;
  const json& param_space() const { return spec->param_space; }
};

// Root puzzles keyed by id. Built once, read-only afterwards.
class Registry {
 public:
  // Throws PreconditionError on a duplicate root id.
  void add(RootPuzzleSpec spec, std::shared_ptr<const FamilyGenerator> generator);

  // Throws LookupError("unknown root puzzle <id>").
  GeneratorHandle resolve(int root_id) const;
  const RootPuzzleSpec& spec(int root_id) const;
  bool contains(int root_id) const { return entries_.count(root_id) != 0; }

  std::vector<int> ids() const;
  std::vector<RootPuzzleSpec> specs() const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    RootPuzzleSpec spec;
    std::shared_ptr<const FamilyGenerator> generator;
  };
  std::map<int, Entry> entries_;
};

inline GeneratorHandle resolve_generator(const Registry& registry, int root_id) {
  return registry.resolve(root_id);
}

// JSON forms used by the manifest and the Python bindings.
json answer_to_json(const AnswerValue& value);
AnswerValue answer_from_json(const json& j);
ordered_json spec_to_json(const RootPuzzleSpec& spec);
RootPuzzleSpec spec_from_json(const json& j);

// Skill category of each of the 101 reference root puzzle ids.
SkillCategory root_category(int root_id);

}  // namespace smartgen
