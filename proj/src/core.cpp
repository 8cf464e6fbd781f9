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

#include "smartgen/core.hpp"

#include <algorithm>

#include "smartgen/errors.hpp"

namespace smartgen {
namespace {

constexpr std::array<std::string_view, 8> kCategoryNames = {
    "counting",          "arithmetic",     "logic",        "algebra",
    "spatial_reasoning", "pattern_finding", "path_finding", "measurement",
};

constexpr std::array<std::string_view, 11> kFamilyNames = {
    "containment", "road_grid", "path_count", "fence_jump", "board_rowcol", "stick_stack",
    "diagram_op",  "shelf_order", "cipher",   "hole_punch", "word_problem",
};

}  // namespace

std::string_view to_string(SkillCategory category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

SkillCategory parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<SkillCategory>(i);
  }
  throw LookupError("unknown skill category '" + std::string(name) + "'");
}

std::string option_letter(int index) {
  if (index < 0 || index >= kNumOptions) {
    throw PreconditionError("option index out of range: " + std::to_string(index));
  }
  return std::string(1, kOptionLetters[static_cast<std::size_t>(index)]);
}

int option_index(std::string_view text) {
  if (text.size() != 1) return -1;
  for (int i = 0; i < kNumOptions; ++i) {
    if (kOptionLetters[static_cast<std::size_t>(i)] == text[0]) return i;
  }
  return -1;
}

std::string_view to_string(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::Integer: return "integer";
    case AnswerKind::OptionLabel: return "option_label";
    case AnswerKind::Word: return "word";
  }
  return "integer";
}

AnswerType AnswerType::integer(std::int64_t lo, std::int64_t hi, std::string unit) {
  if (lo > hi) throw PreconditionError("integer answer range has lo > hi");
  return {AnswerKind::Integer, lo, hi, std::move(unit)};
}

bool AnswerType::admits(const AnswerValue& value) const {
  switch (kind) {
    case AnswerKind::Integer: {
      const auto* v = std::get_if<std::int64_t>(&value);
      return v && *v >= lo && *v <= hi;
    }
    case AnswerKind::OptionLabel: {
      const auto* s = std::get_if<std::string>(&value);
      return s && option_index(*s) >= 0;
    }
    case AnswerKind::Word: {
      const auto* s = std::get_if<std::string>(&value);
      return s && !s->empty();
    }
  }
  return false;
}

std::string render_value(const AnswerValue& value) {
  if (const auto* v = std::get_if<std::int64_t>(&value)) return std::to_string(*v);
  return std::get<std::string>(value);
}

std::string render_answer(const AnswerValue& value, const AnswerType& type) {
  std::string out = render_value(value);
  if (type.kind == AnswerKind::Integer && !type.unit.empty()) out += " " + type.unit;
  return out;
}

std::string_view to_string(Family family) {
  return kFamilyNames[static_cast<std::size_t>(family)];
}

Family parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  }
  throw LookupError("unknown generator family '" + std::string(name) + "'");
}

PuzzleInstance PuzzleInstance::create(const RootPuzzleSpec& spec, int instance_id,
                                      std::uint64_t seed, Scene scene, std::string question,
                                      std::array<std::string, 5> options, int answer_index,
                                      AnswerValue answer_value, json config) {
  const std::string where = "root " + std::to_string(spec.root_id) + " instance " +
                            std::to_string(instance_id) + ": ";
  if (spec.root_id < 1) throw PreconditionError(where + "root id must be positive");
  if (instance_id < 1) throw PreconditionError(where + "instance id must be positive");
  if (answer_index < 0 || answer_index >= kNumOptions) {
    throw PreconditionError(where + "answer index out of range");
  }
  if (question.empty()) throw PreconditionError(where + "empty question");
  if (!spec.answer_type.admits(answer_value)) {
    throw PreconditionError(where + "answer value " + render_value(answer_value) +
                            " does not match the answer type");
  }
  for (int i = 0; i < kNumOptions; ++i) {
    if (options[i].empty()) throw PreconditionError(where + "empty option");
    for (int j = 0; j < i; ++j) {
      if (options[i] == options[j]) {
        throw PreconditionError(where + "duplicate option '" + options[i] + "'");
      }
    }
  }
  if (options[answer_index] != render_answer(answer_value, spec.answer_type)) {
    throw PreconditionError(where + "option " + option_letter(answer_index) +
                            " does not render the answer");
  }
  if (spec.needs_image == scene.empty()) {
    throw PreconditionError(where + (spec.needs_image ? "image puzzle with an empty scene"
                                                      : "text-only puzzle with a drawn scene"));
  }
  scene.validate();
  if (spec.answer_type.kind == AnswerKind::OptionLabel) {
    std::vector<char> labels = scene.option_labels();
    std::sort(labels.begin(), labels.end());
    if (labels != std::vector<char>(kOptionLetters.begin(), kOptionLetters.end())) {
      throw PreconditionError(where + "scene must label exactly A-E once each");
    }
  }

  PuzzleInstance p;
  p.root_id_ = spec.root_id;
  p.instance_id_ = instance_id;
  p.seed_ = seed;
  p.category_ = spec.category;
  p.answer_type_ = spec.answer_type;
  p.needs_image_ = spec.needs_image;
  p.scene_ = std::move(scene);
  p.question_ = std::move(question);
  p.options_ = std::move(options);
  p.answer_index_ = answer_index;
  p.answer_value_ = std::move(answer_value);
  p.config_ = std::move(config);
  return p;
}

void Registry::add(RootPuzzleSpec spec, std::shared_ptr<const FamilyGenerator> generator) {
  if (spec.root_id < 1) throw PreconditionError("root id must be positive");
  if (!generator) throw PreconditionError("root " + std::to_string(spec.root_id) + " has no generator");
  if (!spec.needs_image && spec.family != Family::WordProblem) {
    throw PreconditionError("only word problems may be text-only");
  }
  const int id = spec.root_id;
  if (!entries_.emplace(id, Entry{std::move(spec), std::move(generator)}).second) {
    throw PreconditionError("duplicate root puzzle " + std::to_string(id));
  }
}

GeneratorHandle Registry::resolve(int root_id) const {
  auto it = entries_.find(root_id);
  if (it == entries_.end()) throw LookupError("unknown root puzzle " + std::to_string(root_id));
  return {it->second.generator.get(), &it->second.spec};
}

const RootPuzzleSpec& Registry::spec(int root_id) const { return *resolve(root_id).spec; }

std::vector<int> Registry::ids() const {
  std::vector<int> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

std::vector<RootPuzzleSpec> Registry::specs() const {
  std::vector<RootPuzzleSpec> out;
  for (const auto& [_, e] : entries_) out.push_back(e.spec);
  return out;
}

json answer_to_json(const AnswerValue& value) {
  if (const auto* v = std::get_if<std::int64_t>(&value)) return *v;
  return std::get<std::string>(value);
}

AnswerValue answer_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  throw ParseError(0, "answer value must be an integer or a string");
}

ordered_json spec_to_json(const RootPuzzleSpec& spec) {
  ordered_json type;
  type["kind"] = std::string(to_string(spec.answer_type.kind));
  if (spec.answer_type.kind == AnswerKind::Integer) {
    type["lo"] = spec.answer_type.lo;
    type["hi"] = spec.answer_type.hi;
    if (!spec.answer_type.unit.empty()) type["unit"] = spec.answer_type.unit;
  }
  ordered_json out;
  out["root_id"] = spec.root_id;
  out["category"] = std::string(to_string(spec.category));
  out["family"] = std::string(to_string(spec.family));
  out["answer_type"] = type;
  out["param_space"] = spec.param_space;
  out["needs_image"] = spec.needs_image;
  return out;
}

RootPuzzleSpec spec_from_json(const json& j) {
  RootPuzzleSpec spec;
  spec.root_id = j.at("root_id").get<int>();
  spec.category = parse_category(j.at("category").get<std::string>());
  spec.family = parse_family(j.at("family").get<std::string>());
  const json& type = j.at("answer_type");
  const std::string kind = type.at("kind").get<std::string>();
  if (kind == "integer") {
    spec.answer_type = AnswerType::integer(type.at("lo").get<std::int64_t>(),
                                           type.at("hi").get<std::int64_t>(),
                                           type.value("unit", std::string()));
  } else if (kind == "option_label") {
    spec.answer_type = AnswerType::option_label();
  } else if (kind == "word") {
    spec.answer_type = AnswerType::word();
  } else {
    throw LookupError("unknown answer kind '" + kind + "'");
  }
  spec.param_space = j.value("param_space", json::object());
  spec.needs_image = j.at("needs_image").get<bool>();
  return spec;
}

SkillCategory root_category(int root_id) {
  using C = SkillCategory;
  static constexpr std::array<C, 101> kTable = {
      C::PathFinding, C::Counting, C::Counting, C::Counting, C::Counting,
      C::Arithmetic, C::Algebra, C::Counting, C::SpatialReasoning, C::Algebra,
      C::Arithmetic, C::SpatialReasoning, C::Counting, C::Counting, C::Algebra,
      C::PathFinding, C::SpatialReasoning, C::SpatialReasoning, C::PathFinding, C::Measurement,
      C::Measurement, C::Measurement, C::Counting, C::Counting, C::Measurement,
      C::Counting, C::Algebra, C::Algebra, C::Logic, C::Arithmetic,
      C::Algebra, C::PatternFinding, C::Counting, C::Counting, C::PathFinding,
      C::Logic, C::PathFinding, C::Arithmetic, C::SpatialReasoning, C::Counting,
      C::Counting, C::Counting, C::Arithmetic, C::SpatialReasoning, C::Counting,
      C::Arithmetic, C::Arithmetic, C::PathFinding, C::Algebra, C::Counting,
      C::Measurement, C::Counting, C::Counting, C::PathFinding, C::SpatialReasoning,
      C::Logic, C::Counting, C::Arithmetic, C::Arithmetic, C::Counting,
      C::Algebra, C::Logic, C::Algebra, C::Measurement, C::PathFinding,
      C::Logic, C::Arithmetic, C::SpatialReasoning, C::SpatialReasoning, C::Logic,
      C::Arithmetic, C::Algebra, C::Logic, C::Logic, C::SpatialReasoning,
      C::Algebra, C::PatternFinding, C::SpatialReasoning, C::Counting, C::Counting,
      C::Logic, C::SpatialReasoning, C::PatternFinding, C::PatternFinding, C::Algebra,
      C::PatternFinding, C::Logic, C::Arithmetic, C::Counting, C::Algebra,
      C::Logic, C::Measurement, C::Measurement, C::Measurement, C::SpatialReasoning,
      C::SpatialReasoning, C::Counting, C::Arithmetic, C::Counting, C::Logic,
      C::Algebra,
  };
  if (root_id < 1 || root_id > 101) {
    throw LookupError("no category for root " + std::to_string(root_id));
  }
  return kTable[static_cast<std::size_t>(root_id - 1)];
}

}  // namespace smartgen
