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

#include "smartgen/generators.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <thread>

#include "families/common.hpp"
#include "smartgen/errors.hpp"

namespace smartgen {

namespace detail {

namespace {
constexpr std::array<std::string_view, 6> kGlyphNames = {"flower", "star", "house", "coin", "heart", "bird"};
}  // namespace

std::string_view glyph_name(GlyphKind kind) { return kGlyphNames[static_cast<std::size_t>(kind)]; }

GlyphKind parse_glyph(std::string_view name) {
  for (std::size_t i = 0; i < kGlyphNames.size(); ++i) {
    if (kGlyphNames[i] == name) return static_cast<GlyphKind>(i);
  }
  throw ParseError(0, "unknown glyph " + std::string(name));
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += items.size() == 2 ? " and " : (i + 1 == items.size() ? ", and " : ", ");
    out += items[i];
  }
  return out;
}

json default_param_space(Family family) {
  switch (family) {
    case Family::Containment: return {{"min_icons", 5}, {"max_icons", 12}};
    case Family::RoadGrid: return {{"n_min", 2}, {"n_max", 6}};
    case Family::PathCount: return {{"n_min", 4}, {"n_max", 8}};
    case Family::FenceJump:
      return {{"d_min", 4}, {"d_max", 16}, {"f_min", 2}, {"f_max", 5}, {"t_min", 2}, {"t_max", 6}};
    case Family::BoardRowCol: return {{"m_min", 3}, {"m_max", 5}, {"moves_max", 4}};
    case Family::StickStack: return {{"sizes", {5, 7, 9}}};
    case Family::DiagramOp: return {{"edges_min", 2}, {"edges_max", 4}};
    case Family::ShelfOrder: return {{"items_min", 5}, {"items_max", 7}};
    case Family::Cipher: return {{"grid_min", 4}, {"grid_max", 5}};
    case Family::HolePunch: return {{"sheets_min", 3}, {"sheets_max", 8}};
    case Family::WordProblem: {
      json kinds = json::array();
      for (int i = 0; i < kNumWordProblemKinds; ++i) kinds.push_back(to_string(static_cast<WordProblemKind>(i)));
      return {{"kinds", kinds}};
    }
  }
  return json::object();
}

}  // namespace detail

std::shared_ptr<const FamilyGenerator> make_generator(Family family) {
  switch (family) {
    case Family::Containment: return detail::make_containment();
    case Family::RoadGrid: return detail::make_road_grid();
    case Family::PathCount: return detail::make_path_count();
    case Family::FenceJump: return detail::make_fence_jump();
    case Family::BoardRowCol: return detail::make_board_rowcol();
    case Family::StickStack: return detail::make_stick_stack();
    case Family::DiagramOp: return detail::make_diagram_op();
    case Family::ShelfOrder: return detail::make_shelf_order();
    case Family::Cipher: return detail::make_cipher();
    case Family::HolePunch: return detail::make_hole_punch();
    case Family::WordProblem: return detail::make_word_problem();
  }
  throw PreconditionError("unknown family");
}

Registry default_registry() {
  using C = SkillCategory;
  struct Row {
    Family family;
    C category;
    AnswerType type;
  };
  const Row rows[] = {
      {Family::Containment, C::Counting, AnswerType::integer(1, 12)},
      {Family::RoadGrid, C::Logic, AnswerType::option_label()},
      {Family::PathCount, C::PathFinding, AnswerType::integer(1, 12)},
      {Family::FenceJump, C::Measurement, AnswerType::integer(1, 500)},
      {Family::BoardRowCol, C::Counting, AnswerType::integer(1, 8)},
      {Family::StickStack, C::SpatialReasoning, AnswerType::integer(1, 9)},
      {Family::DiagramOp, C::Algebra, AnswerType::word()},
      {Family::ShelfOrder, C::Logic, AnswerType::integer(1, 7)},
      {Family::Cipher, C::PatternFinding, AnswerType::word()},
      {Family::HolePunch, C::SpatialReasoning, AnswerType::option_label()},
      {Family::WordProblem, C::Arithmetic, AnswerType::integer(1, 1000)},
  };
  Registry registry;
  int id = 1;
  for (const Row& row : rows) {
    RootPuzzleSpec spec;
    spec.root_id = id++;
    spec.category = row.category;
    spec.family = row.family;
    spec.answer_type = row.type;
    spec.param_space = detail::default_param_space(row.family);
    spec.needs_image = row.family != Family::WordProblem;
    registry.add(std::move(spec), make_generator(row.family));
  }
  return registry;
}

PuzzleInstance generate_instance(const RootPuzzleSpec& spec, const FamilyGenerator& generator,
                                 std::uint64_t seed, int instance_id, int budget) {
  if (generator.family() != spec.family) {
    throw PreconditionError("generator family does not match root " + std::to_string(spec.root_id));
  }
  Rng rng(seed);
  std::string last;
  for (int attempt = 0; attempt < budget; ++attempt) {
    try {
      Draft d = generator.sample(spec, rng);
      if (!spec.answer_type.admits(d.answer)) throw DegeneracyError("answer outside the declared range");
      OptionSet options = assemble_options(d.answer, spec.answer_type, d.policy, rng);
      Scene scene = spec.needs_image ? std::move(d.scene) : blank_placeholder();
      return PuzzleInstance::create(spec, instance_id, seed, std::move(scene), std::move(d.question),
                                    options.options, options.answer_index, d.answer, std::move(d.config));
    } catch (const DegeneracyError& e) {
      last = e.what();
    }
  }
  throw GenerationError(spec.root_id, seed,
                        "retry budget of " + std::to_string(budget) + " exhausted (last: " + last + ")");
}

PuzzleInstance generate_instance(const Registry& registry, std::uint64_t global_seed, int root_id,
                                 int instance_id, int budget) {
  const GeneratorHandle handle = registry.resolve(root_id);
  const std::uint64_t seed = derive_seed(global_seed, static_cast<std::uint64_t>(root_id),
                                         static_cast<std::uint64_t>(instance_id));
  return generate_instance(*handle.spec, *handle.generator, seed, instance_id, budget);
}

OracleCheck check_against_oracle(const FamilyGenerator& generator, const RootPuzzleSpec& spec,
                                 const json& config, const AnswerValue& answer_value,
                                 const std::array<std::string, 5>& options, int answer_index) {
  OracleCheck out;
  AnswerValue expected;
  try {
    expected = generator.oracle(config);
  } catch (const std::exception& e) {
    out.detail = std::string("oracle failed: ") + e.what();
    return out;
  }
  out.expected = render_answer(expected, spec.answer_type);
  if (expected != answer_value) {
    out.detail = "oracle gives " + out.expected + ", stored answer is " + render_value(answer_value);
    return out;
  }
  if (answer_index < 0 || answer_index >= kNumOptions || options[answer_index] != out.expected) {
    out.detail = "option at answer_index does not read " + out.expected;
    return out;
  }
  if (std::count(options.begin(), options.end(), out.expected) != 1) {
    out.detail = "answer appears among the options more than once";
    return out;
  }
  out.ok = true;
  return out;
}

std::vector<Mismatch> verify_dataset(const Dataset& dataset, unsigned threads) {
  std::map<int, std::shared_ptr<const FamilyGenerator>> generators;
  for (const RootPuzzleSpec& spec : dataset.roots) generators[spec.root_id] = make_generator(spec.family);

  const std::size_t total = dataset.records.size();
  std::vector<std::optional<Mismatch>> slots(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const InstanceRecord& r = dataset.records[k];
      const auto it = generators.find(r.root_id);
      if (it == generators.end()) {
        slots[k] = Mismatch{r.root_id, r.instance_id, "root not listed in the dataset"};
        continue;
      }
      const OracleCheck c = check_against_oracle(*it->second, dataset.root(r.root_id), r.config,
                                                 r.answer_value, r.options, r.answer_index);
      if (!c.ok) slots[k] = Mismatch{r.root_id, r.instance_id, c.detail};
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<Mismatch> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

// ---- word problems ---------------------------------------------------------

std::string word_problem_question(const WordProblemConfig& config, const std::string& template_id,
                                  const Bindings& pins, Rng& rng) {
  const std::string prefix = std::string(to_string(config.kind)) + ".";
  if (template_id.rfind(prefix, 0) != 0) {
    throw PreconditionError("template " + template_id + " does not belong to " + std::string(to_string(config.kind)));
  }
  Bindings b = pins;
  for (const auto& [name, value] : config.params) b.numbers[name] = value;
  if (!config.digits.empty()) {
    std::vector<std::string> digits;
    for (int d : config.digits) digits.push_back(std::to_string(d));
    b.texts["digits"] = detail::join_list(digits);
  }
  return instantiate_template(template_bank(Family::WordProblem).get(template_id), b, rng);
}

json word_problem_to_json(const WordProblemConfig& config) {
  json j = {{"kind", to_string(config.kind)}, {"params", config.params}};
  if (!config.digits.empty()) j["digits"] = config.digits;
  return j;
}

WordProblemConfig word_problem_from_json(const json& j) {
  WordProblemConfig c;
  c.kind = parse_word_problem_kind(j.at("kind").get<std::string>());
  c.params = j.at("params").get<std::map<std::string, std::int64_t>>();
  if (j.contains("digits")) c.digits = j.at("digits").get<std::vector<int>>();
  return c;
}

std::vector<ReferenceWordProblem> reference_word_problems() {
  using K = WordProblemKind;
  using C = SkillCategory;
  struct Row {
    int id;
    C category;
    K kind;
    std::map<std::string, std::int64_t> params;
    std::vector<int> digits;
    std::map<std::string, std::string> words;
    std::map<std::string, std::string> names;
    std::array<std::string, 5> options;
    int answer_index;
    std::int64_t answer;
    std::string unit;
  };
  const std::vector<Row> rows = {
      {7, C::Algebra, K::TradeChain, {{"r", 2}, {"s", 3}, {"f", 2}}, {},
       {{"land", "jewelries"}, {"gem", "sapphire"}, {"prize", "ruby"}, {"thing", "flower"}}, {},
       {"6", "8", "10", "12", "14"}, 3, 12, ""},
      {9, C::SpatialReasoning, K::QueuePosition, {{"ahead", 7}, {"total", 11}}, {}, {},
       {{"a", "Brian"}, {"b", "William"}}, {"2", "3", "4", "5", "6"}, 0, 2, ""},
      {30, C::Arithmetic, K::NestedBoxes, {{"b", 3}}, {}, {{"box", "box"}}, {},
       {"9", "10", "12", "13", "15"}, 3, 13, ""},
      {38, C::Arithmetic, K::LitWindows, {{"rooms", 12}, {"w", 2}, {"lit", 18}}, {}, {}, {},
       {"2", "3", "4", "5", "6"}, 1, 3, ""},
      {47, C::Arithmetic, K::PizzaSlices, {{"p", 2}, {"s", 8}, {"g", 13}}, {}, {{"food", "pizza"}},
       {{"host", "Vera"}}, {"5", "4", "3", "2", "1"}, 3, 2, ""},
      {71, C::Arithmetic, K::OppositeTrainCars, {{"cars", 31}, {"j", 19}, {"m", 12}}, {}, {}, {},
       {"7", "12", "21", "26", "31"}, 3, 26, ""},
      {88, C::Arithmetic, K::BundlePricing, {{"size", 6}, {"price", 5}, {"budget", 36}}, {},
       {{"item", "ice cream cone"}}, {}, {"36", "30", "42", "43", "45"}, 3, 43, ""},
      {89, C::Counting, K::DistinctDigitCount, {{"lo", 10}, {"hi", 25}}, {2, 0, 1, 8}, {}, {},
       {"4", "5", "6", "7", "8"}, 0, 4, ""},
      {90, C::Algebra, K::CatchUpChests, {{"start", 10}, {"r1", 1}, {"r2", 2}}, {}, {{"coin", "coin"}}, {},
       {"5", "8", "10", "12", "never"}, 2, 10, ""},
      {91, C::Logic, K::PaperCutting, {{"w", 3}, {"k", 2}, {"g", 2}}, {}, {}, {{"a", "Alice"}},
       {"14", "16", "17", "18", "20"}, 3, 18, ""},
      {93, C::Measurement, K::CrossroadDistance, {{"am", 16}, {"mj", 20}, {"x", 9}}, {}, {},
       {{"a", "Anna"}, {"b", "Mary"}, {"c", "John"}}, {"7 km", "9 km", "11 km", "16 km", "18 km"}, 4, 18,
       "km"},
  };

  std::vector<ReferenceWordProblem> out;
  for (const Row& row : rows) {
    WordProblemConfig config{row.kind, row.params, row.digits};
    RootPuzzleSpec spec;
    spec.root_id = row.id;
    spec.category = row.category;
    spec.family = Family::WordProblem;
    spec.answer_type = AnswerType::integer(1, 1000, row.unit);
    spec.param_space = {{"kinds", {to_string(row.kind)}}};
    spec.needs_image = false;
    Bindings pins;
    pins.words = row.words;
    pins.names = row.names;
    Rng rng(static_cast<std::uint64_t>(row.id));
    std::string question = word_problem_question(config, std::string(to_string(row.kind)) + ".1", pins, rng);
    PuzzleInstance instance =
        PuzzleInstance::create(spec, 1, 0, blank_placeholder(), std::move(question), row.options,
                               row.answer_index, row.answer, word_problem_to_json(config));
    out.push_back({std::move(spec), std::move(instance), std::move(config)});
  }
  return out;
}

}  // namespace smartgen
