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

#include <set>
#include <sstream>

#include "doctest.h"
#include "smartgen/errors.hpp"
#include "smartgen/generators.hpp"
#include "smartgen/oracles.hpp"

using namespace smartgen;

namespace {

constexpr int kPerFamily = 500;

std::size_t token_count(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

class AlwaysDegenerate : public FamilyGenerator {
 public:
  Family family() const override { return Family::FenceJump; }
  Draft sample(const RootPuzzleSpec&, Rng&) const override { throw DegeneracyError("never"); }
  AnswerValue oracle(const json&) const override { return std::int64_t{0}; }
};

}  // namespace

TEST_CASE("default registry covers every family and category") {
  const Registry reg = default_registry();
  CHECK(reg.size() == 11);
  std::set<Family> families;
  std::set<SkillCategory> cats;
  for (const auto& spec : reg.specs()) {
    families.insert(spec.family);
    cats.insert(spec.category);
    CHECK(spec.needs_image == (spec.family != Family::WordProblem));
  }
  CHECK(families.size() == 11);
  CHECK(cats.size() == kAllCategories.size());
}

TEST_CASE("generated instances agree with the oracles") {
  const Registry reg = default_registry();
  for (int root : reg.ids()) {
    const auto h = reg.resolve(root);
    CAPTURE(root);
    int failures = 0;
    for (int i = 1; i <= kPerFamily; ++i) {
      const PuzzleInstance p = generate_instance(reg, 2024, root, i);
      const OracleCheck c = check_against_oracle(*h.generator, *h.spec, p.config(), p.answer_value(),
                                                 p.options(), p.answer_index());
      if (!c.ok) {
        ++failures;
        MESSAGE("instance " << i << ": " << c.detail);
      }
      // Closure: the instance meets its own invariants.
      CHECK(p.root_id() == root);
      CHECK(p.instance_id() == i);
      CHECK(std::set<std::string>(p.options().begin(), p.options().end()).size() == 5);
      CHECK(p.options()[p.answer_index()] == render_answer(p.answer_value(), p.answer_type()));
      CHECK(p.needs_image() == !p.scene().empty());
      CHECK(token_count(p.question()) <= kMaxQuestionTokens);
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("the oracle check catches a wrong answer index") {
  const Registry reg = default_registry();
  for (int root : reg.ids()) {
    const auto h = reg.resolve(root);
    const PuzzleInstance p = generate_instance(reg, 7, root, 1);
    const int wrong = (p.answer_index() + 1) % 5;
    CHECK_FALSE(check_against_oracle(*h.generator, *h.spec, p.config(), p.answer_value(), p.options(), wrong).ok);
  }
}

TEST_CASE("generation is deterministic per seed") {
  const Registry reg = default_registry();
  for (int root : reg.ids()) {
    for (int i = 1; i <= 20; ++i) {
      CHECK(generate_instance(reg, 99, root, i) == generate_instance(reg, 99, root, i));
    }
    CHECK_FALSE(generate_instance(reg, 99, root, 1) == generate_instance(reg, 100, root, 1));
  }
}

TEST_CASE("instances of a root are mostly distinct") {
  const Registry reg = default_registry();
  for (int root : reg.ids()) {
    std::set<std::string> configs;
    for (int i = 1; i <= 200; ++i) configs.insert(generate_instance(reg, 3, root, i).config().dump());
    CAPTURE(root);
    CHECK(configs.size() >= 150);
  }
}

TEST_CASE("road grid maps complete to a valid matrix") {
  const Registry reg = default_registry();
  const int root = 2;
  REQUIRE(reg.spec(root).family == Family::RoadGrid);
  for (int i = 1; i <= 200; ++i) {
    const PuzzleInstance p = generate_instance(reg, 11, root, i);
    const json& c = p.config();
    const int n = c.at("n").get<int>();
    const int k = c.at("k").get<int>();
    BinaryMatrix x(2 * n, std::vector<int>(2 * n, 0));
    auto set = [&](int r, int col) {
      x[r][col] = 1;
      x[r + n][(col + n) % (2 * n)] = 1;
    };
    for (const json& cell : c.at("houses")) set(cell.at(0).get<int>(), cell.at(1).get<int>());
    const json& hidden = c.at("candidates").at(p.answer_index());
    set(hidden.at(0).get<int>(), hidden.at(1).get<int>());
    CHECK(oracle::road_grid_valid(x, n, k));
  }
}

TEST_CASE("exhausted retry budget reports root and seed") {
  RootPuzzleSpec spec;
  spec.root_id = 42;
  spec.family = Family::FenceJump;
  spec.answer_type = AnswerType::integer(1, 100);
  AlwaysDegenerate gen;
  try {
    generate_instance(spec, gen, 1234, 1, 10);
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    CHECK(e.root_id() == 42);
    CHECK(e.seed() == 1234);
  }
}

TEST_CASE("unknown roots are rejected") {
  CHECK_THROWS_AS(generate_instance(default_registry(), 1, 999, 1), LookupError);
}

TEST_CASE("the reference word problems") {
  const auto problems = reference_word_problems();
  REQUIRE(problems.size() == 11);
  const std::vector<int> ids = {7, 9, 30, 38, 47, 71, 88, 89, 90, 91, 93};
  const std::vector<std::int64_t> answers = {12, 2, 13, 3, 2, 26, 43, 4, 10, 18, 18};
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    CAPTURE(p.spec.root_id);
    CHECK(p.spec.root_id == ids[i]);
    CHECK_FALSE(p.spec.needs_image);
    CHECK(p.instance.scene().empty());
    CHECK(solve_word_problem(p.config) == answers[i]);
    CHECK(oracle::word_problem(p.config) == answers[i]);
    CHECK(std::get<std::int64_t>(p.instance.answer_value()) == answers[i]);
    CHECK(p.instance.options()[p.instance.answer_index()] ==
          render_answer(p.instance.answer_value(), p.instance.answer_type()));
    CHECK(word_problem_from_json(word_problem_to_json(p.config)).params == p.config.params);
  }
}

TEST_CASE("word problem questions carry every bound number") {
  WordProblemConfig c{WordProblemKind::TradeChain, {{"r", 2}, {"s", 3}, {"f", 2}}, {}};
  Rng rng(1);
  const std::string q = word_problem_question(c, "trade_chain.1", {}, rng);
  CHECK(token_count(q) <= kMaxQuestionTokens);
  CHECK(q.find('{') == std::string::npos);
}
