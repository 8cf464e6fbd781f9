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

#include <algorithm>
#include <set>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

struct Toy {
  const char* indefinite;
  const char* definite;
};

constexpr Toy kToys[] = {
    {"a ball", "the ball"},         {"a set of blocks", "the blocks"}, {"a game", "the game"},
    {"a puzzle", "the puzzle"},     {"a car", "the car"},              {"a doll", "the doll"},
    {"a kite", "the kite"},         {"a drum", "the drum"},            {"a robot", "the robot"},
    {"a teddy bear", "the teddy bear"}, {"a yo-yo", "the yo-yo"},      {"a toy train", "the toy train"},
};

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

constexpr const char* kKindNames[] = {"below", "directly_above", "fixed"};

ShelfConstraint::Kind parse_kind(const std::string& s) {
  for (int i = 0; i < 3; ++i) {
    if (s == kKindNames[i]) return static_cast<ShelfConstraint::Kind>(i);
  }
  throw ParseError(0, "unknown shelf constraint " + s);
}

class ShelfOrderGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::ShelfOrder; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const int n = static_cast<int>(rng.uniform_int(param(spec, "items_min", 5), param(spec, "items_max", 7)));
    std::vector<std::size_t> toy_ids(std::size(kToys));
    for (std::size_t i = 0; i < toy_ids.size(); ++i) toy_ids[i] = i;
    toy_ids = rng.sample(toy_ids, static_cast<std::size_t>(n));
    auto toy = [&](int i) -> const Toy& { return kToys[toy_ids[static_cast<std::size_t>(i)]]; };

    const auto count = rng.uniform_int(2, 3);
    std::vector<ShelfConstraint> constraints;
    std::vector<std::string> sentences;
    bool fixed_used = false;
    std::set<std::pair<int, int>> pairs;  // no two rules about the same two toys
    for (std::int64_t c = 0; c < count; ++c) {
      const int a = static_cast<int>(rng.index(n));
      int b = static_cast<int>(rng.index(n - 1));
      if (b >= a) ++b;
      if (!pairs.insert({std::min(a, b), std::max(a, b)}).second) continue;
      const double roll = rng.uniform_real(0.0, 1.0);
      const std::string ta = toy(a).definite, tb = toy(b).definite;
      if (roll < 0.2 && !fixed_used) {
        fixed_used = true;
        const int p = static_cast<int>(rng.uniform_int(1, n));
        constraints.push_back({ShelfConstraint::Kind::Fixed, a, p});
        sentences.push_back(capitalized(ta) + " is on shelf " + std::to_string(p) + ".");
      } else if (roll < 0.6) {
        constraints.push_back({ShelfConstraint::Kind::DirectlyAbove, a, b});
        sentences.push_back(capitalized(ta) + " is directly above " + tb + ".");
      } else {
        constraints.push_back({ShelfConstraint::Kind::Below, a, b});
        sentences.push_back(rng.bernoulli(0.5) ? capitalized(ta) + " is lower than " + tb + "."
                                               : capitalized(tb) + " is higher than " + ta + ".");
      }
    }
    const int query = static_cast<int>(rng.index(n));
    const std::vector<int> impossible = impossible_shelf_positions(n, constraints, query);
    if (impossible.size() != 1) throw DegeneracyError("query item is not excluded from exactly one shelf");
    const int answer = impossible.front();

    // Bookcase with numbered shelves; the toys themselves are not drawn.
    Scene scene;
    const double shelf_h = 180.0 / n, x0 = 62.0, w = 100.0, y0 = 22.0;
    scene.add(RectShape{{x0, y0}, w, shelf_h * n, Style{Rgb{120, 80, 40}, Rgb{222, 184, 135}, 2.0}});
    for (int s = 1; s <= n; ++s) {
      const double y = y0 + shelf_h * (n - s + 1);
      if (s > 1) scene.add(LineShape{{x0, y}, {x0 + w, y}, Style{Rgb{120, 80, 40}, std::nullopt, 2.0}});
      scene.add(TextShape{{x0 - 14, y - shelf_h / 2 + 4}, std::to_string(s), 12.0, kBlack});
    }

    std::vector<std::string> items;
    json item_names = json::array();
    for (int i = 0; i < n; ++i) {
      items.push_back(toy(i).indefinite);
      item_names.push_back(toy(i).definite);
    }
    std::string rules;
    for (const std::string& s : sentences) rules += (rules.empty() ? "" : " ") + s;

    Bindings b;
    b.numbers = {{"n", n}};
    // Fixed-position rules say "shelf", so the question must too.
    if (fixed_used) b.words["shelf"] = "shelf";
    b.texts = {{"items", join_list(items)}, {"rules", rules}, {"query", toy(query).definite}};

    json cj = json::array();
    for (const ShelfConstraint& c : constraints) {
      cj.push_back({{"kind", kKindNames[static_cast<int>(c.kind)]}, {"a", c.a}, {"b", c.b}});
    }
    std::vector<std::int64_t> possible;
    for (int p = 1; p <= n; ++p) {
      if (p != answer) possible.push_back(p);
    }
    Draft d;
    d.config = {{"items", item_names}, {"constraints", cj}, {"query", query}};
    d.answer = static_cast<std::int64_t>(answer);
    d.scene = std::move(scene);
    d.question = question_from(family(), "impossible", b, rng);
    d.policy = IntegerPool{possible, IntegerWindow{1, n}};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    const int n = static_cast<int>(config.at("items").size());
    std::vector<ShelfConstraint> constraints;
    for (const json& c : config.at("constraints")) {
      constraints.push_back({parse_kind(c.at("kind").get<std::string>()), c.at("a").get<int>(), c.at("b").get<int>()});
    }
    const auto impossible = oracle::shelf_impossible(n, constraints, config.at("query").get<int>());
    if (impossible.size() != 1) {
      throw ConsistencyError(std::to_string(impossible.size()) + " shelves are impossible for the query");
    }
    return static_cast<std::int64_t>(impossible.front());
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_shelf_order() { return std::make_shared<ShelfOrderGenerator>(); }

}  // namespace smartgen::detail
