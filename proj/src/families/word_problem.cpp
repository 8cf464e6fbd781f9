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

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

using Params = std::map<std::string, std::int64_t>;

WordProblemConfig sample_config(WordProblemKind kind, Rng& rng) {
  WordProblemConfig c;
  c.kind = kind;
  auto u = [&](std::int64_t lo, std::int64_t hi) { return rng.uniform_int(lo, hi); };
  switch (kind) {
    case WordProblemKind::TradeChain:
      c.params = {{"r", u(2, 5)}, {"s", u(2, 5)}, {"f", u(2, 5)}};
      break;
    case WordProblemKind::QueuePosition: {
      const auto ahead = u(2, 15);
      c.params = {{"ahead", ahead}, {"total", ahead + 2 + u(1, 10)}};
      break;
    }
    case WordProblemKind::NestedBoxes:
      c.params = {{"b", u(2, 6)}};
      break;
    case WordProblemKind::LitWindows: {
      const auto rooms = u(6, 20), w = u(2, 4);
      c.params = {{"rooms", rooms}, {"w", w}, {"lit", w * u(1, rooms - 1)}};
      break;
    }
    case WordProblemKind::PizzaSlices: {
      const auto p = u(2, 5), s = u(4, 12);
      c.params = {{"p", p}, {"s", s}, {"g", u(3, p * s - 2)}};
      break;
    }
    case WordProblemKind::OppositeTrainCars: {
      const auto cars = u(10, 40), j = u(2, cars - 1);
      // 2j - m must name a car, and m != j.
      const auto lo = std::max<std::int64_t>(1, 2 * j - cars), hi = std::min(cars, 2 * j - 1);
      auto m = u(lo, hi - 1);
      if (m >= j) ++m;
      c.params = {{"cars", cars}, {"j", j}, {"m", m}};
      break;
    }
    case WordProblemKind::BundlePricing: {
      const auto price = u(2, 6);
      c.params = {{"price", price}, {"size", u(price + 1, price + 3)}, {"budget", u(10, 60)}};
      break;
    }
    case WordProblemKind::DistinctDigitCount: {
      std::vector<int> digits = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
      c.digits = rng.sample(digits, 4);
      const auto lo = u(10, 40);
      c.params = {{"lo", lo}, {"hi", u(lo + 8, std::min<std::int64_t>(lo + 50, 90))}};
      break;
    }
    case WordProblemKind::CatchUpChests: {
      const auto r1 = u(1, 3), r2 = r1 + u(1, 3);
      c.params = {{"start", u(2, 15) * (r2 - r1)}, {"r1", r1}, {"r2", r2}};
      break;
    }
    case WordProblemKind::PaperCutting:
      c.params = {{"w", u(1, 6)}, {"k", u(1, 6)}, {"g", u(1, 6)}};
      break;
    case WordProblemKind::CrossroadDistance: {
      const auto x = u(2, 12);
      c.params = {{"am", x + u(2, 20)}, {"mj", x + u(2, 20)}, {"x", x}};
      break;
    }
  }
  return c;
}

class WordProblemGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::WordProblem; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    std::vector<WordProblemKind> kinds;
    if (spec.param_space.contains("kinds")) {
      for (const json& k : spec.param_space.at("kinds")) kinds.push_back(parse_word_problem_kind(k.get<std::string>()));
    } else {
      for (int i = 0; i < kNumWordProblemKinds; ++i) kinds.push_back(static_cast<WordProblemKind>(i));
    }
    if (kinds.empty()) throw PreconditionError("no word problem kinds to sample from");
    const WordProblemConfig config = sample_config(rng.pick(kinds), rng);
    const std::int64_t answer = solve_word_problem(config);

    const auto variants = template_bank(Family::WordProblem).with_prefix(to_string(config.kind));
    if (variants.empty()) throw LookupError("no templates for " + std::string(to_string(config.kind)));
    const std::string& id = variants[rng.index(variants.size())]->id();

    Draft d;
    d.config = word_problem_to_json(config);
    d.answer = answer;
    d.question = word_problem_question(config, id, Bindings{}, rng);
    d.policy = IntegerWindow{0, std::nullopt};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    return oracle::word_problem(word_problem_from_json(config));
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_word_problem() { return std::make_shared<WordProblemGenerator>(); }

}  // namespace smartgen::detail
