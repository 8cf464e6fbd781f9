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

#include "doctest.h"
#include "smartgen/errors.hpp"
#include "smartgen/textgen.hpp"

using namespace smartgen;

namespace {

SlotSources jump_sources() {
  SlotSources s;
  s.numbers = {{"f", {2, 5}}, {"b", {1, 4}}};
  return s;
}

std::size_t tokens(const std::string& s) {
  std::size_t n = 0;
  bool in = false;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in) ++n;
    in = !space;
  }
  return n;
}

}  // namespace

TEST_CASE("number slots render the bound values") {
  const QuestionTemplate t("fig", "He makes {number:f} jumps ahead and then {number:b} jump back.", jump_sources());
  Rng rng(1);
  Bindings b;
  b.numbers = {{"f", 4}, {"b", 1}};
  CHECK(instantiate_template(t, b, rng) == "He makes 4 jumps ahead and then 1 jump back.");
}

TEST_CASE("unbound number slot") {
  const QuestionTemplate t("fig", "He makes {number:f} jumps ahead and then {number:b} jump back.", jump_sources());
  Rng rng(1);
  Bindings b;
  b.numbers = {{"b", 1}};
  try {
    instantiate_template(t, b, rng);
    FAIL("expected TemplateError");
  } catch (const TemplateError& e) {
    CHECK(std::string(e.what()).find("unbound slot number:f") != std::string::npos);
  }
}

TEST_CASE("synonym slots vary while numbers stay fixed") {
  SlotSources s;
  s.numbers = {{"k", {1, 9}}};
  s.words = {{"dwelling", {{"house", "houses"}, {"hut", "huts"}, {"condo", "condos"}}}};
  const QuestionTemplate t("grid", "Place {number:k} {word:dwelling.2} on each road.", s);
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    Bindings b;
    b.numbers = {{"k", 3}};
    const std::string q = instantiate_template(t, b, rng);
    CHECK(q.find("Place 3 ") == 0);
    seen.insert(q);
  }
  CHECK(seen == std::set<std::string>{"Place 3 houses on each road.", "Place 3 huts on each road.",
                                      "Place 3 condos on each road."});
}

TEST_CASE("number and word forms") {
  SlotSources s;
  s.numbers = {{"n", {1, 20}}};
  s.words = {{"gem", {{"ruby", "rubies"}}}};
  const QuestionTemplate t("forms", "{number:n.Word} {word:gem.#n}, {number:n.word}, {number:n.ord}, {word:gem.cap2}.",
                           s);
  Rng rng(3);
  Bindings b;
  b.numbers = {{"n", 1}};
  CHECK(instantiate_template(t, b, rng) == "One ruby, one, 1st, Rubies.");
  b.numbers = {{"n", 12}};
  CHECK(instantiate_template(t, b, rng) == "Twelve rubies, twelve, 12th, Rubies.");
  b.numbers = {{"n", 3}};
  CHECK(instantiate_template(t, b, rng).find("3rd") != std::string::npos);
  CHECK(number_to_words(0) == "zero");
  CHECK(number_to_words(21) == "twenty-one");
}

TEST_CASE("name slots draw distinct names with matching pronouns") {
  SlotSources s;
  s.names = {{"Alice", true}, {"Brian", false}};
  const QuestionTemplate t("names", "{name:a} meets {name:b}. {name:a.He} greets {name:b.him}.", s);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const std::string q = instantiate_template(t, {}, rng);
    CHECK((q == "Alice meets Brian. She greets him." || q == "Brian meets Alice. He greets her."));
  }
  Rng rng(0);
  Bindings pinned;
  pinned.names = {{"a", "Brian"}};
  CHECK(instantiate_template(t, pinned, rng) == "Brian meets Alice. He greets her.");
}

TEST_CASE("malformed templates are rejected") {
  CHECK_THROWS_AS(QuestionTemplate("x", "a {number:f", jump_sources()), TemplateError);
  CHECK_THROWS_AS(QuestionTemplate("x", "a } b", jump_sources()), TemplateError);
  CHECK_THROWS_AS(QuestionTemplate("x", "{colour:f}", jump_sources()), TemplateError);
  CHECK_THROWS_AS(QuestionTemplate("x", "{number:zz}", jump_sources()), TemplateError);
  CHECK_THROWS_AS(QuestionTemplate("x", "{number:f.roman}", jump_sources()), TemplateError);
}

TEST_CASE("bank parsing") {
  const std::string src =
      "# comment\n@number f = 1..9\n@word gem = sapphire/sapphires | ruby/rubies\n@text rules\n\n"
      "@template a.1\nTake {number:f}\n{word:gem.#f}.\n\n@template a.2\n{text:rules}\n";
  const TemplateBank bank = TemplateBank::parse(src, builtin_names());
  REQUIRE(bank.templates().size() == 2);
  CHECK(bank.get("a.1").text() == "Take {number:f} {word:gem.#f}.");
  CHECK(bank.with_prefix("a").size() == 2);
  CHECK_THROWS_AS(bank.get("b.1"), LookupError);
  CHECK_THROWS_AS(TemplateBank::parse("@number f = 9..1\n", {}), TemplateError);
}

TEST_CASE("shipped banks pass the lint") {
  for (int f = 0; f <= static_cast<int>(Family::WordProblem); ++f) {
    const TemplateBank& bank = template_bank(static_cast<Family>(f));
    CHECK(bank.templates().size() >= 3);
    for (const auto& [name, words] : bank.sources().words) CHECK_MESSAGE(words.size() >= 4, name);
    const auto problems = lint_bank(bank);
    for (const std::string& p : problems) MESSAGE(p);
    CHECK(problems.empty());
  }
  CHECK(builtin_names().size() >= 20);
}

TEST_CASE("lint catches over-long questions") {
  std::string text;
  for (int i = 0; i < 120; ++i) text += "word ";
  const TemplateBank bank = TemplateBank::parse("@template long.1\n" + text + "\n", {});
  CHECK_FALSE(lint_bank(bank).empty());
  CHECK(tokens(text) == 120);
}
