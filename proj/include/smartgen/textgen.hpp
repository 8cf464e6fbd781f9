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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "smartgen/core.hpp"
#include "smartgen/rng.hpp"

namespace smartgen {

// Questions longer than this many whitespace-separated tokens fail the lint.
inline constexpr std::size_t kMaxQuestionTokens = 110;

struct WordEntry {
  std::string singular;
  std::string plural;
  bool operator==(const WordEntry&) const = default;
};

struct NameEntry {
  std::string name;
  bool female = false;
  bool operator==(const NameEntry&) const = default;
};

struct NumberRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Where each slot's values come from. Numbers and texts are always bound by
// the generator from its config; the declared range is only used by the lint.
struct SlotSources {
  std::map<std::string, NumberRange> numbers;
  std::map<std::string, std::vector<WordEntry>> words;
  std::set<std::string> texts;
  std::vector<NameEntry> names;
};

enum class SlotKind { Number, Word, Name, Text };

struct Slot {
  SlotKind kind = SlotKind::Number;
  std::string name;
  std::string form;  // part after the first '.', may be empty
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the closing brace
};

std::string slot_label(SlotKind kind, std::string_view name);

// Template text with `{kind:name}` / `{kind:name.form}` slots.
//   number forms: (digits) | word | Word | ord ("12th")
//   word forms:   (singular) | 2 (plural) | cap | cap2 | #n (plural unless number n is 1)
//   name forms:   (name) | he | He | him | his | His (pronouns follow the name)
class QuestionTemplate {
 public:
  // Throws TemplateError on malformed slots or slots without a declared source.
  QuestionTemplate(std::string id, std::string text, SlotSources sources);

  const std::string& id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const SlotSources& sources() const { return sources_; }

 private:
  std::string id_;
  std::string text_;
  SlotSources sources_;
  std::vector<Slot> slots_;
};

struct Bindings {
  std::map<std::string, std::int64_t> numbers;
  std::map<std::string, std::string> texts;
  // Optional: pin a word slot (by singular form) or a name slot.
  std::map<std::string, std::string> words;
  std::map<std::string, std::string> names;
};

// Unbound number/text slots raise TemplateError("unbound slot number:f").
// Word and name slots not pinned by `bindings` are drawn from `rng` in order
// of first appearance; distinct name slots receive distinct names.
std::string instantiate_template(const QuestionTemplate& tmpl, const Bindings& bindings, Rng& rng);

std::string number_to_words(std::int64_t n);

class TemplateBank {
 public:
  // Bank file syntax, one directive per line:
  //   # comment
  //   @number f = 1..9
  //   @word gem = sapphire/sapphires | ruby/rubies
  //   @text constraints
  //   @template <id>          followed by text lines up to a blank line
  static TemplateBank parse(std::string_view source, const std::vector<NameEntry>& names);

  const std::vector<QuestionTemplate>& templates() const { return templates_; }
  const SlotSources& sources() const { return sources_; }

  // Throws LookupError for an unknown id.
  const QuestionTemplate& get(std::string_view id) const;
  // Templates whose id starts with "<prefix>.".
  std::vector<const QuestionTemplate*> with_prefix(std::string_view prefix) const;
  const QuestionTemplate& pick(std::string_view prefix, Rng& rng) const;

 private:
  std::vector<QuestionTemplate> templates_;
  SlotSources sources_;
};

std::vector<NameEntry> parse_names(std::string_view source);

// Built-in fixture data compiled into the library.
const std::vector<NameEntry>& builtin_names();
const TemplateBank& template_bank(Family family);

// Instantiates every template at the low and high ends of each number range
// with several word/name draws. Returns one message per problem found.
std::vector<std::string> lint_bank(const TemplateBank& bank);

}  // namespace smartgen
