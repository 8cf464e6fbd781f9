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

#include "smartgen/textgen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

#include "embedded.hpp"
#include "smartgen/errors.hpp"

namespace smartgen {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw TemplateError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

SlotKind parse_kind(std::string_view k, std::string_view slot) {
  if (k == "number") return SlotKind::Number;
  if (k == "word") return SlotKind::Word;
  if (k == "name") return SlotKind::Name;
  if (k == "text") return SlotKind::Text;
  throw TemplateError("unknown slot kind in {" + std::string(slot) + "}");
}

bool valid_form(SlotKind kind, std::string_view form) {
  if (form.empty()) return true;
  switch (kind) {
    case SlotKind::Number: return form == "word" || form == "Word" || form == "ord";
    case SlotKind::Word:
      return form == "2" || form == "cap" || form == "cap2" || (form.size() > 1 && form[0] == '#');
    case SlotKind::Name:
      return form == "he" || form == "He" || form == "him" || form == "his" || form == "His";
    case SlotKind::Text: return false;
  }
  return false;
}

std::vector<Slot> scan_slots(std::string_view text) {
  std::vector<Slot> slots;
  std::size_t pos = 0;
  while ((pos = text.find_first_of("{}", pos)) != std::string_view::npos) {
    if (text[pos] == '}') throw TemplateError("stray '}' in template");
    const std::size_t close = text.find('}', pos);
    if (close == std::string_view::npos) throw TemplateError("unterminated slot in template");
    const std::string_view body = text.substr(pos + 1, close - pos - 1);
    const std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) {
      throw TemplateError("slot {" + std::string(body) + "} lacks a kind");
    }
    Slot slot;
    slot.kind = parse_kind(body.substr(0, colon), body);
    std::string_view rest = body.substr(colon + 1);
    const std::size_t dot = rest.find('.');
    slot.name = std::string(rest.substr(0, dot));
    if (dot != std::string_view::npos) slot.form = std::string(rest.substr(dot + 1));
    if (slot.name.empty()) throw TemplateError("slot {" + std::string(body) + "} lacks a name");
    if (!valid_form(slot.kind, slot.form)) {
      throw TemplateError("unknown form in slot {" + std::string(body) + "}");
    }
    slot.begin = pos;
    slot.end = close + 1;
    slots.push_back(std::move(slot));
    pos = close + 1;
  }
  return slots;
}

const NameEntry* find_name(const std::vector<NameEntry>& names, std::string_view name) {
  for (const NameEntry& n : names) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

std::string pronoun(const NameEntry& who, std::string_view form) {
  if (form == "he") return who.female ? "she" : "he";
  if (form == "He") return who.female ? "She" : "He";
  if (form == "him") return who.female ? "her" : "him";
  if (form == "his") return who.female ? "her" : "his";
  if (form == "His") return who.female ? "Her" : "His";
  return who.name;
}

std::string ordinal(std::int64_t n) {
  const std::int64_t tens = (n < 0 ? -n : n) % 100;
  const std::int64_t ones = tens % 10;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    if (ones == 1) suffix = "st";
    else if (ones == 2) suffix = "nd";
    else if (ones == 3) suffix = "rd";
  }
  return std::to_string(n) + suffix;
}

std::size_t count_tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  for (std::string tok; in >> tok;) ++n;
  return n;
}

}  // namespace

std::string slot_label(SlotKind kind, std::string_view name) {
  static constexpr std::array<std::string_view, 4> kKinds = {"number", "word", "name", "text"};
  return std::string(kKinds[static_cast<std::size_t>(kind)]) + ":" + std::string(name);
}

QuestionTemplate::QuestionTemplate(std::string id, std::string text, SlotSources sources)
    : id_(std::move(id)), text_(std::move(text)), sources_(std::move(sources)) {
  try {
    slots_ = scan_slots(text_);
  } catch (const TemplateError& e) {
    throw TemplateError("template " + id_ + ": " + e.what());
  }
  for (const Slot& s : slots_) {
    bool declared = false;
    switch (s.kind) {
      case SlotKind::Number: declared = sources_.numbers.count(s.name) != 0; break;
      case SlotKind::Word: declared = sources_.words.count(s.name) != 0; break;
      case SlotKind::Name: declared = !sources_.names.empty(); break;
      case SlotKind::Text: declared = sources_.texts.count(s.name) != 0; break;
    }
    if (!declared) {
      throw TemplateError("template " + id_ + ": slot " + slot_label(s.kind, s.name) +
                          " has no declared source");
    }
    if (s.kind == SlotKind::Word && s.form.size() > 1 && s.form[0] == '#' &&
        sources_.numbers.count(s.form.substr(1)) == 0) {
      throw TemplateError("template " + id_ + ": agreement with undeclared number " +
                          s.form.substr(1));
    }
  }
}

std::string number_to_words(std::int64_t n) {
  static constexpr std::array<std::string_view, 20> kSmall = {
      "zero",    "one",     "two",       "three",    "four",     "five",    "six",
      "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
      "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};
  static constexpr std::array<std::string_view, 10> kTens = {
      "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};
  if (n < 0) return "minus " + number_to_words(-n);
  if (n < 20) return std::string(kSmall[static_cast<std::size_t>(n)]);
  if (n < 100) {
    std::string out(kTens[static_cast<std::size_t>(n / 10)]);
    if (n % 10) out += "-" + std::string(kSmall[static_cast<std::size_t>(n % 10)]);
    return out;
  }
  if (n < 1000) {
    std::string out = number_to_words(n / 100) + " hundred";
    if (n % 100) out += " " + number_to_words(n % 100);
    return out;
  }
  return std::to_string(n);
}

std::string instantiate_template(const QuestionTemplate& tmpl, const Bindings& bindings, Rng& rng) {
  const SlotSources& src = tmpl.sources();

  // Resolve every slot name once, in order of first appearance.
  std::map<std::string, const WordEntry*> words;
  std::map<std::string, const NameEntry*> names;
  std::set<std::string> used_names;
  for (const auto& [slot, name] : bindings.names) used_names.insert(name);

  for (const Slot& s : tmpl.slots()) {
    if (s.kind == SlotKind::Number && !bindings.numbers.count(s.name)) {
      throw TemplateError("unbound slot " + slot_label(s.kind, s.name));
    }
    if (s.kind == SlotKind::Text && !bindings.texts.count(s.name)) {
      throw TemplateError("unbound slot " + slot_label(s.kind, s.name));
    }
    if (s.kind == SlotKind::Word && s.form.size() > 1 && s.form[0] == '#' &&
        !bindings.numbers.count(s.form.substr(1))) {
      throw TemplateError("unbound slot " + slot_label(SlotKind::Number, s.form.substr(1)));
    }
    if (s.kind == SlotKind::Word && !words.count(s.name)) {
      const std::vector<WordEntry>& list = src.words.at(s.name);
      auto pinned = bindings.words.find(s.name);
      if (pinned != bindings.words.end()) {
        auto it = std::find_if(list.begin(), list.end(),
                               [&](const WordEntry& w) { return w.singular == pinned->second; });
        if (it == list.end()) {
          throw TemplateError("word '" + pinned->second + "' is not listed for slot " +
                              slot_label(s.kind, s.name));
        }
        words[s.name] = &*it;
      } else {
        words[s.name] = &list[rng.index(list.size())];
      }
    }
    if (s.kind == SlotKind::Name && !names.count(s.name)) {
      auto pinned = bindings.names.find(s.name);
      if (pinned != bindings.names.end()) {
        const NameEntry* n = find_name(src.names, pinned->second);
        if (!n) {
          throw TemplateError("name '" + pinned->second + "' is not listed for slot " +
                              slot_label(s.kind, s.name));
        }
        names[s.name] = n;
      } else {
        std::vector<const NameEntry*> free;
        for (const NameEntry& n : src.names) {
          if (!used_names.count(n.name)) free.push_back(&n);
        }
        if (free.empty()) throw TemplateError("name list exhausted in template " + tmpl.id());
        names[s.name] = free[rng.index(free.size())];
      }
      used_names.insert(names[s.name]->name);
    }
  }

  std::string out;
  std::size_t pos = 0;
  const std::string& text = tmpl.text();
  for (const Slot& s : tmpl.slots()) {
    out.append(text, pos, s.begin - pos);
    pos = s.end;
    switch (s.kind) {
      case SlotKind::Number: {
        const std::int64_t v = bindings.numbers.at(s.name);
        if (s.form == "word") out += number_to_words(v);
        else if (s.form == "Word") out += capitalize(number_to_words(v));
        else if (s.form == "ord") out += ordinal(v);
        else out += std::to_string(v);
        break;
      }
      case SlotKind::Word: {
        const WordEntry& w = *words.at(s.name);
        if (s.form.empty()) out += w.singular;
        else if (s.form == "2") out += w.plural;
        else if (s.form == "cap") out += capitalize(w.singular);
        else if (s.form == "cap2") out += capitalize(w.plural);
        else out += bindings.numbers.at(s.form.substr(1)) == 1 ? w.singular : w.plural;
        break;
      }
      case SlotKind::Name: out += pronoun(*names.at(s.name), s.form); break;
      case SlotKind::Text: out += bindings.texts.at(s.name); break;
    }
  }
  out.append(text, pos, std::string::npos);

  if (out.find_first_of("{}") != std::string::npos) {
    throw TemplateError("template " + tmpl.id() + " left a slot marker unfilled");
  }
  if (count_tokens(out) > kMaxQuestionTokens) {
    throw TemplateError("template " + tmpl.id() + " produced more than " +
                        std::to_string(kMaxQuestionTokens) + " tokens");
  }
  return out;
}

TemplateBank TemplateBank::parse(std::string_view source, const std::vector<NameEntry>& names) {
  TemplateBank bank;
  bank.sources_.names = names;
  struct Pending {
    std::string id;
    std::string text;
  };
  std::vector<Pending> pending;
  bool in_template = false;

  std::size_t line_no = 0;
  for (std::string_view raw : split(source, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    const std::string where = "template bank line " + std::to_string(line_no);
    if (line.empty()) {
      in_template = false;
      continue;
    }
    if (line[0] == '#') continue;
    if (line[0] != '@') {
      if (!in_template) throw TemplateError(where + ": text outside a template");
      std::string& t = pending.back().text;
      if (!t.empty()) t += ' ';
      t += line;
      continue;
    }
    in_template = false;
    const std::size_t sp = line.find(' ');
    const std::string_view directive = line.substr(0, sp);
    const std::string_view rest = sp == std::string_view::npos ? "" : trim(line.substr(sp));
    const std::size_t eq = rest.find('=');
    const std::string name(trim(rest.substr(0, eq)));
    const std::string_view value = eq == std::string_view::npos ? "" : trim(rest.substr(eq + 1));
    if (name.empty()) throw TemplateError(where + ": directive without a name");

    if (directive == "@template") {
      pending.push_back({name, {}});
      in_template = true;
    } else if (directive == "@number") {
      const std::size_t dots = value.find("..");
      if (dots == std::string_view::npos) throw TemplateError(where + ": expected lo..hi");
      NumberRange r{parse_int(trim(value.substr(0, dots)), where),
                    parse_int(trim(value.substr(dots + 2)), where)};
      if (r.lo > r.hi) throw TemplateError(where + ": empty number range");
      bank.sources_.numbers[name] = r;
    } else if (directive == "@word") {
      std::vector<WordEntry> entries;
      for (std::string_view alt : split(value, '|')) {
        const std::size_t slash = alt.find('/');
        if (alt.empty() || slash == std::string_view::npos) {
          throw TemplateError(where + ": word entries are written singular/plural");
        }
        entries.push_back({std::string(trim(alt.substr(0, slash))),
                           std::string(trim(alt.substr(slash + 1)))});
      }
      bank.sources_.words[name] = std::move(entries);
    } else if (directive == "@text") {
      bank.sources_.texts.insert(name);
    } else {
      throw TemplateError(where + ": unknown directive " + std::string(directive));
    }
  }

  std::set<std::string> ids;
  for (Pending& p : pending) {
    if (!ids.insert(p.id).second) throw TemplateError("duplicate template id " + p.id);
    if (p.text.empty()) throw TemplateError("template " + p.id + " has no text");
    bank.templates_.emplace_back(p.id, std::move(p.text), bank.sources_);
  }
  return bank;
}

const QuestionTemplate& TemplateBank::get(std::string_view id) const {
  for (const QuestionTemplate& t : templates_) {
    if (t.id() == id) return t;
  }
  throw LookupError("unknown template " + std::string(id));
}

std::vector<const QuestionTemplate*> TemplateBank::with_prefix(std::string_view prefix) const {
  std::vector<const QuestionTemplate*> out;
  const std::string p = std::string(prefix) + ".";
  for (const QuestionTemplate& t : templates_) {
    if (t.id().compare(0, p.size(), p) == 0) out.push_back(&t);
  }
  return out;
}

const QuestionTemplate& TemplateBank::pick(std::string_view prefix, Rng& rng) const {
  const auto candidates = with_prefix(prefix);
  if (candidates.empty()) throw LookupError("no templates for " + std::string(prefix));
  return *candidates[rng.index(candidates.size())];
}

std::vector<NameEntry> parse_names(std::string_view source) {
  std::vector<NameEntry> out;
  std::size_t line_no = 0;
  for (std::string_view raw : split(source, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t sp = line.find(' ');
    const std::string_view gender = sp == std::string_view::npos ? "" : trim(line.substr(sp));
    if (gender != "m" && gender != "f") {
      throw TemplateError("names line " + std::to_string(line_no) + ": expected '<name> m|f'");
    }
    out.push_back({std::string(line.substr(0, sp)), gender == "f"});
  }
  return out;
}

const std::vector<NameEntry>& builtin_names() {
  static const std::vector<NameEntry> names = parse_names(embedded_file("names.txt"));
  return names;
}

const TemplateBank& template_bank(Family family) {
  static const std::vector<TemplateBank> banks = [] {
    std::vector<TemplateBank> out;
    for (int f = 0; f <= static_cast<int>(Family::WordProblem); ++f) {
      const std::string file = "templates/" + std::string(to_string(static_cast<Family>(f))) + ".txt";
      out.push_back(TemplateBank::parse(embedded_file(file), builtin_names()));
    }
    return out;
  }();
  return banks[static_cast<std::size_t>(family)];
}

std::vector<std::string> lint_bank(const TemplateBank& bank) {
  std::vector<std::string> problems;
  for (const QuestionTemplate& t : bank.templates()) {
    for (int end = 0; end < 2; ++end) {
      for (std::uint64_t draw = 0; draw < 8; ++draw) {
        Bindings b;
        for (const auto& [name, range] : bank.sources().numbers) {
          b.numbers[name] = end == 0 ? range.lo : range.hi;
        }
        for (const std::string& name : bank.sources().texts) b.texts[name] = "x";
        Rng rng(draw);
        try {
          instantiate_template(t, b, rng);
        } catch (const TemplateError& e) {
          problems.push_back(e.what());
        }
      }
    }
  }
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()), problems.end());
  return problems;
}

}  // namespace smartgen
