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

#include "smartgen/options.hpp"

#include <algorithm>
#include <set>

#include "smartgen/errors.hpp"

namespace smartgen {
namespace {

std::int64_t half_width(std::int64_t answer) {
  const std::int64_t mag = answer < 0 ? -answer : answer;
  return std::max<std::int64_t>(3, (mag + 1) / 2);
}

std::vector<std::int64_t> window_values(std::int64_t answer, const IntegerWindow& w,
                                        std::int64_t width, const std::set<std::int64_t>& exclude) {
  std::vector<std::int64_t> out;
  std::int64_t lo = std::max(answer - width, w.min_value);
  std::int64_t hi = answer + width;
  if (w.max_value) hi = std::min(hi, *w.max_value);
  for (std::int64_t v = lo; v <= hi; ++v) {
    if (v != answer && !exclude.count(v)) out.push_back(v);
  }
  return out;
}

// Four distinct integer distractors, in random order.
std::vector<std::int64_t> integer_distractors(std::int64_t answer, const IntegerPool& pool,
                                              Rng& rng) {
  const IntegerWindow& w = pool.fallback;
  std::vector<std::int64_t> preferred;
  for (std::int64_t v : pool.preferred) {
    const bool in_range = v >= w.min_value && (!w.max_value || v <= *w.max_value);
    if (in_range && v != answer &&
        std::find(preferred.begin(), preferred.end(), v) == preferred.end()) {
      preferred.push_back(v);
    }
  }
  if (preferred.size() >= 4) return rng.sample(preferred, 4);

  std::vector<std::int64_t> chosen = preferred;
  const std::set<std::int64_t> taken(chosen.begin(), chosen.end());
  std::int64_t width = half_width(answer);
  for (int widen = 0; widen <= kMaxWindowWidenings; ++widen, width *= 2) {
    std::vector<std::int64_t> extra = window_values(answer, w, width, taken);
    if (chosen.size() + extra.size() >= 4) {
      for (std::int64_t v : rng.sample(extra, 4 - chosen.size())) chosen.push_back(v);
      rng.shuffle(chosen);
      return chosen;
    }
  }
  throw DegeneracyError("no four distinct distractors near " + std::to_string(answer));
}

}  // namespace

OptionSet assemble_options(const AnswerValue& answer, const AnswerType& type,
                           const OptionPolicy& policy, Rng& rng) {
  if (!type.admits(answer)) {
    throw PreconditionError("answer " + render_value(answer) + " does not fit its answer type");
  }
  OptionSet out;
  out.answer_type = type;

  if (std::holds_alternative<LabelPolicy>(policy)) {
    if (type.kind != AnswerKind::OptionLabel) {
      throw PreconditionError("label options need an option-label answer");
    }
    for (int i = 0; i < kNumOptions; ++i) out.options[i] = option_letter(i);
    out.answer_index = option_index(std::get<std::string>(answer));
    return out;
  }

  std::vector<std::string> distractors;
  if (const auto* decoy = std::get_if<DecoyPolicy>(&policy)) {
    std::vector<std::string> pool;
    const std::string correct = render_answer(answer, type);
    for (const std::string& d : decoy->decoys) {
      if (d != correct && std::find(pool.begin(), pool.end(), d) == pool.end()) pool.push_back(d);
    }
    if (pool.size() < 4) throw DegeneracyError("fewer than four distinct decoys");
    distractors = rng.sample(pool, 4);
  } else {
    if (type.kind != AnswerKind::Integer) {
      throw PreconditionError("integer option policy on a non-integer answer");
    }
    IntegerPool pool;
    if (const auto* p = std::get_if<IntegerPool>(&policy)) pool = *p;
    else pool.fallback = std::get<IntegerWindow>(policy);
    for (std::int64_t v : integer_distractors(std::get<std::int64_t>(answer), pool, rng)) {
      distractors.push_back(render_answer(v, type));
    }
  }

  out.answer_index = static_cast<int>(rng.index(kNumOptions));
  std::size_t next = 0;
  for (int i = 0; i < kNumOptions; ++i) {
    out.options[i] = i == out.answer_index ? render_answer(answer, type) : distractors[next++];
  }
  return out;
}

}  // namespace smartgen
