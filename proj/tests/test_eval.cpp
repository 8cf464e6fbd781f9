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
#include <cmath>
#include <fstream>

#include "doctest.h"
#include "smartgen/errors.hpp"
#include "smartgen/eval.hpp"
#include "support.hpp"

using namespace smartgen;

namespace {

const std::array<std::string, 5> kNineOptions = {"9", "10", "13", "17", "20"};

RootPuzzleSpec int_root(int id, SkillCategory cat) {
  RootPuzzleSpec s;
  s.root_id = id;
  s.category = cat;
  s.family = Family::FenceJump;
  s.answer_type = AnswerType::integer(0, 100);
  return s;
}

InstanceRecord int_record(int root, int inst, SkillCategory cat, std::int64_t answer,
                          std::array<std::string, 5> options, int index) {
  InstanceRecord r;
  r.root_id = root;
  r.instance_id = inst;
  r.category = cat;
  r.options = std::move(options);
  r.answer_index = index;
  r.answer_value = answer;
  return r;
}

// Options answer-1 .. answer+3 with the answer at `index`.
InstanceRecord shifted_record(int root, int inst, SkillCategory cat, std::int64_t answer, int index) {
  std::array<std::string, 5> options;
  for (int k = 0; k < 5; ++k) options[k] = std::to_string(answer + (k - index) * 3);
  return int_record(root, inst, cat, answer, options, index);
}

std::vector<InstanceKey> all_keys(const Dataset& d) {
  std::vector<InstanceKey> keys;
  for (const auto& r : d.records) keys.emplace_back(r.root_id, r.instance_id);
  return keys;
}

}  // namespace

TEST_CASE("closest option selection") {
  const AnswerType t = AnswerType::integer(0, 100);
  CHECK(select_option(Predicted{8.0}, kNineOptions, t) == 0);
  CHECK(select_option(Predicted{13.0}, kNineOptions, t) == 2);
  CHECK(select_option(Predicted{9.5}, kNineOptions, t) == 0);
  CHECK(select_option(Predicted{100.0}, kNineOptions, t) == 4);
  const std::array<std::string, 5> km = {"18 km", "20 km", "22 km", "24 km", "26 km"};
  CHECK(select_option(Predicted{21.2}, km, AnswerType::integer(1, 99, "km")) == 2);
  CHECK_THROWS_AS(select_option(Predicted{std::string("B")}, kNineOptions, t), TypeMismatchError);

  const std::array<std::string, 5> letters = {"A", "B", "C", "D", "E"};
  CHECK(select_option(Predicted{std::string("C")}, letters, AnswerType::option_label()) == 2);
  CHECK(select_option(Predicted{std::string("F")}, letters, AnswerType::option_label()) == kNoSelection);
  CHECK_THROWS_AS(select_option(Predicted{3.0}, letters, AnswerType::option_label()), TypeMismatchError);
}

TEST_CASE("exact hits always select the answer") {
  Rng rng(2);
  const AnswerType t = AnswerType::integer(0, 1000);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::int64_t> values = rng.sample(std::vector<std::int64_t>{1, 2, 5, 9, 14, 20, 33, 100, 250, 999}, 5);
    std::array<std::string, 5> options;
    for (int k = 0; k < 5; ++k) options[k] = std::to_string(values[k]);
    const int idx = static_cast<int>(rng.index(5));
    CHECK(select_option(Predicted{static_cast<double>(values[idx])}, options, t) == idx);
  }
}

TEST_CASE("solution versus option accuracy") {
  Dataset d;
  d.roots = {int_root(1, SkillCategory::Counting)};
  d.records = {int_record(1, 1, SkillCategory::Counting, 9, kNineOptions, 0)};
  const auto keys = all_keys(d);

  const EvalReport near = compute_metrics({{1, 1, 8.0}}, d, keys);
  CHECK(near.overall.s_acc == 0.0);
  CHECK(near.overall.o_acc == 100.0);

  const EvalReport exact = compute_metrics({{1, 1, 9.0}}, d, keys);
  CHECK(exact.overall.s_acc == 100.0);
  CHECK(exact.overall.o_acc == 100.0);

  const EvalReport none = compute_metrics({}, d, keys);
  CHECK(none.overall.s_acc == 0.0);
  CHECK(none.overall.o_acc == 0.0);
  CHECK(none.missing == 1);
  CHECK_THROWS_AS(compute_metrics({{1, 1, 9.0}, {1, 1, 8.0}}, d, keys), EvalError);
  CHECK_THROWS_AS(compute_metrics({{1, 7, 9.0}}, d, keys), EvalError);
}

TEST_CASE("empty predictions over n instances") {
  Dataset d;
  d.roots = {int_root(1, SkillCategory::Counting)};
  for (int i = 1; i <= 12; ++i) d.records.push_back(shifted_record(1, i, SkillCategory::Counting, 10 + i, i % 5));
  const EvalReport r = compute_metrics({}, d, all_keys(d));
  CHECK(r.missing == 12);
  CHECK(r.overall.o_acc == 0.0);
  CHECK(format_report(r, ReportFormat::Table).find("missing") != std::string::npos);
}

TEST_CASE("aggregation is macro over roots then categories") {
  Dataset d;
  d.roots = {int_root(1, SkillCategory::Counting), int_root(2, SkillCategory::Counting),
             int_root(3, SkillCategory::Logic)};
  // Root 1: 1 of 4 right. Root 2: 1 of 1. Root 3: 0 of 2.
  for (int i = 1; i <= 4; ++i) d.records.push_back(shifted_record(1, i, SkillCategory::Counting, 20, 0));
  d.records.push_back(shifted_record(2, 1, SkillCategory::Counting, 30, 1));
  for (int i = 1; i <= 2; ++i) d.records.push_back(shifted_record(3, i, SkillCategory::Logic, 40, 2));
  std::vector<Prediction> preds = {{1, 1, 20.0}, {1, 2, 50.0}, {1, 3, 50.0}, {1, 4, 50.0},
                                   {2, 1, 30.0}, {3, 1, 0.0},  {3, 2, 0.0}};
  const EvalReport r = compute_metrics(preds, d, all_keys(d));
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0].s_acc == doctest::Approx(25.0));
  CHECK(r.roots[1].s_acc == doctest::Approx(100.0));
  CHECK(r.roots[2].s_acc == doctest::Approx(0.0));
  const auto counting = std::find_if(r.categories.begin(), r.categories.end(),
                                     [](const MetricRow& m) { return m.key == "counting"; });
  REQUIRE(counting != r.categories.end());
  CHECK(counting->s_acc == doctest::Approx(62.5));
  CHECK(r.overall.s_acc == doctest::Approx(31.25));
  for (const MetricRow& row : r.rows()) CHECK(row.s_acc <= row.o_acc);

  std::reverse(preds.begin(), preds.end());
  const EvalReport shuffled = compute_metrics(preds, d, all_keys(d));
  CHECK(format_report(shuffled, ReportFormat::Records) == format_report(r, ReportFormat::Records));
}

TEST_CASE("S_acc never exceeds O_acc on random predictions") {
  Rng rng(19);
  Dataset d;
  for (int root = 1; root <= 6; ++root) {
    const auto cat = kAllCategories[root % kAllCategories.size()];
    d.roots.push_back(int_root(root, cat));
    for (int i = 1; i <= 30; ++i) {
      d.records.push_back(shifted_record(root, i, cat, rng.uniform_int(10, 60), static_cast<int>(rng.index(5))));
    }
  }
  std::vector<Prediction> preds;
  for (const auto& rec : d.records) {
    if (rng.bernoulli(0.1)) continue;
    const double v = std::get<std::int64_t>(rec.answer_value) + (rng.bernoulli(0.5) ? 0.0 : rng.uniform_real(-5, 5));
    preds.push_back({rec.root_id, rec.instance_id, v});
  }
  const EvalReport r = compute_metrics(preds, d, all_keys(d));
  for (const MetricRow& row : r.rows()) {
    CHECK(row.s_acc <= row.o_acc);
    CHECK(row.o_acc <= 100.0);
  }
}

TEST_CASE("greedy baseline predicts the train mode") {
  Dataset d;
  d.roots = {int_root(1, SkillCategory::Arithmetic)};
  const std::vector<std::int64_t> answers = {5, 5, 7, 5, 6};
  for (int i = 1; i <= 5; ++i) d.records.push_back(shifted_record(1, i, SkillCategory::Arithmetic, answers[i - 1], 0));
  SplitManifest s;
  s.train = {{1, 1}, {1, 2}, {1, 3}};
  s.test = {{1, 4}, {1, 5}};
  const EvalReport r = greedy_baseline(d, s);
  CHECK(r.name == "greedy");
  CHECK(r.overall.s_acc == doctest::Approx(50.0));

  // Tie {5, 5, 7, 7}: the smaller value wins.
  Dataset tie = d;
  tie.records[3] = shifted_record(1, 4, SkillCategory::Arithmetic, 7, 0);
  tie.records.push_back(shifted_record(1, 6, SkillCategory::Arithmetic, 5, 0));
  SplitManifest ts;
  ts.train = {{1, 1}, {1, 2}, {1, 3}, {1, 4}};
  ts.test = {{1, 5}, {1, 6}};
  CHECK(greedy_baseline(tie, ts).overall.s_acc == doctest::Approx(50.0));

  SplitManifest empty_train;
  empty_train.test = {{1, 1}};
  CHECK_THROWS_AS(greedy_baseline(d, empty_train), PreconditionError);
}

TEST_CASE("uniform baseline converges to one in five") {
  Dataset d;
  d.roots = {int_root(1, SkillCategory::Counting)};
  Rng gen(4);
  for (int i = 1; i <= 10000; ++i) {
    d.records.push_back(shifted_record(1, i, SkillCategory::Counting, 50, static_cast<int>(gen.index(5))));
  }
  Rng a(8), b(8);
  const EvalReport r = uniform_baseline(d, all_keys(d), a);
  CHECK(r.name == "uniform");
  CHECK(std::abs(r.overall.o_acc - 20.0) <= 1.5);
  CHECK(format_report(uniform_baseline(d, all_keys(d), b), ReportFormat::Records) ==
        format_report(r, ReportFormat::Records));

  Dataset one;
  one.roots = d.roots;
  one.records = {d.records.front()};
  Rng c(1);
  const double o = uniform_baseline(one, all_keys(one), c).overall.o_acc;
  CHECK((o == 0.0 || o == 100.0));
}

TEST_CASE("answer frequency standard deviation") {
  CHECK(answer_freq_std({0, 1, 2, 7, 0, 0}) == doctest::Approx(2.49).epsilon(0.002));
  CHECK(answer_freq_std({5, 5, 5, 5, 5, 5}) == 0.0);
  CHECK(answer_freq_std({6, 0, 0, 0, 0, 0}) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("pearson correlation") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
  const std::vector<double> x = {0.3, 0.9, 0.1, 0.5};
  CHECK(pearson(x, x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), EvalError);
  CHECK_THROWS_AS(pearson({1}, {1}), EvalError);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), EvalError);
}

TEST_CASE("answer positions on generated data are near uniform") {
  const Registry reg = default_registry();
  const Dataset d = generate_dataset(reg, 21, reg.ids(), 200, 1);
  std::vector<const InstanceRecord*> recs;
  for (const auto& r : d.records) recs.push_back(&r);
  const PositionStats s = answer_positions(recs);
  CHECK(s.total == d.records.size());
  for (int k = 0; k < 5; ++k) CHECK(std::abs(s.frequency(k) - 0.2) < 0.03);
  CHECK(s.p_value > 0.001);
}

TEST_CASE("prediction files") {
  const auto dir = testing::scratch_dir("predictions");
  std::filesystem::create_directories(dir);
  const std::vector<Prediction> preds = {{1, 1, 8.0}, {2, 3, std::string("C")}};
  write_predictions(preds, dir / "p.jsonl");
  const auto back = read_predictions(dir / "p.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(back[0].predicted == Predicted{8.0});
  CHECK(back[1].predicted == Predicted{std::string("C")});
  std::ofstream(dir / "bad.jsonl") << "{\"root_id\":1,\"instance_id\":1,\"predicted\":3}\n{\"root_id\":1\n";
  try {
    read_predictions(dir / "bad.jsonl");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(parse_report_format("records") == ReportFormat::Records);
  CHECK_THROWS_AS(parse_report_format("xml"), PreconditionError);
}
