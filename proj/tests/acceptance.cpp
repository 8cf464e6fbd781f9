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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria. Usage: smartgen_acceptance [path/to/smartgen]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "smartgen/dataset.hpp"
#include "smartgen/errors.hpp"
#include "smartgen/eval.hpp"
#include "smartgen/generators.hpp"
#include "smartgen/llm.hpp"
#include "smartgen/oracles.hpp"
#include "support.hpp"

using namespace smartgen;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative path -> content hash for every file under `root`.
std::map<std::string, std::size_t> tree_hashes(const fs::path& root) {
  std::map<std::string, std::size_t> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).string()] = std::hash<std::string>{}(read_bytes(e.path()));
    }
  }
  return out;
}

std::vector<InstanceKey> all_keys(const Dataset& d) {
  std::vector<InstanceKey> keys;
  for (const auto& r : d.records) keys.emplace_back(r.root_id, r.instance_id);
  return keys;
}

bool rows_ordered(const EvalReport& r) {
  for (const MetricRow& row : r.rows()) {
    if (row.s_acc > row.o_acc + 1e-9 || row.s_acc < 0 || row.o_acc > 100) return false;
  }
  return true;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const Registry reg = default_registry();
  const fs::path dir = testing::scratch_dir("acceptance_oracle");
  write_manifest(generate_dataset(reg, 20260101, reg.ids(), 500), dir);
  const Dataset d = read_manifest(dir);
  const auto mismatches = verify_dataset(d);
  const double s = seconds_since(t0);
  fs::remove_all(dir);
  return {d.records.size() >= 5500 && mismatches.empty() && s < 60.0,
          std::to_string(d.records.size()) + " instances, " + std::to_string(mismatches.size()) +
              " mismatches, " + fmt(s) + " s"};
}

Outcome golden_answers() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  if (simulate_fence_jumps(10, 4, 1, 4) != 56) bad.push_back("fence");
  enum { Ball, Blocks, Game, Puzzle, Car };
  using K = ShelfConstraint::Kind;
  const std::vector<ShelfConstraint> shelf = {{K::Below, Blocks, Ball}, {K::Below, Ball, Car}, {K::DirectlyAbove, Game, Ball}};
  if (impossible_shelf_positions(5, shelf, Puzzle) != std::vector<int>{3}) bad.push_back("shelf");
  const std::map<int, std::int64_t> expected = {{7, 12}, {9, 2},  {30, 13}, {38, 3},  {47, 2}, {71, 26},
                                                {88, 43}, {89, 4}, {90, 10}, {91, 18}, {93, 18}};
  std::size_t seen = 0;
  for (const ReferenceWordProblem& p : reference_word_problems()) {
    const auto it = expected.find(p.spec.root_id);
    if (it == expected.end()) continue;
    ++seen;
    const bool ok = solve_word_problem(p.config) == it->second && oracle::word_problem(p.config) == it->second &&
                    p.instance.answer_value() == AnswerValue{it->second};
    if (!ok) bad.push_back("#" + std::to_string(it->first));
  }
  if (seen != expected.size()) bad.push_back("missing word problems");
  const double s = seconds_since(t0);
  std::string detail = bad.empty() ? "fence 56, shelf {3}, 11 word problems" : "wrong:";
  for (const auto& b : bad) detail += " " + b;
  return {bad.empty() && s < 1.0, detail + ", " + fmt(s, 3) + " s"};
}

Outcome metric_semantics() {
  Dataset d;
  RootPuzzleSpec spec;
  spec.root_id = 1;
  spec.family = Family::FenceJump;
  spec.answer_type = AnswerType::integer(0, 100);
  d.roots = {spec};
  InstanceRecord r;
  r.root_id = 1;
  r.instance_id = 1;
  r.options = {"9", "10", "13", "17", "20"};
  r.answer_index = 0;
  r.answer_value = std::int64_t{9};
  d.records = {r};
  const EvalReport worked = compute_metrics({{1, 1, 8.0}}, d, all_keys(d));
  const bool example = worked.overall.s_acc == 0.0 && worked.overall.o_acc == 100.0;

  // Row ordering over noisy predictions and both baselines on generated data.
  const Registry reg = default_registry();
  const Dataset g = generate_dataset(reg, 77, reg.ids(), 100);
  Rng rng(5);
  std::vector<Prediction> preds;
  for (const InstanceRecord& rec : g.records) {
    const int pick = rng.bernoulli(0.5) ? rec.answer_index : static_cast<int>(rng.index(5));
    Predicted p = to_predicted(rec.answer_value);
    if (std::holds_alternative<double>(p)) {
      p = std::get<double>(p) + (rng.bernoulli(0.5) ? 0.0 : rng.uniform_real(-3, 3));
    } else {
      p = g.root(rec.root_id).answer_type.kind == AnswerKind::OptionLabel ? Predicted{option_letter(pick)}
                                                                           : Predicted{rec.options[pick]};
    }
    preds.push_back({rec.root_id, rec.instance_id, p});
  }
  Rng split_rng(1);
  const SplitManifest s = make_split(g, SplitScheme::IS, {}, split_rng);
  Rng uni(2);
  const bool ordered = rows_ordered(compute_metrics(preds, g, all_keys(g))) && rows_ordered(greedy_baseline(g, s)) &&
                       rows_ordered(uniform_baseline(g, s.test, uni));
  return {example && ordered, "worked example S_acc " + fmt(worked.overall.s_acc, 0) + " O_acc " +
                                  fmt(worked.overall.o_acc, 0) + ", S_acc <= O_acc on all rows: " +
                                  (ordered ? "yes" : "no")};
}

Outcome baseline_calibration() {
  const Registry reg = default_registry();
  const Dataset d = generate_dataset(reg, 31337, reg.ids(), 910);
  Rng rng(9);
  const EvalReport uniform = uniform_baseline(d, all_keys(d), rng);
  std::vector<const InstanceRecord*> recs;
  for (const auto& r : d.records) recs.push_back(&r);
  const PositionStats pos = answer_positions(recs);
  bool positions_ok = pos.p_value > 0.01;
  std::string freq;
  for (int k = 0; k < 5; ++k) {
    positions_ok = positions_ok && std::abs(100.0 * pos.frequency(k) - 20.0) <= 1.5;
    freq += " " + option_letter(k) + "=" + fmt(100.0 * pos.frequency(k), 1);
  }
  Rng split_rng(3);
  const EvalReport greedy = greedy_baseline(d, make_split(d, SplitScheme::IS, {}, split_rng));
  const bool ok = d.records.size() >= 10000 && std::abs(uniform.overall.o_acc - 20.0) <= 1.5 && positions_ok &&
                  greedy.overall.o_acc >= 12.0 && greedy.overall.o_acc <= 32.0;
  return {ok, std::to_string(d.records.size()) + " instances, uniform O_acc " + fmt(uniform.overall.o_acc) +
                  ", positions" + freq + " (p " + fmt(pos.p_value, 3) + "), greedy O_acc " +
                  fmt(greedy.overall.o_acc)};
}

Outcome split_cardinalities() {
  std::vector<std::string> bad;
  const Registry one = default_registry();
  const Dataset is_data = generate_dataset(one, 4, {1}, 2000);
  Rng r1(1);
  const SplitManifest is = make_split(is_data, SplitScheme::IS, {}, r1);
  if (!(is.train.size() == 1600 && is.val.size() == 100 && is.test.size() == 300 &&
        is.test.front() == InstanceKey{1, 1701} && is.test.back() == InstanceKey{1, 2000})) {
    bad.push_back("IS");
  }

  const Registry full = testing::full_registry(101);
  const Dataset d = generate_dataset(full, 5, full.ids(), 20);
  Rng r2(2), r3(2), r4(2);
  const SplitManifest ps = make_split(d, SplitScheme::PS, {}, r2);
  std::set<int> train_roots, test_roots;
  for (const auto& k : ps.train) train_roots.insert(k.first);
  for (const auto& k : ps.test) test_roots.insert(k.first);
  if (!(train_roots.size() == 77 && ps.ps_val_roots.size() == 3 && ps.ps_test_roots == reference_ps_test_ids() &&
        test_roots.size() == 21)) {
    bad.push_back("PS");
  }
  const SplitManifest fs_split = make_split(d, SplitScheme::FS, {}, r3);
  std::map<int, int> moved;
  for (const auto& k : fs_split.train) {
    if (test_roots.count(k.first)) ++moved[k.first];
  }
  bool fs_ok = moved.size() == 21 && fs_split.train.size() == ps.train.size() + 210;
  for (const auto& [_, n] : moved) fs_ok = fs_ok && n == 10;
  if (!fs_ok) bad.push_back("FS");

  const SplitManifest as = make_split(d, SplitScheme::AS, {}, r4);
  std::map<InstanceKey, const InstanceRecord*> by_key;
  for (const auto& r : d.records) by_key[{r.root_id, r.instance_id}] = &r;
  std::map<int, std::set<std::string>> held;
  for (const auto& k : as.test) held[k.first].insert(render_value(by_key.at(k)->answer_value));
  std::size_t leaks = 0;
  for (const auto& k : as.train) leaks += held[k.first].count(render_value(by_key.at(k)->answer_value));
  if (leaks) bad.push_back("AS (" + std::to_string(leaks) + " leaks)");

  std::string detail = "IS " + std::to_string(is.train.size()) + "/" + std::to_string(is.val.size()) + "/" +
                       std::to_string(is.test.size()) + ", PS roots " + std::to_string(train_roots.size()) + "/" +
                       std::to_string(ps.ps_val_roots.size()) + "/" + std::to_string(test_roots.size()) +
                       ", FS +" + std::to_string(fs_split.train.size() - ps.train.size()) + ", AS leaks " +
                       std::to_string(leaks);
  return {bad.empty(), detail};
}

Outcome statistics() {
  const double s = answer_freq_std({0, 1, 2, 7, 0, 0});
  const double up = pearson({1, 2, 3, 4}, {2, 4, 6, 8});
  const double down = pearson({1, 2, 3, 4}, {8, 6, 4, 2});
  return {std::abs(s - 2.49) <= 0.005 && up == 1.0 && down == -1.0,
          "std " + fmt(s, 4) + ", pearson " + fmt(up, 6) + " / " + fmt(down, 6)};
}

Outcome determinism(const std::string& cli) {
  const fs::path a = testing::scratch_dir("acceptance_det_a");
  const fs::path b = testing::scratch_dir("acceptance_det_b");
  std::string how;
  if (!cli.empty()) {
    for (const fs::path& dir : {a, b}) {
      const std::string cmd = "\"" + cli + "\" generate --seed 7 --instances-per-root 50 --out \"" + dir.string() +
                              "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "generate failed"};
    }
    how = "two CLI runs";
  } else {
    const Registry reg = default_registry();
    write_manifest(generate_dataset(reg, 7, reg.ids(), 50, 1), a);
    write_manifest(generate_dataset(reg, 7, reg.ids(), 50, 4), b);
    how = "two library runs (1 and 4 threads)";
  }
  const auto ha = tree_hashes(a);
  const auto hb = tree_hashes(b);
  fs::remove_all(a);
  fs::remove_all(b);
  return {ha == hb && ha.size() == 552, how + ", " + std::to_string(ha.size()) + " files, trees " +
                                            (ha == hb ? "identical" : "differ")};
}

Outcome parser_accuracy() {
  std::ifstream in(std::string(SMARTGEN_FIXTURE_DIR) + "/llm_transcripts.jsonl");
  std::size_t total = 0, correct = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    std::array<std::string, 5> options;
    const auto opts = j.at("options").get<std::vector<std::string>>();
    std::copy(opts.begin(), opts.end(), options.begin());
    ++total;
    if (choice_name(parse_choice(j.at("text").get<std::string>(), options)) == j.at("label").get<std::string>()) {
      ++correct;
    }
  }
  const double acc = total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0;
  return {total >= 40 && acc >= 95.0,
          std::to_string(correct) + "/" + std::to_string(total) + " transcripts (" + fmt(acc, 1) + "%)"};
}

Outcome road_grid() {
  const Registry reg = default_registry();
  int root = 0;
  for (const auto& s : reg.specs()) {
    if (s.family == Family::RoadGrid) root = s.root_id;
  }
  std::size_t bad = 0;
  for (int i = 1; i <= 500; ++i) {
    const PuzzleInstance p = generate_instance(reg, 555, root, i);
    const json& c = p.config();
    const int n = c.at("n").get<int>();
    const int k = c.at("k").get<int>();
    auto place = [&](BinaryMatrix& x, const json& cell) {
      const int r = cell.at(0).get<int>(), col = cell.at(1).get<int>();
      if (x[r][col]) return false;
      x[r][col] = 1;
      x[r + n][(col + n) % (2 * n)] = 1;
      return true;
    };
    BinaryMatrix shown(2 * n, std::vector<int>(2 * n, 0));
    for (const json& cell : c.at("houses")) place(shown, cell);
    std::vector<int> fits;
    for (int cand = 0; cand < 5; ++cand) {
      BinaryMatrix x = shown;
      if (place(x, c.at("candidates").at(cand)) && oracle::road_grid_valid(x, n, k)) fits.push_back(cand);
    }
    if (fits != std::vector<int>{p.answer_index()}) ++bad;
  }
  return {bad == 0, "500 layouts, " + std::to_string(bad) + " without exactly one restoring candidate"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence", oracle_equivalence},
      {"2 golden answers", golden_answers},
      {"3 metric semantics", metric_semantics},
      {"4 baseline calibration", baseline_calibration},
      {"5 split cardinalities", split_cardinalities},
      {"6 statistics", statistics},
      {"7 determinism", [&] { return determinism(cli); }},
      {"8 llm answer parser", parser_accuracy},
      {"9 road grid", road_grid},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed;
}
