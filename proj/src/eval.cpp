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

#include "smartgen/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "smartgen/errors.hpp"

namespace smartgen {

namespace {

// Leading integer of an option such as "18" or "18 km".
std::int64_t option_number(const std::string& text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || (ptr != text.data() + text.size() && *ptr != ' ')) {
    throw TypeMismatchError("option '" + text + "' is not an integer");
  }
  return v;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Predicted to_predicted(const AnswerValue& value) {
  if (const auto* v = std::get_if<std::int64_t>(&value)) return static_cast<double>(*v);
  return std::get<std::string>(value);
}

std::string render_predicted(const Predicted& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  const double d = std::get<double>(value);
  if (d == std::floor(d) && std::abs(d) < 1e15) return std::to_string(static_cast<std::int64_t>(d));
  std::ostringstream ss;
  ss << d;
  return ss.str();
}

int select_option(const Predicted& predicted, const std::array<std::string, 5>& options,
                  const AnswerType& type) {
  if (type.kind == AnswerKind::Integer) {
    const auto* p = std::get_if<double>(&predicted);
    if (!p) throw TypeMismatchError("text prediction '" + std::get<std::string>(predicted) + "' for an integer answer");
    if (!std::isfinite(*p)) throw TypeMismatchError("non-finite prediction");
    int best = 0;
    double best_d = 0.0;
    for (int i = 0; i < kNumOptions; ++i) {
      const double d = std::abs(*p - static_cast<double>(option_number(options[i])));
      if (i == 0 || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    return best;
  }
  const auto* s = std::get_if<std::string>(&predicted);
  if (!s) throw TypeMismatchError("numeric prediction for a " + std::string(to_string(type.kind)) + " answer");
  for (int i = 0; i < kNumOptions; ++i) {
    if (options[i] == *s) return i;
  }
  return kNoSelection;
}

bool solves(const Predicted& predicted, const AnswerValue& answer) {
  if (const auto* a = std::get_if<std::int64_t>(&answer)) {
    const auto* p = std::get_if<double>(&predicted);
    return p && *p == static_cast<double>(*a);
  }
  const auto* p = std::get_if<std::string>(&predicted);
  return p && *p == std::get<std::string>(answer);
}

double PositionStats::frequency(int letter) const {
  return total == 0 ? 0.0 : static_cast<double>(counts.at(static_cast<std::size_t>(letter))) / static_cast<double>(total);
}

PositionStats answer_positions(const std::vector<const InstanceRecord*>& records) {
  PositionStats s;
  for (const InstanceRecord* r : records) ++s.counts.at(static_cast<std::size_t>(r->answer_index));
  s.total = records.size();
  if (s.total == 0) return s;
  const double expected = static_cast<double>(s.total) / kNumOptions;
  for (std::size_t c : s.counts) s.chi_square += std::pow(static_cast<double>(c) - expected, 2) / expected;
  // Chi-square survival function for 4 degrees of freedom.
  s.p_value = std::exp(-s.chi_square / 2) * (1 + s.chi_square / 2);
  return s;
}

std::vector<MetricRow> EvalReport::rows() const {
  std::vector<MetricRow> out = roots;
  out.insert(out.end(), categories.begin(), categories.end());
  out.push_back(overall);
  return out;
}

EvalReport compute_metrics(const std::vector<Prediction>& predictions, const Dataset& dataset,
                           const std::vector<InstanceKey>& keys, std::string name) {
  std::map<InstanceKey, const InstanceRecord*> index;
  for (const InstanceRecord& r : dataset.records) index[{r.root_id, r.instance_id}] = &r;

  std::map<InstanceKey, const Predicted*> by_key;
  for (const Prediction& p : predictions) {
    const InstanceKey k{p.root_id, p.instance_id};
    if (!index.count(k)) {
      throw EvalError("prediction for unknown instance (" + std::to_string(k.first) + ", " +
                      std::to_string(k.second) + ")");
    }
    if (!by_key.emplace(k, &p.predicted).second) {
      throw EvalError("duplicate prediction for (" + std::to_string(k.first) + ", " +
                      std::to_string(k.second) + ")");
    }
  }

  EvalReport report;
  report.name = std::move(name);
  struct Tally {
    std::size_t n = 0, missing = 0, solved = 0, selected = 0;
  };
  std::map<int, Tally> tally;
  std::set<InstanceKey> evaluated;
  std::vector<const InstanceRecord*> records;
  for (const InstanceKey& k : keys) {
    const auto it = index.find(k);
    if (it == index.end()) {
      throw EvalError("split refers to unknown instance (" + std::to_string(k.first) + ", " +
                      std::to_string(k.second) + ")");
    }
    if (!evaluated.insert(k).second) continue;
    const InstanceRecord& r = *it->second;
    records.push_back(&r);
    Tally& t = tally[r.root_id];
    ++t.n;
    const auto p = by_key.find(k);
    if (p == by_key.end()) {
      ++t.missing;
      continue;
    }
    const AnswerType& type = dataset.root(r.root_id).answer_type;
    const int chosen = select_option(*p->second, r.options, type);
    t.solved += solves(*p->second, r.answer_value);
    t.selected += chosen == r.answer_index;
  }
  for (const auto& [k, _] : by_key) report.ignored += !evaluated.count(k);

  std::map<SkillCategory, std::vector<const MetricRow*>> per_category;
  report.roots.reserve(tally.size());
  for (const auto& [root, t] : tally) {
    MetricRow row{"root", std::to_string(root), t.n, t.missing,
                  100.0 * static_cast<double>(t.solved) / static_cast<double>(t.n),
                  100.0 * static_cast<double>(t.selected) / static_cast<double>(t.n)};
    report.missing += t.missing;
    report.roots.push_back(row);
  }
  for (const MetricRow& row : report.roots) {
    per_category[dataset.root(std::stoi(row.key)).category].push_back(&row);
  }
  std::vector<double> cat_s, cat_o;
  std::size_t total_n = 0;
  for (SkillCategory c : kAllCategories) {
    const auto it = per_category.find(c);
    if (it == per_category.end()) continue;
    MetricRow row{"category", std::string(to_string(c)), 0, 0, 0.0, 0.0};
    std::vector<double> s, o;
    for (const MetricRow* r : it->second) {
      row.n += r->n;
      row.missing += r->missing;
      s.push_back(r->s_acc);
      o.push_back(r->o_acc);
    }
    row.s_acc = mean(s);
    row.o_acc = mean(o);
    cat_s.push_back(row.s_acc);
    cat_o.push_back(row.o_acc);
    total_n += row.n;
    report.categories.push_back(row);
  }
  report.overall = {"overall", "all", total_n, report.missing, mean(cat_s), mean(cat_o)};
  report.positions = answer_positions(records);
  return report;
}

EvalReport greedy_baseline(const Dataset& dataset, const SplitManifest& split) {
  std::map<InstanceKey, const InstanceRecord*> index;
  for (const InstanceRecord& r : dataset.records) index[{r.root_id, r.instance_id}] = &r;

  std::map<int, std::map<AnswerValue, std::size_t>> counts;
  for (const InstanceKey& k : split.train) {
    const auto it = index.find(k);
    if (it == index.end()) throw EvalError("split refers to an unknown instance");
    ++counts[k.first][it->second->answer_value];
  }
  std::map<int, AnswerValue> mode;
  for (const auto& [root, c] : counts) {
    // std::map iterates in ascending value order, so the first maximum is the smallest.
    auto best = c.begin();
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    mode[root] = best->first;
  }
  std::vector<Prediction> predictions;
  for (const InstanceKey& k : split.test) {
    const auto m = mode.find(k.first);
    if (m == mode.end()) {
      throw PreconditionError("root " + std::to_string(k.first) + " has no train instances for the greedy baseline");
    }
    predictions.push_back({k.first, k.second, to_predicted(m->second)});
  }
  return compute_metrics(predictions, dataset, split.test, "greedy");
}

EvalReport uniform_baseline(const Dataset& dataset, const std::vector<InstanceKey>& keys, Rng& rng) {
  std::map<InstanceKey, const InstanceRecord*> index;
  for (const InstanceRecord& r : dataset.records) index[{r.root_id, r.instance_id}] = &r;
  std::vector<Prediction> predictions;
  std::set<InstanceKey> seen;
  for (const InstanceKey& k : keys) {
    const auto it = index.find(k);
    if (it == index.end()) throw EvalError("split refers to an unknown instance");
    if (!seen.insert(k).second) continue;
    const std::string& option = it->second->options[rng.index(kNumOptions)];
    const AnswerType& type = dataset.root(k.first).answer_type;
    Predicted p = option;
    if (type.kind == AnswerKind::Integer) p = static_cast<double>(option_number(option));
    predictions.push_back({k.first, k.second, std::move(p)});
  }
  return compute_metrics(predictions, dataset, keys, "uniform");
}

double answer_freq_std(const std::array<double, 6>& counts) {
  const double m = std::accumulate(counts.begin(), counts.end(), 0.0) / 6.0;
  double ss = 0.0;
  for (double c : counts) ss += (c - m) * (c - m);
  return std::sqrt(ss / 6.0);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw EvalError("pearson: vectors differ in length");
  if (x.size() < 2) throw EvalError("pearson: need at least two points");
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw EvalError("pearson: correlation undefined for zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "records") return ReportFormat::Records;
  throw PreconditionError("unknown report format '" + std::string(name) + "'");
}

std::string format_report(const EvalReport& report, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Records) {
    for (const MetricRow& row : report.rows()) {
      ordered_json j;
      j["report"] = report.name;
      j["level"] = row.level;
      j["key"] = row.key;
      j["n"] = row.n;
      j["missing"] = row.missing;
      j["s_acc"] = row.s_acc;
      j["o_acc"] = row.o_acc;
      out += j.dump() + "\n";
    }
    ordered_json pos;
    pos["report"] = report.name;
    pos["level"] = "answer_positions";
    for (int i = 0; i < kNumOptions; ++i) pos[option_letter(i)] = report.positions.counts[static_cast<std::size_t>(i)];
    pos["chi_square"] = report.positions.chi_square;
    pos["p_value"] = report.positions.p_value;
    out += pos.dump() + "\n";
    return out;
  }
  char line[160];
  out += "report: " + report.name + "\n";
  std::snprintf(line, sizeof line, "%-9s %-18s %7s %8s %8s %8s\n", "level", "key", "n", "missing", "S_acc", "O_acc");
  out += line;
  for (const MetricRow& row : report.rows()) {
    std::snprintf(line, sizeof line, "%-9s %-18s %7zu %8zu %8s %8s\n", row.level.c_str(), row.key.c_str(), row.n,
                  row.missing, fixed(row.s_acc).c_str(), fixed(row.o_acc).c_str());
    out += line;
  }
  out += "answer positions:";
  for (int i = 0; i < kNumOptions; ++i) {
    out += " " + option_letter(i) + " " + fixed(100.0 * report.positions.frequency(i), 1) + "%";
  }
  out += "  chi2 " + fixed(report.positions.chi_square, 3) + "  p " + fixed(report.positions.p_value, 4) + "\n";
  if (report.missing) out += "missing predictions: " + std::to_string(report.missing) + "\n";
  if (report.ignored) out += "ignored predictions: " + std::to_string(report.ignored) + "\n";
  return out;
}

std::vector<Prediction> read_predictions(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IntegrityError("cannot read " + file.string());
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      Prediction p;
      p.root_id = j.at("root_id").get<int>();
      p.instance_id = j.at("instance_id").get<int>();
      const json& v = j.at("predicted");
      if (v.is_number()) p.predicted = v.get<double>();
      else if (v.is_string()) p.predicted = v.get<std::string>();
      else throw ParseError(line_no, "predicted must be a number or a string");
      out.push_back(std::move(p));
    } catch (const ParseError&) {
      throw;
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

void write_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw IntegrityError("cannot write " + file.string());
  for (const Prediction& p : predictions) {
    ordered_json j;
    j["root_id"] = p.root_id;
    j["instance_id"] = p.instance_id;
    if (const auto* d = std::get_if<double>(&p.predicted)) j["predicted"] = *d;
    else j["predicted"] = std::get<std::string>(p.predicted);
    out << j.dump() << '\n';
  }
}

}  // namespace smartgen
