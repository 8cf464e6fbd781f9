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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smartgen/core.hpp"
#include "smartgen/dataset.hpp"
#include "smartgen/rng.hpp"

namespace smartgen {

// Integer predictions may be fractional; labels and words are strings.
using Predicted = std::variant<double, std::string>;

struct Prediction {
  int root_id = 0;
  int instance_id = 0;
  Predicted predicted;
};

Predicted to_predicted(const AnswerValue& value);
std::string render_predicted(const Predicted& value);

inline constexpr int kNoSelection = -1;

// Integer: closest option by absolute difference, ties to the lower index.
// Label/Word: exact match or kNoSelection. Throws TypeMismatchError when the
// prediction's type does not fit `type`.
int select_option(const Predicted& predicted, const std::array<std::string, 5>& options,
                  const AnswerType& type);

// True when the prediction equals the answer value exactly.
bool solves(const Predicted& predicted, const AnswerValue& answer);

// One report line. Accuracies are percentages.
struct MetricRow {
  std::string level;  // "root", "category" or "overall"
  std::string key;    // root id, category name or "all"
  std::size_t n = 0;
  std::size_t missing = 0;
  double s_acc = 0.0;
  double o_acc = 0.0;
};

// Frequency of the correct option's letter over a set of instances.
struct PositionStats {
  std::array<std::size_t, 5> counts{};
  std::size_t total = 0;
  double chi_square = 0.0;
  double p_value = 1.0;  // 4 degrees of freedom

  double frequency(int letter) const;
};

PositionStats answer_positions(const std::vector<const InstanceRecord*>& records);

struct EvalReport {
  std::string name;
  std::vector<MetricRow> roots;
  std::vector<MetricRow> categories;
  MetricRow overall;
  std::size_t missing = 0;
  std::size_t ignored = 0;  // predictions for instances outside the evaluated set
  PositionStats positions;

  std::vector<MetricRow> rows() const;
};

// Scores `predictions` on the instances in `keys`. Missing predictions count
// as wrong; roots are averaged within a category and categories overall.
// Throws EvalError on duplicates or unknown instances.
EvalReport compute_metrics(const std::vector<Prediction>& predictions, const Dataset& dataset,
                           const std::vector<InstanceKey>& keys, std::string name = "eval");

// Predicts each root's most frequent train answer (ties to the smallest).
// Throws PreconditionError when an evaluated root has no train instances.
EvalReport greedy_baseline(const Dataset& dataset, const SplitManifest& split);

// Picks one of the five options uniformly for every evaluated instance.
EvalReport uniform_baseline(const Dataset& dataset, const std::vector<InstanceKey>& keys, Rng& rng);

// Population standard deviation of answer counts over A..E and OTHER.
double answer_freq_std(const std::array<double, 6>& counts);

// Throws EvalError on length mismatch, fewer than two points or zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

enum class ReportFormat { Table, Records };

ReportFormat parse_report_format(std::string_view name);
std::string format_report(const EvalReport& report, ReportFormat format);

// Line-delimited {root_id, instance_id, predicted}. Throws ParseError.
std::vector<Prediction> read_predictions(const std::filesystem::path& file);
void write_predictions(const std::vector<Prediction>& predictions, const std::filesystem::path& file);

}  // namespace smartgen
