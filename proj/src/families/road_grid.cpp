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
#include <numbers>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

using Cell = std::pair<int, int>;  // (straight road i, column j in [0, 2n))

constexpr Point kCenter{112.0, 112.0};
constexpr double kInnerRadius = 26.0;
constexpr double kOuterRadius = 92.0;

double circle_radius(int circle, int n) {
  return n == 1 ? kOuterRadius
                : kInnerRadius + (kOuterRadius - kInnerRadius) * circle / static_cast<double>(n - 1);
}

// Road i is a diameter at angle pi * i / n. Column j < n is circle j on one
// side of the centre, column j + n the same circle on the opposite side.
Point cell_point(Cell c, int n) {
  const double angle = std::numbers::pi * (c.first + 0.5) / n;
  const double r = circle_radius(c.second % n, n);
  const double sign = c.second < n ? 1.0 : -1.0;
  return {kCenter.x + sign * r * std::cos(angle), kCenter.y - sign * r * std::sin(angle)};
}

BinaryMatrix full_matrix(const BinaryMatrix& h, int n) {
  BinaryMatrix x(2 * n, std::vector<int>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 2 * n; ++j) {
      x[i][j] = h[i][j];
      x[i + n][(j + n) % (2 * n)] = h[i][j];
    }
  }
  return x;
}

json cells_to_json(const std::vector<Cell>& cells) {
  json out = json::array();
  for (const auto& [i, j] : cells) out.push_back({i, j});
  return out;
}

std::vector<Cell> cells_from_json(const json& j) {
  std::vector<Cell> out;
  for (const json& c : j) out.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
  return out;
}

class RoadGridGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::RoadGrid; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const int n = static_cast<int>(rng.uniform_int(param(spec, "n_min", 2), param(spec, "n_max", 6)));
    // At least four empty cells must remain besides the hidden cell's twin.
    const int k_max = std::min(2 * n, (2 * n * n - 6) / n);
    if (k_max < 1) throw DegeneracyError("grid too small for four decoys");
    const int k = static_cast<int>(rng.uniform_int(1, k_max));

    const BinaryMatrix x = solve_road_grid(n, k, rng);
    std::vector<Cell> houses, empty;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 2 * n; ++j) (x[i][j] ? houses : empty).emplace_back(i, j);
    }
    const Cell hidden = rng.pick(houses);
    const Cell twin{hidden.first, (hidden.second + n) % (2 * n)};
    std::erase(empty, twin);
    if (empty.size() < 4) throw DegeneracyError("not enough empty crossings");

    std::vector<Cell> candidates = rng.sample(empty, 4);
    candidates.push_back(hidden);
    rng.shuffle(candidates);
    const int answer = static_cast<int>(std::find(candidates.begin(), candidates.end(), hidden) -
                                        candidates.begin());
    std::erase(houses, hidden);

    Scene scene;
    const Style road{kGray, std::nullopt, 1.5};
    for (int c = 0; c < n; ++c) scene.add(CircleShape{kCenter, circle_radius(c, n), road});
    for (int i = 0; i < n; ++i) {
      const double angle = std::numbers::pi * (i + 0.5) / n;
      const double r = kOuterRadius + 10.0;
      const Point d{r * std::cos(angle), -r * std::sin(angle)};
      scene.add(LineShape{{kCenter.x + d.x, kCenter.y + d.y}, {kCenter.x - d.x, kCenter.y - d.y}, road});
    }
    for (const Cell& h : houses) {
      scene.add(GlyphShape{GlyphKind::House, cell_point(h, n), 6.0, Style{kBlack, Rgb{230, 159, 0}, 1.0}});
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const Point p = cell_point(candidates[c], n);
      scene.add(CircleShape{p, 6.5, Style{kBlack, kWhite, 1.0}});
      scene.add_option_label(kOptionLetters[c], {p.x, p.y + 3.5}, 9.0);
    }

    Bindings b;
    b.numbers = {{"total", n * k}, {"n", n}, {"k", k}, {"shown", n * k - 1}};

    Draft d;
    d.config = {{"n", n}, {"k", k}, {"houses", cells_to_json(houses)},
                {"candidates", cells_to_json(candidates)}};
    d.answer = option_letter(answer);
    d.scene = std::move(scene);
    d.question = question_from(family(), "place", b, rng);
    d.policy = LabelPolicy{};
    return d;
  }

  // Tries every candidate on the full 2n x 2n matrix.
  AnswerValue oracle(const json& config) const override {
    const int n = config.at("n").get<int>();
    const int k = config.at("k").get<int>();
    BinaryMatrix h(n, std::vector<int>(2 * n, 0));
    for (const auto& [i, j] : cells_from_json(config.at("houses"))) h.at(i).at(j) = 1;
    const auto candidates = cells_from_json(config.at("candidates"));
    std::vector<int> fits;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      BinaryMatrix filled = h;
      int& cell = filled.at(candidates[c].first).at(candidates[c].second);
      if (cell) continue;
      cell = 1;
      if (oracle::road_grid_valid(full_matrix(filled, n), n, k)) fits.push_back(static_cast<int>(c));
    }
    if (fits.size() != 1) {
      throw ConsistencyError(std::to_string(fits.size()) + " candidate crossings complete the map");
    }
    return option_letter(fits.front());
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_road_grid() { return std::make_shared<RoadGridGenerator>(); }

}  // namespace smartgen::detail
