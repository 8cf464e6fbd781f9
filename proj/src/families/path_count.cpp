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
#include <set>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

constexpr Point kCenter{112.0, 112.0};
constexpr double kLayoutRadius = 88.0;
constexpr double kNodeRadius = 11.0;

class PathCountGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::PathCount; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const int n = static_cast<int>(rng.uniform_int(param(spec, "n_min", 4), param(spec, "n_max", 8)));

    // Random spanning tree, then extra edges until there are at least n.
    std::set<Edge> edges;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (int i = 1; i < n; ++i) {
      const int u = order[i], v = order[rng.index(static_cast<std::size_t>(i))];
      edges.insert({std::min(u, v), std::max(u, v)});
    }
    const double p_extra = rng.uniform_real(0.15, 0.5);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(p_extra)) edges.insert({u, v});
      }
    }
    while (static_cast<int>(edges.size()) < n) {
      const int u = static_cast<int>(rng.index(n));
      const int v = static_cast<int>(rng.index(n));
      if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
    }
    const std::vector<Edge> edge_list(edges.begin(), edges.end());

    const auto st = rng.sample(order, 2);
    const int s = st[0], t = st[1];
    const int j = static_cast<int>(rng.uniform_int(2, n - 1));
    const std::int64_t count = count_simple_paths(edge_list, s, t, j);
    if (count < spec.answer_type.lo || count > spec.answer_type.hi) {
      throw DegeneracyError("path count outside the answer range");
    }

    std::vector<Point> at(n);
    const double phase = rng.uniform_real(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < n; ++i) {
      const double a = phase + 2 * std::numbers::pi * i / n;
      at[i] = {kCenter.x + kLayoutRadius * std::cos(a), kCenter.y + kLayoutRadius * std::sin(a)};
    }
    // Shuffle which label sits where so the numbering carries no geometry.
    rng.shuffle(at);

    Scene scene;
    for (const auto& [u, v] : edge_list) scene.add(LineShape{at[u], at[v], Style{kGray, std::nullopt, 1.5}});
    for (int i = 0; i < n; ++i) {
      const bool end = i == s || i == t;
      scene.add(CircleShape{at[i], kNodeRadius, Style{kBlack, end ? Rgb{240, 228, 66} : kWhite, 1.5}});
      scene.add(TextShape{{at[i].x, at[i].y + 4.0}, std::to_string(i), 11.0, kBlack});
    }

    Bindings b;
    b.numbers = {{"s", s}, {"t", t}, {"j", j}};

    json ej = json::array();
    for (const auto& [u, v] : edge_list) ej.push_back({u, v});
    Draft d;
    d.config = {{"nodes", n}, {"edges", ej}, {"s", s}, {"t", t}, {"j", j}};
    d.answer = count;
    d.scene = std::move(scene);
    d.question = question_from(family(), "paths", b, rng);
    d.policy = IntegerPool{{count - 2, count - 1, count + 1, count + 2, 0}, IntegerWindow{0, std::nullopt}};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    std::vector<Edge> edges;
    for (const json& e : config.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return oracle::simple_paths(edges, config.at("s").get<int>(), config.at("t").get<int>(),
                                config.at("j").get<int>());
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_path_count() { return std::make_shared<PathCountGenerator>(); }

}  // namespace smartgen::detail
