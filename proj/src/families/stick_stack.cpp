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

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

constexpr double kHalfLength = 78.0;
constexpr double kHalfWidth = 5.0;

class StickStackGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::StickStack; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    std::vector<int> sizes;
    if (spec.param_space.contains("sizes")) sizes = spec.param_space.at("sizes").get<std::vector<int>>();
    else sizes = {5, 7, 9};
    const int n = rng.pick(sizes);
    if (n < 1 || n % 2 == 0) throw PreconditionError("stick counts must be odd");

    std::vector<int> order(n);  // bottom to top
    for (int i = 0; i < n; ++i) order[i] = i + 1;
    rng.shuffle(order);
    const int middle = middle_stick(order);

    // Angles spread over half a turn so no two sticks are near parallel.
    std::vector<double> angles(n);
    const double phase = rng.uniform_real(0.0, std::numbers::pi);
    for (int i = 0; i < n; ++i) angles[i] = phase + std::numbers::pi * i / n;
    rng.shuffle(angles);

    Scene scene;
    std::vector<TextShape> labels;
    for (int i = 0; i < n; ++i) {
      const Point c{112 + rng.uniform_real(-14, 14), 112 + rng.uniform_real(-14, 14)};
      const Point u{std::cos(angles[i]), std::sin(angles[i])};
      const Point v{-u.y, u.x};
      std::vector<Point> pts;
      for (const auto& [a, w] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}}) {
        pts.push_back({c.x + a * kHalfLength * u.x + w * kHalfWidth * v.x,
                       c.y + a * kHalfLength * u.y + w * kHalfWidth * v.y});
      }
      scene.add(PolygonShape{pts, Style{kBlack, kPalette[static_cast<std::size_t>(order[i] - 1) % std::size(kPalette)], 1.0}});
      const double end = rng.bernoulli(0.5) ? 1.0 : -1.0;
      labels.push_back(TextShape{{c.x + end * (kHalfLength + 9) * u.x, c.y + end * (kHalfLength + 9) * u.y + 4},
                                 std::to_string(order[i]), 11.0, kBlack});
    }
    for (TextShape& t : labels) scene.add(std::move(t));

    Bindings b;
    b.numbers = {{"n", n}, {"bottom", order.front()}, {"top", order.back()}};

    std::vector<std::int64_t> others;
    for (int id : order) {
      if (id != middle) others.push_back(id);
    }
    Draft d;
    d.config = {{"order", order}};
    d.answer = static_cast<std::int64_t>(middle);
    d.scene = std::move(scene);
    d.question = question_from(family(), "middle", b, rng);
    d.policy = IntegerPool{others, IntegerWindow{1, n}};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    return static_cast<std::int64_t>(oracle::middle_stick(config.at("order").get<std::vector<int>>()));
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_stick_stack() { return std::make_shared<StickStackGenerator>(); }

}  // namespace smartgen::detail
