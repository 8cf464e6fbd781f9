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

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

constexpr double kMinOverlap = 10.0;
constexpr double kEdgeMargin = 3.0;   // points keep this far from every sheet edge
constexpr double kPointSpacing = 16.0;

bool inside(const Sheet& s, Point p, double margin) {
  return p.x > s.origin.x + margin && p.x < s.origin.x + s.width - margin && p.y > s.origin.y + margin &&
         p.y < s.origin.y + s.height - margin;
}

bool near_edge(const Sheet& s, Point p) {
  const bool in_x = p.x > s.origin.x - kEdgeMargin && p.x < s.origin.x + s.width + kEdgeMargin;
  const bool in_y = p.y > s.origin.y - kEdgeMargin && p.y < s.origin.y + s.height + kEdgeMargin;
  return in_x && in_y && !inside(s, p, kEdgeMargin);
}

class HolePunchGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::HolePunch; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const auto k = rng.uniform_int(param(spec, "sheets_min", 3), param(spec, "sheets_max", 8));
    const double w = rng.uniform_real(70.0, 110.0), h = rng.uniform_real(50.0, 90.0);
    std::vector<Sheet> sheets;
    for (std::int64_t i = 0; i < k; ++i) {
      const Point o{112 - w / 2 + rng.uniform_real(-0.4 * w, 0.4 * w), 112 - h / 2 + rng.uniform_real(-0.4 * h, 0.4 * h)};
      if (o.x < 8 || o.y < 8 || o.x + w > 216 || o.y + h > 216) throw DegeneracyError("sheet leaves the canvas");
      sheets.push_back({o, w, h});
    }
    double ix0 = 0, iy0 = 0, ix1 = kDefaultCanvas, iy1 = kDefaultCanvas;
    for (const Sheet& s : sheets) {
      ix0 = std::max(ix0, s.origin.x);
      iy0 = std::max(iy0, s.origin.y);
      ix1 = std::min(ix1, s.origin.x + s.width);
      iy1 = std::min(iy1, s.origin.y + s.height);
    }
    if (ix1 - ix0 < kMinOverlap || iy1 - iy0 < kMinOverlap) throw DegeneracyError("sheets barely overlap");

    const Point correct{rng.uniform_real(ix0 + kEdgeMargin, ix1 - kEdgeMargin),
                        rng.uniform_real(iy0 + kEdgeMargin, iy1 - kEdgeMargin)};
    std::vector<Point> points{correct};
    for (int attempt = 0; attempt < 400 && points.size() < 5; ++attempt) {
      const Sheet& host = rng.pick(sheets);
      const Point p{rng.uniform_real(host.origin.x, host.origin.x + w), rng.uniform_real(host.origin.y, host.origin.y + h)};
      const bool in_all = std::all_of(sheets.begin(), sheets.end(), [&](const Sheet& s) { return inside(s, p, 0); });
      const bool edgy = std::any_of(sheets.begin(), sheets.end(), [&](const Sheet& s) { return near_edge(s, p); });
      const bool crowded = std::any_of(points.begin(), points.end(), [&](Point q) { return distance(p, q) < kPointSpacing; });
      if (!in_all && !edgy && !crowded) points.push_back(p);
    }
    if (points.size() < 5) throw DegeneracyError("no room for decoy points");
    rng.shuffle(points);
    const int answer = point_in_all_sheets(sheets, points);

    Scene scene;
    for (const Sheet& s : sheets) {
      scene.add(RectShape{s.origin, s.width, s.height, Style{Rgb{60, 60, 60}, std::nullopt, 1.2}});
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      scene.add(CircleShape{points[i], 2.5, Style{kBlack, kBlack, 1.0}});
      scene.add_option_label(kOptionLetters[i], {points[i].x + 7, points[i].y - 3}, 10.0);
    }

    Bindings b;
    b.numbers = {{"k", k}};

    json sj = json::array(), pj = json::array();
    for (const Sheet& s : sheets) sj.push_back({{"origin", point_to_json(s.origin)}, {"width", s.width}, {"height", s.height}});
    for (Point p : points) pj.push_back(point_to_json(p));
    Draft d;
    d.config = {{"sheets", sj}, {"candidates", pj}};
    d.answer = option_letter(answer);
    d.scene = std::move(scene);
    d.question = question_from(family(), "punch", b, rng);
    d.policy = LabelPolicy{};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    std::vector<Sheet> sheets;
    for (const json& s : config.at("sheets")) {
      sheets.push_back({point_from_json(s.at("origin")), s.at("width").get<double>(), s.at("height").get<double>()});
    }
    std::vector<Point> points;
    for (const json& p : config.at("candidates")) points.push_back(point_from_json(p));
    const auto hits = oracle::punch_hits(sheets, points);
    if (hits.size() != 1) throw ConsistencyError(std::to_string(hits.size()) + " points go through every sheet");
    return option_letter(hits.front());
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_hole_punch() { return std::make_shared<HolePunchGenerator>(); }

}  // namespace smartgen::detail
