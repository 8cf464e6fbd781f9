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
#include <array>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

constexpr double kIconSize = 7.0;
constexpr double kClearance = 1.5;  // min gap between an icon box and any outline
constexpr double kCanvasMargin = 6.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::string_view, 4> kPredicateNames = {
    "in_both", "in_first_out_second", "out_first_in_second", "out_both"};

Predicate parse_predicate(std::string_view name) {
  for (std::size_t i = 0; i < kPredicateNames.size(); ++i) {
    if (kPredicateNames[i] == name) return static_cast<Predicate>(i);
  }
  throw ParseError(0, "unknown predicate " + std::string(name));
}

json region_to_json(const Region& region) {
  return std::visit(
      overloaded{
          [](const Disk& d) {
            return json{{"kind", "circle"}, {"center", point_to_json(d.center)}, {"radius", d.radius}};
          },
          [](const Box& b) {
            return json{{"kind", "rectangle"}, {"lo", point_to_json(b.lo)}, {"hi", point_to_json(b.hi)}};
          },
          [](const Triangle& t) {
            json pts = json::array();
            for (Point p : t.vertices) pts.push_back(point_to_json(p));
            return json{{"kind", "triangle"}, {"vertices", pts}};
          },
      },
      region);
}

Region region_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "circle") return Disk{point_from_json(j.at("center")), j.at("radius").get<double>()};
  if (kind == "rectangle") return Box{point_from_json(j.at("lo")), point_from_json(j.at("hi"))};
  if (kind == "triangle") {
    Triangle t;
    for (std::size_t i = 0; i < 3; ++i) t.vertices[i] = point_from_json(j.at("vertices").at(i));
    return t;
  }
  throw ParseError(0, "unknown region kind " + kind);
}

ContainmentConfig config_from_json(const json& j) {
  ContainmentConfig c;
  c.first = region_from_json(j.at("first"));
  c.second = region_from_json(j.at("second"));
  c.predicate = parse_predicate(j.at("predicate").get<std::string>());
  for (const json& icon : j.at("icons")) {
    c.icons.push_back({point_from_json(icon.at("at")), parse_glyph(icon.at("glyph").get<std::string>()),
                       icon.at("size").get<double>()});
  }
  return c;
}

std::array<Point, 4> corners(Point c, double h) {
  return {Point{c.x - h, c.y - h}, Point{c.x + h, c.y - h}, Point{c.x + h, c.y + h},
          Point{c.x - h, c.y + h}};
}

// Axis-aligned bounding box of a region: {min corner, max corner}.
std::pair<Point, Point> bounds(const Region& region) {
  return std::visit(
      overloaded{
          [](const Disk& d) {
            return std::pair{Point{d.center.x - d.radius, d.center.y - d.radius},
                             Point{d.center.x + d.radius, d.center.y + d.radius}};
          },
          [](const Box& b) { return std::pair{b.lo, b.hi}; },
          [](const Triangle& t) {
            Point lo = t.vertices[0], hi = t.vertices[0];
            for (Point p : t.vertices) {
              lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
              hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
            }
            return std::pair{lo, hi};
          },
      },
      region);
}

bool triangle_separated(const Triangle& t, Point c, double h) {
  const auto box = corners(c, h);
  std::vector<Point> axes = {{1, 0}, {0, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    const Point a = t.vertices[i], b = t.vertices[(i + 1) % 3];
    axes.push_back({-(b.y - a.y), b.x - a.x});
  }
  for (Point ax : axes) {
    double b_lo = 1e300, b_hi = -1e300, t_lo = 1e300, t_hi = -1e300;
    for (Point p : box) {
      const double v = p.x * ax.x + p.y * ax.y;
      b_lo = std::min(b_lo, v);
      b_hi = std::max(b_hi, v);
    }
    for (Point p : t.vertices) {
      const double v = p.x * ax.x + p.y * ax.y;
      t_lo = std::min(t_lo, v);
      t_hi = std::max(t_hi, v);
    }
    if (b_hi < t_lo || t_hi < b_lo) return true;
  }
  return false;
}

bool in_triangle(const Triangle& t, Point p) {
  double sign = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Point a = t.vertices[i], b = t.vertices[(i + 1) % 3];
    const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (c == 0.0 || (sign != 0.0 && (c > 0) != (sign > 0))) return false;
    sign = c;
  }
  return true;
}

// The icon's box, grown by kClearance, sits wholly inside or wholly outside.
bool clear_of_boundary(const Region& region, Point c, double h) {
  const double g = h + kClearance;
  return std::visit(
      overloaded{
          [&](const Disk& d) {
            const double dx = std::abs(c.x - d.center.x), dy = std::abs(c.y - d.center.y);
            const double far = std::hypot(dx + g, dy + g);
            const double near = std::hypot(std::max(0.0, dx - g), std::max(0.0, dy - g));
            return far < d.radius || near > d.radius;
          },
          [&](const Box& b) {
            const bool inside = c.x - g > b.lo.x && c.x + g < b.hi.x && c.y - g > b.lo.y &&
                                c.y + g < b.hi.y;
            const bool outside = c.x + g < b.lo.x || c.x - g > b.hi.x || c.y + g < b.lo.y ||
                                 c.y - g > b.hi.y;
            return inside || outside;
          },
          [&](const Triangle& t) {
            const auto box = corners(c, g);
            const bool inside =
                std::all_of(box.begin(), box.end(), [&](Point p) { return in_triangle(t, p); });
            return inside || triangle_separated(t, c, g);
          },
      },
      region);
}

Region sample_region(int kind, Point center, Rng& rng) {
  switch (kind) {
    case 0:
      return Disk{center, rng.uniform_real(40.0, 62.0)};
    case 1: {
      const double w = rng.uniform_real(80.0, 125.0), h = rng.uniform_real(70.0, 115.0);
      return Box{{center.x - w / 2, center.y - h / 2}, {center.x + w / 2, center.y + h / 2}};
    }
    default: {
      Triangle t;
      const double r = rng.uniform_real(58.0, 78.0);
      const double a0 = rng.uniform_real(0.0, 2 * std::numbers::pi);
      for (std::size_t i = 0; i < 3; ++i) {
        const double a = a0 + static_cast<double>(i) * 2 * std::numbers::pi / 3 +
                         rng.uniform_real(-0.25, 0.25);
        t.vertices[i] = {center.x + r * std::cos(a), center.y + r * std::sin(a)};
      }
      return t;
    }
  }
}

void draw_region(Scene& scene, const Region& region, Rgb color) {
  const Style style{color, std::nullopt, 2.0};
  std::visit(overloaded{
                 [&](const Disk& d) { scene.add(CircleShape{d.center, d.radius, style}); },
                 [&](const Box& b) {
                   scene.add(RectShape{b.lo, b.hi.x - b.lo.x, b.hi.y - b.lo.y, style});
                 },
                 [&](const Triangle& t) {
                   scene.add(PolygonShape{{t.vertices.begin(), t.vertices.end()}, style});
                 },
             },
             region);
}

std::string predicate_phrase(Predicate p, std::string_view first, std::string_view second) {
  const std::string a(first), b(second);
  switch (p) {
    case Predicate::InBoth: return "inside both the " + a + " and the " + b;
    case Predicate::InFirstOutSecond: return "inside the " + a + " but outside the " + b;
    case Predicate::OutFirstInSecond: return "inside the " + b + " but outside the " + a;
    case Predicate::OutBoth: return "outside both the " + a + " and the " + b;
  }
  return {};
}

class ContainmentGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::Containment; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const auto min_icons = param(spec, "min_icons", 5);
    const auto max_icons = param(spec, "max_icons", 12);

    std::vector<int> kinds = rng.sample(std::vector<int>{0, 1, 2}, 2);
    const Point c1{112 + rng.uniform_real(-15, 15), 112 + rng.uniform_real(-15, 15)};
    const double phi = rng.uniform_real(0.0, 2 * std::numbers::pi);
    const double gap = rng.uniform_real(30.0, 55.0);
    const Point c2{c1.x + gap * std::cos(phi), c1.y + gap * std::sin(phi)};

    ContainmentConfig config;
    config.first = sample_region(kinds[0], c1, rng);
    config.second = sample_region(kinds[1], c2, rng);
    for (const Region* r : {&config.first, &config.second}) {
      const auto [lo, hi] = bounds(*r);
      if (lo.x < kCanvasMargin || lo.y < kCanvasMargin || hi.x > kDefaultCanvas - kCanvasMargin ||
          hi.y > kDefaultCanvas - kCanvasMargin) {
        throw DegeneracyError("outline leaves the canvas");
      }
    }

    const GlyphKind glyph = static_cast<GlyphKind>(rng.index(6));
    const auto n = rng.uniform_int(min_icons, max_icons);
    for (std::int64_t i = 0; i < n; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
        const Point p{rng.uniform_real(kCanvasMargin + kIconSize, kDefaultCanvas - kCanvasMargin - kIconSize),
                      rng.uniform_real(kCanvasMargin + kIconSize, kDefaultCanvas - kCanvasMargin - kIconSize)};
        if (!clear_of_boundary(config.first, p, kIconSize) ||
            !clear_of_boundary(config.second, p, kIconSize)) {
          continue;
        }
        const bool crowded = std::any_of(config.icons.begin(), config.icons.end(), [&](const Icon& o) {
          return distance(o.at, p) < 2 * kIconSize + 3;
        });
        if (crowded) continue;
        config.icons.push_back({p, glyph, kIconSize});
        placed = true;
      }
      if (!placed) throw DegeneracyError("no room for another icon");
    }

    config.predicate = static_cast<Predicate>(rng.index(4));
    const std::int64_t count = count_icons_by_predicate(config);
    if (count < spec.answer_type.lo || count > spec.answer_type.hi) {
      throw DegeneracyError("icon count outside the answer range");
    }

    Scene scene;
    draw_region(scene, config.first, {0, 114, 178});
    draw_region(scene, config.second, {213, 94, 0});
    const Rgb fill = kPalette[rng.index(std::size(kPalette))];
    for (const Icon& icon : config.icons) {
      scene.add(GlyphShape{icon.glyph, icon.at, icon.size, Style{kBlack, fill, 1.0}});
    }

    Bindings b;
    b.words["icon"] = std::string(glyph_name(glyph));
    b.texts["where"] = predicate_phrase(config.predicate, region_name(config.first),
                                        region_name(config.second));

    json icons = json::array();
    for (const Icon& icon : config.icons) {
      icons.push_back({{"at", point_to_json(icon.at)}, {"glyph", glyph_name(icon.glyph)}, {"size", icon.size}});
    }
    Draft d;
    d.config = {{"first", region_to_json(config.first)},
                {"second", region_to_json(config.second)},
                {"predicate", kPredicateNames[static_cast<std::size_t>(config.predicate)]},
                {"icons", icons}};
    d.answer = count;
    d.scene = std::move(scene);
    d.question = question_from(family(), "count", b, rng);
    d.policy = IntegerWindow{0, std::nullopt};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    return oracle::containment_count(config_from_json(config));
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_containment() {
  return std::make_shared<ContainmentGenerator>();
}

}  // namespace smartgen::detail
