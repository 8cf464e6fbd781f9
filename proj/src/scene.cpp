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

#include "smartgen/scene.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "smartgen/errors.hpp"

namespace smartgen {
namespace {

std::string num(double v) {
  if (std::abs(v) < 0.00005) v = 0.0;  // never print "-0.0000"
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, 4);
  return std::string(buf.data(), end);
}

std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string style_attrs(const Style& s) {
  std::string out = " stroke=\"" + s.stroke.hex() + "\" stroke-width=\"" + num(s.stroke_width) + "\"";
  out += " fill=\"" + (s.fill ? s.fill->hex() : std::string("none")) + "\"";
  return out;
}

std::string points_attr(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(pts[i].x) + "," + num(pts[i].y);
  }
  return out;
}

std::string circle_path(Point c, double r) {
  return "M " + num(c.x - r) + " " + num(c.y) + " a " + num(r) + " " + num(r) + " 0 1 0 " +
         num(2 * r) + " 0 a " + num(r) + " " + num(r) + " 0 1 0 " + num(-2 * r) + " 0 ";
}

std::vector<Point> star_points(Point c, double size) {
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) {
    const double r = (i % 2 == 0) ? size : size * 0.45;
    const double a = -std::numbers::pi / 2 + i * std::numbers::pi / 5;
    pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return pts;
}

std::vector<Point> house_points(Point c, double s) {
  return {{c.x - s * 0.8, c.y + s},       {c.x + s * 0.8, c.y + s}, {c.x + s * 0.8, c.y - s * 0.1},
          {c.x, c.y - s},                 {c.x - s * 0.8, c.y - s * 0.1}};
}

std::string render_glyph(const GlyphShape& g) {
  const Point c = g.center;
  const double s = g.size;
  switch (g.kind) {
    case GlyphKind::Coin:
      return "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(s) + "\"" +
             style_attrs(g.style) + "/>";
    case GlyphKind::Star:
      return "<polygon points=\"" + points_attr(star_points(c, s)) + "\"" + style_attrs(g.style) +
             "/>";
    case GlyphKind::House:
      return "<polygon points=\"" + points_attr(house_points(c, s)) + "\"" + style_attrs(g.style) +
             "/>";
    case GlyphKind::Flower: {
      std::string d;
      const double pr = s * 0.38;
      for (int i = 0; i < 5; ++i) {
        const double a = -std::numbers::pi / 2 + i * 2 * std::numbers::pi / 5;
        d += circle_path({c.x + (s - pr) * std::cos(a), c.y + (s - pr) * std::sin(a)}, pr);
      }
      d += circle_path(c, s * 0.3);
      return "<path d=\"" + d + "\"" + style_attrs(g.style) + "/>";
    }
    case GlyphKind::Heart: {
      const std::string d = "M " + num(c.x) + " " + num(c.y + s) + " C " + num(c.x - 1.4 * s) + " " +
                            num(c.y) + " " + num(c.x - 0.7 * s) + " " + num(c.y - 1.1 * s) + " " +
                            num(c.x) + " " + num(c.y - 0.4 * s) + " C " + num(c.x + 0.7 * s) +
                            " " + num(c.y - 1.1 * s) + " " + num(c.x + 1.4 * s) + " " + num(c.y) +
                            " " + num(c.x) + " " + num(c.y + s) + " Z";
      return "<path d=\"" + d + "\"" + style_attrs(g.style) + "/>";
    }
    case GlyphKind::Bird: {
      const std::string d = "M " + num(c.x - s) + " " + num(c.y) + " Q " + num(c.x - s * 0.5) + " " +
                            num(c.y - s) + " " + num(c.x) + " " + num(c.y) + " Q " +
                            num(c.x + s * 0.5) + " " + num(c.y - s) + " " + num(c.x + s) + " " +
                            num(c.y) + " L " + num(c.x) + " " + num(c.y + s * 0.6) + " Z";
      return "<path d=\"" + d + "\"" + style_attrs(g.style) + "/>";
    }
  }
  return {};
}

struct Renderer {
  std::string operator()(const LineShape& l) const {
    return "<line x1=\"" + num(l.from.x) + "\" y1=\"" + num(l.from.y) + "\" x2=\"" + num(l.to.x) +
           "\" y2=\"" + num(l.to.y) + "\"" + style_attrs(l.style) + "/>";
  }
  std::string operator()(const CircleShape& c) const {
    return "<circle cx=\"" + num(c.center.x) + "\" cy=\"" + num(c.center.y) + "\" r=\"" +
           num(c.radius) + "\"" + style_attrs(c.style) + "/>";
  }
  std::string operator()(const RectShape& r) const {
    return "<rect x=\"" + num(r.origin.x) + "\" y=\"" + num(r.origin.y) + "\" width=\"" +
           num(r.width) + "\" height=\"" + num(r.height) + "\"" + style_attrs(r.style) + "/>";
  }
  std::string operator()(const PolygonShape& p) const {
    return "<polygon points=\"" + points_attr(p.points) + "\"" + style_attrs(p.style) + "/>";
  }
  std::string operator()(const GlyphShape& g) const { return render_glyph(g); }
  std::string operator()(const TextShape& t) const {
    return "<text x=\"" + num(t.anchor.x) + "\" y=\"" + num(t.anchor.y) +
           "\" font-family=\"sans-serif\" font-size=\"" + num(t.font_size) +
           "\" text-anchor=\"middle\" fill=\"" + t.color.hex() + "\">" + escape_xml(t.text) +
           "</text>";
  }
};

struct Extent {
  double min_x, min_y, max_x, max_y;
};

Extent extent_of(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> Extent {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LineShape>) {
          return {std::min(s.from.x, s.to.x), std::min(s.from.y, s.to.y),
                  std::max(s.from.x, s.to.x), std::max(s.from.y, s.to.y)};
        } else if constexpr (std::is_same_v<T, CircleShape>) {
          return {s.center.x - s.radius, s.center.y - s.radius, s.center.x + s.radius,
                  s.center.y + s.radius};
        } else if constexpr (std::is_same_v<T, RectShape>) {
          return {s.origin.x, s.origin.y, s.origin.x + s.width, s.origin.y + s.height};
        } else if constexpr (std::is_same_v<T, PolygonShape>) {
          Extent e{1e300, 1e300, -1e300, -1e300};
          for (const Point& p : s.points) {
            e = {std::min(e.min_x, p.x), std::min(e.min_y, p.y), std::max(e.max_x, p.x),
                 std::max(e.max_y, p.y)};
          }
          return e;
        } else if constexpr (std::is_same_v<T, GlyphShape>) {
          return {s.center.x - s.size, s.center.y - s.size, s.center.x + s.size,
                  s.center.y + s.size};
        } else {
          return {s.anchor.x, s.anchor.y, s.anchor.x, s.anchor.y};
        }
      },
      shape);
}

}  // namespace

std::string Rgb::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (std::uint8_t v : {r, g, b}) {
    out += kDigits[v >> 4];
    out += kDigits[v & 0xf];
  }
  return out;
}

Scene::Scene(double width, double height) : width_(width), height_(height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw PreconditionError("scene dimensions must be positive");
  }
}

void Scene::add_option_label(char letter, Point anchor, double font_size) {
  primitives_.push_back(
      {TextShape{anchor, std::string(1, letter), font_size, kBlack}, letter});
}

void Scene::validate() const {
  constexpr double kSlack = 1e-9;
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    const Extent e = extent_of(primitives_[i].shape);
    if (e.min_x < -kSlack || e.min_y < -kSlack || e.max_x > width_ + kSlack ||
        e.max_y > height_ + kSlack) {
      throw PreconditionError("primitive " + std::to_string(i) + " leaves the canvas");
    }
  }
}

std::vector<char> Scene::option_labels() const {
  std::vector<char> out;
  for (const Primitive& p : primitives_) {
    if (p.option_label) out.push_back(*p.option_label);
  }
  return out;
}

Scene blank_placeholder(double width, double height) { return Scene(width, height); }

std::string render_svg(const Scene& scene) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(scene.width()) +
         "\" height=\"" + num(scene.height()) + "\" viewBox=\"0 0 " + num(scene.width()) + " " +
         num(scene.height()) + "\" style=\"background-color:#ffffff\">\n";
  for (const Primitive& p : scene.primitives()) {
    out += "  ";
    out += std::visit(Renderer{}, p.shape);
    out += '\n';
  }
  out += "</svg>\n";
  return out;
}

}  // namespace smartgen
