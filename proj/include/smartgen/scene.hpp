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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace smartgen {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
  std::string hex() const;
};

inline constexpr Rgb kBlack{0, 0, 0};
inline constexpr Rgb kWhite{255, 255, 255};

struct Style {
  Rgb stroke = kBlack;
  std::optional<Rgb> fill;
  double stroke_width = 1.0;
  bool operator==(const Style&) const = default;
};

struct LineShape {
  Point from;
  Point to;
  Style style;
  bool operator==(const LineShape&) const = default;
};

struct CircleShape {
  Point center;
  double radius = 0.0;
  Style style;
  bool operator==(const CircleShape&) const = default;
};

struct RectShape {
  Point origin;  // top-left corner
  double width = 0.0;
  double height = 0.0;
  Style style;
  bool operator==(const RectShape&) const = default;
};

struct PolygonShape {
  std::vector<Point> points;
  Style style;
  bool operator==(const PolygonShape&) const = default;
};

// Parametric icons drawn from primitives; `size` is the half-extent of the
// icon's bounding box.
enum class GlyphKind { Flower, Star, House, Coin, Heart, Bird };

struct GlyphShape {
  GlyphKind kind = GlyphKind::Flower;
  Point center;
  double size = 0.0;
  Style style;
  bool operator==(const GlyphShape&) const = default;
};

struct TextShape {
  Point anchor;  // centre of the baseline
  std::string text;
  double font_size = 12.0;
  Rgb color = kBlack;
  bool operator==(const TextShape&) const = default;
};

using Shape = std::variant<LineShape, CircleShape, RectShape, PolygonShape, GlyphShape, TextShape>;

struct Primitive {
  Shape shape;
  std::optional<char> option_label;
  bool operator==(const Primitive&) const = default;
};

inline constexpr double kDefaultCanvas = 224.0;

// Painter's-model vector scene: primitives are drawn in list order.
class Scene {
 public:
  Scene() = default;
  Scene(double width, double height);

  double width() const { return width_; }
  double height() const { return height_; }
  const std::vector<Primitive>& primitives() const { return primitives_; }
  bool empty() const { return primitives_.empty(); }

  void add(Shape shape) { primitives_.push_back({std::move(shape), std::nullopt}); }
  void add_option_label(char letter, Point anchor, double font_size = 12.0);

  // Throws PreconditionError when a coordinate leaves the canvas.
  void validate() const;

  // Letters carried by option-labelled primitives, in drawing order.
  std::vector<char> option_labels() const;

  bool operator==(const Scene&) const = default;

 private:
  double width_ = kDefaultCanvas;
  double height_ = kDefaultCanvas;
  std::vector<Primitive> primitives_;
};

Scene blank_placeholder(double width = kDefaultCanvas, double height = kDefaultCanvas);

// SVG 1.1 using only rect, circle, line, polygon, path and text elements.
// Numbers are printed with exactly four decimals, so equal scenes give
// identical bytes.
std::string render_svg(const Scene& scene);

}  // namespace smartgen
