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

// Helpers shared by the family generators. Internal to the library.

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "smartgen/errors.hpp"
#include "smartgen/generators.hpp"
#include "smartgen/textgen.hpp"

namespace smartgen::detail {

std::shared_ptr<const FamilyGenerator> make_containment();
std::shared_ptr<const FamilyGenerator> make_road_grid();
std::shared_ptr<const FamilyGenerator> make_path_count();
std::shared_ptr<const FamilyGenerator> make_fence_jump();
std::shared_ptr<const FamilyGenerator> make_board_rowcol();
std::shared_ptr<const FamilyGenerator> make_stick_stack();
std::shared_ptr<const FamilyGenerator> make_diagram_op();
std::shared_ptr<const FamilyGenerator> make_shelf_order();
std::shared_ptr<const FamilyGenerator> make_cipher();
std::shared_ptr<const FamilyGenerator> make_hole_punch();
std::shared_ptr<const FamilyGenerator> make_word_problem();

json default_param_space(Family family);

// Integer parameter from the spec's param_space with a fallback.
inline std::int64_t param(const RootPuzzleSpec& spec, const char* key, std::int64_t fallback) {
  return spec.param_space.is_object() ? spec.param_space.value(key, fallback) : fallback;
}

inline std::string question_from(Family family, std::string_view prefix, const Bindings& b,
                                 Rng& rng) {
  return instantiate_template(template_bank(family).pick(prefix, rng), b, rng);
}

inline json point_to_json(Point p) { return json::array({p.x, p.y}); }
inline Point point_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string_view glyph_name(GlyphKind kind);
GlyphKind parse_glyph(std::string_view name);

// "a, b, and c"
std::string join_list(const std::vector<std::string>& items);

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Palette used for filled shapes; readable on white.
inline constexpr Rgb kPalette[] = {
    {230, 159, 0},  {86, 180, 233}, {0, 158, 115},  {240, 228, 66},
    {0, 114, 178},  {213, 94, 0},   {204, 121, 167}, {153, 153, 153},
    {120, 80, 40},
};
inline constexpr Rgb kGray{110, 110, 110};

}  // namespace smartgen::detail
