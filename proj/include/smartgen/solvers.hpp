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

// Answer computation for every generator family. These are the routines the
// generators call; oracles.hpp holds the independent brute-force versions.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smartgen/rng.hpp"
#include "smartgen/scene.hpp"

namespace smartgen {

// ---- simple paths ----------------------------------------------------------

using Edge = std::pair<int, int>;

// Vertex-simple s-t paths with exactly j edges in the undirected graph `edges`.
std::int64_t count_simple_paths(std::span<const Edge> edges, int s, int t, int j);

// ---- road grid -------------------------------------------------------------

using BinaryMatrix = std::vector<std::vector<int>>;

// 2n x 2n 0/1 matrix [[A, B], [B, A]] whose rows and columns all sum to k.
// Throws InfeasibleError unless n >= 1 and 1 <= k <= 2n.
BinaryMatrix solve_road_grid(int n, int k, Rng& rng);

// Exhaustive count of the matrices solve_road_grid can return.
std::int64_t count_road_grid_solutions(int n, int k);

// ---- fence jumps -----------------------------------------------------------

// Seconds needed to cover d gaps, f forward then b backward single-gap jumps
// per cycle, t seconds per jump. Throws PreconditionError unless f > b >= 0,
// d >= 1 and t >= 1.
std::int64_t simulate_fence_jumps(std::int64_t d, std::int64_t f, std::int64_t b, std::int64_t t);

// ---- containment -----------------------------------------------------------

inline constexpr double kBoundaryTolerance = 1e-6;

struct Disk {
  Point center;
  double radius = 0.0;
};
struct Box {
  Point lo;  // min corner
  Point hi;  // max corner
};
struct Triangle {
  std::array<Point, 3> vertices;
};
using Region = std::variant<Disk, Box, Triangle>;

std::string_view region_name(const Region& r);  // "circle", "rectangle", "triangle"

enum class Predicate { InBoth, InFirstOutSecond, OutFirstInSecond, OutBoth };

struct Icon {
  Point at;
  GlyphKind glyph = GlyphKind::Flower;
  double size = 0.0;  // half-extent of the drawn glyph
};

struct ContainmentConfig {
  Region first;
  Region second;
  std::vector<Icon> icons;
  Predicate predicate = Predicate::InBoth;
};

// Throws DegeneracyError when p lies within kBoundaryTolerance of the boundary.
bool strictly_inside(const Region& region, Point p);

std::int64_t count_icons_by_predicate(const ContainmentConfig& config);

// ---- board rows/columns ----------------------------------------------------

enum class BoardMode { Remove, Add };
using Board = std::vector<std::vector<int>>;

// Moves needed to leave exactly c items in every row and column. Throws
// ConsistencyError when no valid board is reachable by the mode alone.
std::int64_t min_moves_rowcol(const Board& board, int c, BoardMode mode);

// ---- stick stack -----------------------------------------------------------

// Middle element of a bottom-to-top order. Throws PreconditionError on even
// or zero length.
int middle_stick(std::span<const int> order);

// ---- diagram operations ----------------------------------------------------

enum class OpKind { Add, Sub, Mul, Div };

struct Op {
  OpKind kind = OpKind::Add;
  std::int64_t operand = 0;
  bool operator==(const Op&) const = default;
};

// Accepts "+3", "-3", "−3", "x3", "*3", "×3", "/3", "÷3".
Op parse_op(std::string_view text);
std::string format_op(const Op& op);  // "+3", "-3", "x3", "/3"
// nullopt when a division is inexact or by zero.
std::optional<std::int64_t> apply_op(const Op& op, std::int64_t value);

// Value chain start -> op_0 -> ... -> op_{L-1} -> end, one op unknown.
struct DiagramChain {
  std::int64_t start = 0;
  std::vector<std::optional<Op>> ops;
  std::int64_t end = 0;
};

// The unique candidate that completes the chain. Throws AmbiguityError when
// zero or several candidates fit.
std::string infer_diagram_op(const DiagramChain& chain, std::span<const std::string> candidates);

// ---- shelf order -----------------------------------------------------------

struct ShelfConstraint {
  enum class Kind { Below, DirectlyAbove, Fixed };
  Kind kind = Kind::Below;
  int a = 0;  // item
  int b = 0;  // item, or a 1-based position for Fixed
};

// n items on n positions (1 = bottom). Positions the query item never
// occupies in any placement satisfying all constraints, ascending. Throws
// InfeasibleError when no placement exists.
std::vector<int> impossible_shelf_positions(int num_items,
                                            std::span<const ShelfConstraint> constraints,
                                            int query);

// ---- cipher ----------------------------------------------------------------

// Letter -> column label + row label, e.g. 'C' -> "A1".
using CipherMapping = std::map<char, std::string>;

// Throws PreconditionError on an unmapped letter or a non-injective mapping.
std::string encode_word(const CipherMapping& mapping, std::string_view word);
// Throws AmbiguityError unless exactly one candidate encodes to `code`.
std::string decode_word(const CipherMapping& mapping, std::string_view code,
                        std::span<const std::string> candidates);

// ---- hole punch ------------------------------------------------------------

struct Sheet {
  Point origin;  // min corner
  double width = 0.0;
  double height = 0.0;
};

// Index of the single candidate strictly inside every sheet. Throws
// AmbiguityError when none or several qualify.
int point_in_all_sheets(std::span<const Sheet> sheets, std::span<const Point> candidates);

// ---- word problems ---------------------------------------------------------

enum class WordProblemKind {
  TradeChain,
  QueuePosition,
  NestedBoxes,
  LitWindows,
  PizzaSlices,
  OppositeTrainCars,
  BundlePricing,
  DistinctDigitCount,
  CatchUpChests,
  PaperCutting,
  CrossroadDistance,
};

inline constexpr int kNumWordProblemKinds = 11;

std::string_view to_string(WordProblemKind kind);
WordProblemKind parse_word_problem_kind(std::string_view name);

// Parameter names per kind (also the template slot names):
//   trade_chain          r (rubies), s (sapphires per ruby), f (flowers per sapphire)
//   queue_position       ahead, total
//   nested_boxes         b
//   lit_windows          rooms, w (windows per room), lit
//   pizza_slices         p, s (slices per pizza), g (guests)
//   opposite_train_cars  cars, j, m
//   bundle_pricing       size, price, budget
//   distinct_digit_count lo, hi (open interval), plus `digits`
//   catch_up_chests      start, r1, r2
//   paper_cutting        w, k, g (white, black, gray sheets)
//   crossroad_distance   am, mj, x
struct WordProblemConfig {
  WordProblemKind kind = WordProblemKind::TradeChain;
  std::map<std::string, std::int64_t> params;
  std::vector<int> digits;

  std::int64_t at(const std::string& name) const;
};

// Throws DegeneracyError when the result is non-integral or not positive.
std::int64_t solve_word_problem(const WordProblemConfig& config);

}  // namespace smartgen
