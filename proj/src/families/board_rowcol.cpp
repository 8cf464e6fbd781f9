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

constexpr GlyphKind kItemGlyphs[] = {GlyphKind::Coin, GlyphKind::Star, GlyphKind::Heart, GlyphKind::Flower};

class BoardRowColGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::BoardRowCol; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const int m = static_cast<int>(rng.uniform_int(param(spec, "m_min", 3), param(spec, "m_max", 5)));
    const int c = static_cast<int>(rng.uniform_int(1, m - 1));
    const BoardMode mode = rng.bernoulli(0.5) ? BoardMode::Remove : BoardMode::Add;

    // A valid board: c shifted copies of a permutation, so every row and
    // column holds c items.
    std::vector<int> perm(m), shifts(m);
    for (int i = 0; i < m; ++i) perm[i] = shifts[i] = i;
    rng.shuffle(perm);
    shifts = rng.sample(shifts, static_cast<std::size_t>(c));
    Board board(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i) {
      for (int s : shifts) board[i][(perm[i] + s) % m] = 1;
    }

    // Perturb it with e extra (remove mode) or missing (add mode) items.
    std::vector<std::pair<int, int>> cells;
    const int want = mode == BoardMode::Remove ? 0 : 1;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (board[i][j] == want) cells.emplace_back(i, j);
      }
    }
    const auto e_max = std::min<std::int64_t>({param(spec, "moves_max", 4), spec.answer_type.hi,
                                              static_cast<std::int64_t>(cells.size())});
    if (e_max < 1) throw DegeneracyError("board has no room to perturb");
    const auto e = rng.uniform_int(1, e_max);
    for (const auto& [i, j] : rng.sample(cells, static_cast<std::size_t>(e))) board[i][j] = 1 - want;

    const std::int64_t moves = min_moves_rowcol(board, c, mode);
    if (moves < spec.answer_type.lo || moves > spec.answer_type.hi) {
      throw DegeneracyError("move count outside the answer range");
    }

    const std::size_t item = rng.index(std::size(kItemGlyphs));
    Scene scene;
    const double cell = 180.0 / m;
    const double x0 = (kDefaultCanvas - cell * m) / 2;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Point o{x0 + cell * j, x0 + cell * i};
        scene.add(RectShape{o, cell, cell, Style{kBlack, Rgb{245, 245, 235}, 1.0}});
        if (board[i][j]) {
          scene.add(GlyphShape{kItemGlyphs[item], {o.x + cell / 2, o.y + cell / 2}, cell * 0.32,
                               Style{kBlack, kPalette[item], 1.0}});
        }
      }
    }

    Bindings b;
    b.numbers = {{"c", c}};
    b.words["item"] = std::string(glyph_name(kItemGlyphs[item]));

    Draft d;
    d.config = {{"board", board}, {"c", c}, {"mode", mode == BoardMode::Remove ? "remove" : "add"}};
    d.answer = moves;
    d.scene = std::move(scene);
    d.question = question_from(family(), mode == BoardMode::Remove ? "remove" : "add", b, rng);
    d.policy = IntegerWindow{0, std::nullopt};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    const std::string mode = config.at("mode").get<std::string>();
    if (mode != "remove" && mode != "add") throw ParseError(0, "unknown board mode " + mode);
    const std::int64_t moves =
        oracle::rowcol_moves(config.at("board").get<Board>(), config.at("c").get<int>(),
                             mode == "remove" ? BoardMode::Remove : BoardMode::Add);
    if (moves < 0) throw ConsistencyError("no valid board within the oracle's move limit");
    return moves;
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_board_rowcol() {
  return std::make_shared<BoardRowColGenerator>();
}

}  // namespace smartgen::detail
