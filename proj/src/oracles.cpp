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

#include "smartgen/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "smartgen/errors.hpp"

namespace smartgen::oracle {

std::int64_t simple_paths(std::span<const Edge> edges, int s, int t, int j) {
  int n = std::max(s, t) + 1;
  std::set<std::pair<int, int>> adj;
  for (const auto& [u, v] : edges) {
    n = std::max({n, u + 1, v + 1});
    adj.insert({u, v});
    adj.insert({v, u});
  }
  if (j < 1 || s == t) return 0;
  std::vector<int> others;
  for (int v = 0; v < n; ++v) {
    if (v != s && v != t) others.push_back(v);
  }
  const std::size_t inner = static_cast<std::size_t>(j - 1);
  if (inner > others.size()) return 0;

  // Walk all injective sequences of length j - 1 drawn from `others`.
  std::int64_t count = 0;
  std::vector<int> seq;
  std::vector<char> used(others.size(), 0);
  auto check = [&] {
    int prev = s;
    for (int v : seq) {
      if (!adj.count({prev, v}) || prev == v) return false;
      prev = v;
    }
    return prev != t && adj.count({prev, t}) > 0;
  };
  auto rec = [&](auto&& self) -> void {
    if (seq.size() == inner) {
      count += check() ? 1 : 0;
      return;
    }
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      seq.push_back(others[i]);
      self(self);
      seq.pop_back();
      used[i] = 0;
    }
  };
  rec(rec);
  return count;
}

bool road_grid_valid(const BinaryMatrix& x, int n, int k) {
  const std::size_t size = static_cast<std::size_t>(2 * n);
  if (x.size() != size) return false;
  for (const auto& row : x) {
    if (row.size() != size) return false;
    for (int v : row) {
      if (v != 0 && v != 1) return false;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x[i][j] != x[i + n][j + n] || x[i][j + n] != x[i + n][j]) return false;
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    int row = 0;
    int col = 0;
    for (std::size_t j = 0; j < size; ++j) {
      row += x[i][j];
      col += x[j][i];
    }
    if (row != k || col != k) return false;
  }
  return true;
}

std::int64_t fence_seconds(std::int64_t d, std::int64_t f, std::int64_t b, std::int64_t t) {
  if (d <= f) return d * t;
  // Whole cycles needed before the final forward run can reach the end.
  const std::int64_t net = f - b;
  const std::int64_t cycles = (d - f + net - 1) / net;
  const std::int64_t jumps = cycles * (f + b) + (d - cycles * net);
  return jumps * t;
}

namespace {

std::vector<Point> polygon_of(const Region& region) {
  if (const auto* bx = std::get_if<Box>(&region)) {
    return {bx->lo, {bx->hi.x, bx->lo.y}, bx->hi, {bx->lo.x, bx->hi.y}};
  }
  const auto& v = std::get<Triangle>(region).vertices;
  return {v.begin(), v.end()};
}

bool ray_cast(const std::vector<Point>& poly, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

bool point_in_region(const Region& region, Point p) {
  if (const auto* d = std::get_if<Disk>(&region)) {
    const double dx = p.x - d->center.x;
    const double dy = p.y - d->center.y;
    return dx * dx + dy * dy < d->radius * d->radius;
  }
  return ray_cast(polygon_of(region), p);
}

std::int64_t containment_count(const ContainmentConfig& config) {
  std::int64_t n = 0;
  for (const Icon& icon : config.icons) {
    const bool a = point_in_region(config.first, icon.at);
    const bool b = point_in_region(config.second, icon.at);
    const bool want_a = config.predicate == Predicate::InBoth ||
                        config.predicate == Predicate::InFirstOutSecond;
    const bool want_b = config.predicate == Predicate::InBoth ||
                        config.predicate == Predicate::OutFirstInSecond;
    if (a == want_a && b == want_b) ++n;
  }
  return n;
}

std::int64_t rowcol_moves(const Board& board, int c, BoardMode mode, int max_moves) {
  const std::size_t m = board.size();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool occupied = board[i][j] != 0;
      if (occupied == (mode == BoardMode::Remove)) cells.push_back({i, j});
    }
  }
  auto valid = [&](const Board& b) {
    for (std::size_t i = 0; i < m; ++i) {
      int row = 0;
      int col = 0;
      for (std::size_t j = 0; j < m; ++j) {
        row += b[i][j];
        col += b[j][i];
      }
      if (row != c || col != c) return false;
    }
    return true;
  };
  for (int size = 0; size <= max_moves && static_cast<std::size_t>(size) <= cells.size(); ++size) {
    // Iterate over all subsets of `cells` with exactly `size` members.
    std::vector<char> pick(cells.size(), 0);
    std::fill(pick.end() - size, pick.end(), 1);
    do {
      Board b = board;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (pick[k]) b[cells[k].first][cells[k].second] ^= 1;
      }
      if (valid(b)) return size;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return -1;
}

int middle_stick(std::span<const int> order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t below = 0;
    std::size_t above = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (j < i) ++below;
      if (j > i) ++above;
    }
    if (below == above) return order[i];
  }
  throw PreconditionError("no middle stick");
}

std::vector<std::string> diagram_fits(const DiagramChain& chain,
                                      std::span<const std::string> candidates) {
  std::vector<std::string> fits;
  for (const std::string& cand : candidates) {
    const Op op = parse_op(cand);
    std::int64_t v = chain.start;
    bool ok = true;
    for (const auto& edge : chain.ops) {
      const Op& use = edge ? *edge : op;
      switch (use.kind) {
        case OpKind::Add: v += use.operand; break;
        case OpKind::Sub: v -= use.operand; break;
        case OpKind::Mul: v *= use.operand; break;
        case OpKind::Div:
          if (use.operand == 0 || v % use.operand != 0) ok = false;
          else v /= use.operand;
          break;
      }
      if (!ok) break;
    }
    if (ok && v == chain.end) fits.push_back(cand);
  }
  return fits;
}

std::vector<int> shelf_impossible(int num_items, std::span<const ShelfConstraint> constraints,
                                  int query) {
  std::vector<int> pos(num_items, 0);
  std::vector<char> taken(num_items + 1, 0);
  std::set<int> possible;
  auto consistent = [&] {
    // Only constraints whose items are all placed can be judged.
    for (const ShelfConstraint& c : constraints) {
      const int pa = pos[c.a];
      if (c.kind == ShelfConstraint::Kind::Fixed) {
        if (pa != 0 && pa != c.b) return false;
        continue;
      }
      const int pb = pos[c.b];
      if (pa == 0 || pb == 0) continue;
      if (c.kind == ShelfConstraint::Kind::Below && !(pa < pb)) return false;
      if (c.kind == ShelfConstraint::Kind::DirectlyAbove && pa != pb + 1) return false;
    }
    return true;
  };
  auto place = [&](auto&& self, int item) -> void {
    if (item == num_items) {
      possible.insert(pos[query]);
      return;
    }
    for (int p = 1; p <= num_items; ++p) {
      if (taken[p]) continue;
      taken[p] = 1;
      pos[item] = p;
      if (consistent()) self(self, item + 1);
      pos[item] = 0;
      taken[p] = 0;
    }
  };
  place(place, 0);
  std::vector<int> out;
  for (int p = 1; p <= num_items; ++p) {
    if (!possible.count(p)) out.push_back(p);
  }
  return out;
}

std::vector<std::string> cipher_matches(const CipherBoard& board, const std::string& code,
                                        std::span<const std::string> candidates) {
  std::vector<std::string> out;
  for (const std::string& word : candidates) {
    std::string encoded;
    bool ok = true;
    for (char ch : word) {
      // Scan the grid for the letter.
      bool found = false;
      for (std::size_t r = 0; r < board.rows.size() && !found; ++r) {
        for (std::size_t c = 0; c < board.rows[r].size() && !found; ++c) {
          if (board.rows[r][c] == ch) {
            if (!encoded.empty()) encoded += ' ';
            encoded += board.column_labels[c] + board.row_labels[r];
            found = true;
          }
        }
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok && encoded == code) out.push_back(word);
  }
  return out;
}

std::vector<int> punch_hits(std::span<const Sheet> sheets, std::span<const Point> candidates) {
  double x0 = -std::numeric_limits<double>::infinity();
  double y0 = x0;
  double x1 = std::numeric_limits<double>::infinity();
  double y1 = x1;
  for (const Sheet& s : sheets) {
    x0 = std::max(x0, s.origin.x);
    y0 = std::max(y0, s.origin.y);
    x1 = std::min(x1, s.origin.x + s.width);
    y1 = std::min(y1, s.origin.y + s.height);
  }
  std::vector<int> hits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Point p = candidates[i];
    if (p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1) hits.push_back(static_cast<int>(i));
  }
  return hits;
}

std::int64_t word_problem(const WordProblemConfig& c) {
  switch (c.kind) {
    case WordProblemKind::TradeChain: {
      std::int64_t flowers = 0;
      for (std::int64_t ruby = 0; ruby < c.at("r"); ++ruby) {
        for (std::int64_t sapphire = 0; sapphire < c.at("s"); ++sapphire) flowers += c.at("f");
      }
      return flowers;
    }
    case WordProblemKind::QueuePosition: {
      // Line positions 1..total from the front.
      const std::int64_t first = c.at("ahead") + 1;
      const std::int64_t second = first + 1;
      std::int64_t behind = 0;
      for (std::int64_t p = 1; p <= c.at("total"); ++p) behind += p > second ? 1 : 0;
      return behind;
    }
    case WordProblemKind::NestedBoxes: {
      std::int64_t total = 0;
      std::vector<int> level = {0};
      while (!level.empty()) {
        std::vector<int> next;
        for (int depth : level) {
          ++total;
          if (depth < 2) next.insert(next.end(), static_cast<std::size_t>(c.at("b")), depth + 1);
        }
        level = std::move(next);
      }
      return total;
    }
    case WordProblemKind::LitWindows: {
      for (std::int64_t on = 0; on <= c.at("rooms"); ++on) {
        if (on * c.at("w") == c.at("lit")) return c.at("rooms") - on;
      }
      return -1;
    }
    case WordProblemKind::PizzaSlices: {
      std::int64_t slices = c.at("p") * c.at("s");
      for (std::int64_t person = 0; person <= c.at("g"); ++person) --slices;  // guests + host
      return slices;
    }
    case WordProblemKind::OppositeTrainCars: {
      // Car a of one train faces car b of the other when a + b is constant.
      const std::int64_t sum = c.at("j") + c.at("j");
      for (std::int64_t b = 1; b <= c.at("cars"); ++b) {
        if (c.at("m") + b == sum) return b;
      }
      return -1;
    }
    case WordProblemKind::BundlePricing: {
      std::int64_t best = 0;
      for (std::int64_t bundles = 0; bundles * c.at("price") <= c.at("budget"); ++bundles) {
        const std::int64_t left = c.at("budget") - bundles * c.at("price");
        best = std::max(best, bundles * c.at("size") + left);
      }
      return best;
    }
    case WordProblemKind::DistinctDigitCount: {
      std::set<int> made;
      for (int a : c.digits) {
        for (int b : c.digits) {
          if (a == b || a == 0) continue;
          const int n = 10 * a + b;
          if (n > c.at("lo") && n < c.at("hi")) made.insert(n);
        }
      }
      return static_cast<std::int64_t>(made.size());
    }
    case WordProblemKind::CatchUpChests: {
      std::int64_t left = c.at("start");
      std::int64_t right = 0;
      for (std::int64_t day = 1; day <= 100000; ++day) {
        left += c.at("r1");
        right += c.at("r2");
        if (left == right) return day;
      }
      return -1;
    }
    case WordProblemKind::PaperCutting: {
      enum Color { White, Black, Gray };
      std::vector<Color> pieces;
      pieces.insert(pieces.end(), static_cast<std::size_t>(c.at("w")), White);
      pieces.insert(pieces.end(), static_cast<std::size_t>(c.at("k")), Black);
      pieces.insert(pieces.end(), static_cast<std::size_t>(c.at("g")), Gray);
      for (Color skip : {Black, White}) {
        std::vector<Color> next;
        for (Color p : pieces) {
          next.push_back(p);
          if (p != skip) next.push_back(p);
        }
        pieces = std::move(next);
      }
      return static_cast<std::int64_t>(pieces.size());
    }
    case WordProblemKind::CrossroadDistance: {
      // Shortest path over A-X, X-M, X-J where X is the crossroad.
      enum { A, M, J, X };
      constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
      std::int64_t d[4][4];
      for (auto& row : d) std::fill(std::begin(row), std::end(row), kInf);
      for (int i = 0; i < 4; ++i) d[i][i] = 0;
      auto link = [&](int u, int v, std::int64_t w) { d[u][v] = d[v][u] = w; };
      link(A, X, c.at("am") - c.at("x"));
      link(X, M, c.at("x"));
      link(X, J, c.at("mj") - c.at("x"));
      for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
      }
      return d[A][J];
    }
  }
  return -1;
}

}  // namespace smartgen::oracle
