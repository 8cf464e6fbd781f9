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

#include "smartgen/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "smartgen/errors.hpp"

namespace smartgen {

// ---- simple paths ----------------------------------------------------------

namespace {

std::vector<std::vector<int>> adjacency(std::span<const Edge> edges, int min_nodes) {
  int n = min_nodes;
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0) throw PreconditionError("negative vertex id");
    n = std::max({n, u + 1, v + 1});
  }
  std::vector<std::set<int>> sets(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    sets[u].insert(v);
    sets[v].insert(u);
  }
  std::vector<std::vector<int>> adj;
  for (const auto& s : sets) adj.emplace_back(s.begin(), s.end());
  return adj;
}

std::int64_t paths_from(const std::vector<std::vector<int>>& adj, std::vector<char>& visited,
                        int at, int target, int remaining) {
  if (at == target) return remaining == 0 ? 1 : 0;
  if (remaining == 0) return 0;
  std::int64_t total = 0;
  for (int next : adj[at]) {
    if (visited[next]) continue;
    visited[next] = 1;
    total += paths_from(adj, visited, next, target, remaining - 1);
    visited[next] = 0;
  }
  return total;
}

}  // namespace

std::int64_t count_simple_paths(std::span<const Edge> edges, int s, int t, int j) {
  if (s == t) throw PreconditionError("source and target must differ");
  if (j < 1) throw PreconditionError("path length must be at least 1");
  if (s < 0 || t < 0) throw PreconditionError("negative vertex id");
  const auto adj = adjacency(edges, std::max(s, t) + 1);
  std::vector<char> visited(adj.size(), 0);
  visited[s] = 1;
  return paths_from(adj, visited, s, t, j);
}

// ---- road grid -------------------------------------------------------------

namespace {

// Backtracking over the top half H = [A | B] (n x 2n). Row i is a straight
// road; columns j and j + n are the two crossings of circle j.
class RoadGridSearch {
 public:
  RoadGridSearch(int n, int k) : n_(n), h_(n, std::vector<int>(2 * n, 0)) {
    row_left_.assign(n, k);
    circle_left_.assign(n, k);
    // Cells of each circle still unvisited after position p (row-major).
    circle_cells_after_.assign(2 * n * n, std::vector<int>(n, 0));
    std::vector<int> counts(n, 0);
    for (int p = 2 * n * n - 1; p >= 0; --p) {
      circle_cells_after_[p] = counts;
      counts[(p % (2 * n)) % n] += 1;
    }
  }

  bool find(Rng* rng) { return step(0, rng, nullptr); }
  std::int64_t count() {
    std::int64_t total = 0;
    step(0, nullptr, &total);
    return total;
  }
  const BinaryMatrix& top() const { return h_; }

 private:
  bool step(int p, Rng* rng, std::int64_t* counter) {
    const int cells = 2 * n_ * n_;
    if (p == cells) {
      if (counter) {
        ++*counter;
        return false;  // keep enumerating
      }
      return true;
    }
    const int i = p / (2 * n_);
    const int j = p % (2 * n_);
    const int c = j % n_;
    int first = 1;
    if (rng) first = rng->bernoulli(0.5) ? 1 : 0;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const int v = attempt == 0 ? first : 1 - first;
      if (v == 1 && (row_left_[i] == 0 || circle_left_[c] == 0)) continue;
      row_left_[i] -= v;
      circle_left_[c] -= v;
      const int row_cells_after = 2 * n_ - j - 1;
      const bool ok = row_left_[i] <= row_cells_after &&
                      circle_left_[c] <= circle_cells_after_[p][c];
      h_[i][j] = v;
      if (ok && step(p + 1, rng, counter)) return true;
      h_[i][j] = 0;
      row_left_[i] += v;
      circle_left_[c] += v;
    }
    return false;
  }

  int n_;
  BinaryMatrix h_;
  std::vector<int> row_left_;
  std::vector<int> circle_left_;
  std::vector<std::vector<int>> circle_cells_after_;
};

void check_road_grid_params(int n, int k) {
  if (n < 1 || k < 1 || k > 2 * n) {
    throw InfeasibleError("no road grid with n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
}

}  // namespace

BinaryMatrix solve_road_grid(int n, int k, Rng& rng) {
  check_road_grid_params(n, k);
  RoadGridSearch search(n, k);
  if (!search.find(&rng)) {
    throw InfeasibleError("no road grid with n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  const BinaryMatrix& h = search.top();
  BinaryMatrix x(2 * n, std::vector<int>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      x[i][j] = x[i + n][j + n] = h[i][j];          // A
      x[i][j + n] = x[i + n][j] = h[i][j + n];      // B
    }
  }
  return x;
}

std::int64_t count_road_grid_solutions(int n, int k) {
  check_road_grid_params(n, k);
  return RoadGridSearch(n, k).count();
}

// ---- fence jumps -----------------------------------------------------------

std::int64_t simulate_fence_jumps(std::int64_t d, std::int64_t f, std::int64_t b, std::int64_t t) {
  if (!(f > b && b >= 0)) throw PreconditionError("fence jumps need f > b >= 0");
  if (d < 1 || t < 1) throw PreconditionError("fence jumps need d >= 1 and t >= 1");
  std::int64_t position = 0;
  std::int64_t jumps = 0;
  while (true) {
    for (std::int64_t i = 0; i < f; ++i) {
      ++position;
      ++jumps;
      if (position == d) return jumps * t;
    }
    for (std::int64_t i = 0; i < b; ++i) {
      --position;
      ++jumps;
    }
  }
}

// ---- containment -----------------------------------------------------------

std::string_view region_name(const Region& r) {
  switch (r.index()) {
    case 0: return "circle";
    case 1: return "rectangle";
    default: return "triangle";
  }
}

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double u = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(p.x - (a.x + u * dx), p.y - (a.y + u * dy));
}

}  // namespace

bool strictly_inside(const Region& region, Point p) {
  double margin = 0.0;  // distance to the boundary
  bool inside = false;
  if (const auto* d = std::get_if<Disk>(&region)) {
    const double r = std::hypot(p.x - d->center.x, p.y - d->center.y);
    margin = std::abs(r - d->radius);
    inside = r < d->radius;
  } else if (const auto* bx = std::get_if<Box>(&region)) {
    inside = p.x > bx->lo.x && p.x < bx->hi.x && p.y > bx->lo.y && p.y < bx->hi.y;
    const std::array<Point, 4> c = {bx->lo, Point{bx->hi.x, bx->lo.y}, bx->hi,
                                    Point{bx->lo.x, bx->hi.y}};
    margin = 1e300;
    for (int e = 0; e < 4; ++e) margin = std::min(margin, distance_to_segment(p, c[e], c[(e + 1) % 4]));
  } else {
    const auto& v = std::get<Triangle>(region).vertices;
    const double s0 = cross(v[0], v[1], p);
    const double s1 = cross(v[1], v[2], p);
    const double s2 = cross(v[2], v[0], p);
    inside = (s0 > 0 && s1 > 0 && s2 > 0) || (s0 < 0 && s1 < 0 && s2 < 0);
    margin = std::min({distance_to_segment(p, v[0], v[1]), distance_to_segment(p, v[1], v[2]),
                       distance_to_segment(p, v[2], v[0])});
  }
  if (margin < kBoundaryTolerance) throw DegeneracyError("point on a shape boundary");
  return inside;
}

std::int64_t count_icons_by_predicate(const ContainmentConfig& config) {
  std::int64_t count = 0;
  for (const Icon& icon : config.icons) {
    const bool in1 = strictly_inside(config.first, icon.at);
    const bool in2 = strictly_inside(config.second, icon.at);
    bool hit = false;
    switch (config.predicate) {
      case Predicate::InBoth: hit = in1 && in2; break;
      case Predicate::InFirstOutSecond: hit = in1 && !in2; break;
      case Predicate::OutFirstInSecond: hit = !in1 && in2; break;
      case Predicate::OutBoth: hit = !in1 && !in2; break;
    }
    count += hit ? 1 : 0;
  }
  return count;
}

// ---- board rows/columns ----------------------------------------------------

namespace {

// Bipartite b-matching feasibility: can each row i take row_need[i] cells and
// each column j col_need[j] cells using only cells where allowed[i][j]?
bool degree_feasible(const std::vector<std::vector<bool>>& allowed, const std::vector<int>& row_need,
                     const std::vector<int>& col_need) {
  const int m = static_cast<int>(row_need.size());
  const int source = 2 * m;
  const int sink = 2 * m + 1;
  std::vector<std::vector<int>> cap(2 * m + 2, std::vector<int>(2 * m + 2, 0));
  for (int i = 0; i < m; ++i) {
    cap[source][i] = row_need[i];
    cap[m + i][sink] = col_need[i];
    for (int j = 0; j < m; ++j) cap[i][m + j] = allowed[i][j] ? 1 : 0;
  }
  const int want = std::accumulate(row_need.begin(), row_need.end(), 0);
  if (want != std::accumulate(col_need.begin(), col_need.end(), 0)) return false;

  int flow = 0;
  while (true) {
    std::vector<int> parent(2 * m + 2, -1);
    parent[source] = source;
    std::vector<int> queue = {source};
    for (std::size_t q = 0; q < queue.size() && parent[sink] < 0; ++q) {
      const int u = queue[q];
      for (int v = 0; v < 2 * m + 2; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    int push = 1 << 30;
    for (int v = sink; v != source; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
    for (int v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
  }
  return flow == want;
}

}  // namespace

std::int64_t min_moves_rowcol(const Board& board, int c, BoardMode mode) {
  const int m = static_cast<int>(board.size());
  if (m == 0) throw PreconditionError("empty board");
  for (const auto& row : board) {
    if (static_cast<int>(row.size()) != m) throw PreconditionError("board must be square");
  }
  if (c < 0 || c > m) throw PreconditionError("target count out of range");

  std::vector<int> rows(m, 0), cols(m, 0);
  std::int64_t total = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (board[i][j]) {
        ++rows[i];
        ++cols[j];
        ++total;
      }
    }
  }
  std::vector<std::vector<bool>> allowed(m, std::vector<bool>(m));
  std::vector<int> row_need(m), col_need(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      allowed[i][j] = mode == BoardMode::Remove ? board[i][j] != 0 : board[i][j] == 0;
    }
    row_need[i] = mode == BoardMode::Remove ? c : c - rows[i];
    col_need[i] = mode == BoardMode::Remove ? c : c - cols[i];
  }
  const bool sign_ok = std::all_of(row_need.begin(), row_need.end(), [](int v) { return v >= 0; }) &&
                       std::all_of(col_need.begin(), col_need.end(), [](int v) { return v >= 0; });
  if (!sign_ok || !degree_feasible(allowed, row_need, col_need)) {
    throw ConsistencyError(std::string("board cannot reach ") + std::to_string(c) +
                           " per row and column by " +
                           (mode == BoardMode::Remove ? "removals" : "additions"));
  }
  const std::int64_t target = static_cast<std::int64_t>(c) * m;
  return total > target ? total - target : target - total;
}

// ---- stick stack -----------------------------------------------------------

int middle_stick(std::span<const int> order) {
  if (order.empty() || order.size() % 2 == 0) {
    throw PreconditionError("stick order must have odd length");
  }
  return order[(order.size() - 1) / 2];
}

// ---- diagram operations ----------------------------------------------------

Op parse_op(std::string_view text) {
  auto eat = [&](std::string_view prefix) {
    if (text.substr(0, prefix.size()) == prefix) {
      text.remove_prefix(prefix.size());
      return true;
    }
    return false;
  };
  Op op;
  if (eat("+")) op.kind = OpKind::Add;
  else if (eat("-") || eat("−")) op.kind = OpKind::Sub;
  else if (eat("x") || eat("*") || eat("×")) op.kind = OpKind::Mul;
  else if (eat("/") || eat("÷")) op.kind = OpKind::Div;
  else throw PreconditionError("unknown operation '" + std::string(text) + "'");
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw PreconditionError("operation needs a non-negative integer operand");
  }
  op.operand = std::stoll(std::string(text));
  return op;
}

std::string format_op(const Op& op) {
  static constexpr std::array<char, 4> kSymbols = {'+', '-', 'x', '/'};
  return kSymbols[static_cast<std::size_t>(op.kind)] + std::to_string(op.operand);
}

std::optional<std::int64_t> apply_op(const Op& op, std::int64_t value) {
  switch (op.kind) {
    case OpKind::Add: return value + op.operand;
    case OpKind::Sub: return value - op.operand;
    case OpKind::Mul: return value * op.operand;
    case OpKind::Div:
      if (op.operand == 0 || value % op.operand != 0) return std::nullopt;
      return value / op.operand;
  }
  return std::nullopt;
}

namespace {

std::optional<std::int64_t> invert_op(const Op& op, std::int64_t value) {
  switch (op.kind) {
    case OpKind::Add: return value - op.operand;
    case OpKind::Sub: return value + op.operand;
    case OpKind::Mul:
      if (op.operand == 0 || value % op.operand != 0) return std::nullopt;
      return value / op.operand;
    case OpKind::Div: return value * op.operand;
  }
  return std::nullopt;
}

}  // namespace

std::string infer_diagram_op(const DiagramChain& chain, std::span<const std::string> candidates) {
  const auto unknown = std::find(chain.ops.begin(), chain.ops.end(), std::nullopt);
  if (unknown == chain.ops.end() || std::count(chain.ops.begin(), chain.ops.end(), std::nullopt) != 1) {
    throw PreconditionError("diagram chain needs exactly one unknown operation");
  }
  // Meet in the middle: run known ops forward up to the gap, backward after it.
  std::optional<std::int64_t> before = chain.start;
  for (auto it = chain.ops.begin(); it != unknown && before; ++it) before = apply_op(**it, *before);
  std::optional<std::int64_t> after = chain.end;
  for (auto it = chain.ops.end(); it != unknown + 1 && after;) {
    --it;
    after = invert_op(**it, *after);
  }
  if (!before || !after) throw PreconditionError("known diagram edges are inconsistent");

  std::vector<std::string> fits;
  for (const std::string& c : candidates) {
    const std::optional<std::int64_t> v = apply_op(parse_op(c), *before);
    if (v && *v == *after) fits.push_back(c);
  }
  if (fits.size() != 1) {
    throw AmbiguityError(std::to_string(fits.size()) + " candidate operations fit the diagram");
  }
  return fits.front();
}

// ---- shelf order -----------------------------------------------------------

std::vector<int> impossible_shelf_positions(int num_items,
                                            std::span<const ShelfConstraint> constraints,
                                            int query) {
  if (num_items < 1 || num_items > 10) throw PreconditionError("shelf needs 1..10 items");
  if (query < 0 || query >= num_items) throw PreconditionError("query item out of range");
  for (const ShelfConstraint& c : constraints) {
    const bool b_ok = c.kind == ShelfConstraint::Kind::Fixed ? (c.b >= 1 && c.b <= num_items)
                                                             : (c.b >= 0 && c.b < num_items);
    if (c.a < 0 || c.a >= num_items || !b_ok) throw PreconditionError("constraint out of range");
  }
  // pos[item] in 1..n; iterate over all placements.
  std::vector<int> pos(num_items);
  std::iota(pos.begin(), pos.end(), 1);
  std::vector<bool> seen(num_items + 1, false);
  bool any = false;
  do {
    const bool ok = std::all_of(constraints.begin(), constraints.end(), [&](const ShelfConstraint& c) {
      switch (c.kind) {
        case ShelfConstraint::Kind::Below: return pos[c.a] < pos[c.b];
        case ShelfConstraint::Kind::DirectlyAbove: return pos[c.a] == pos[c.b] + 1;
        case ShelfConstraint::Kind::Fixed: return pos[c.a] == c.b;
      }
      return false;
    });
    if (ok) {
      any = true;
      seen[pos[query]] = true;
    }
  } while (std::next_permutation(pos.begin(), pos.end()));
  if (!any) throw InfeasibleError("shelf constraints cannot all hold");
  std::vector<int> out;
  for (int p = 1; p <= num_items; ++p) {
    if (!seen[p]) out.push_back(p);
  }
  return out;
}

// ---- cipher ----------------------------------------------------------------

std::string encode_word(const CipherMapping& mapping, std::string_view word) {
  std::set<std::string> codes;
  for (const auto& [letter, code] : mapping) {
    if (!codes.insert(code).second) throw PreconditionError("cipher mapping is not injective");
  }
  std::string out;
  for (char ch : word) {
    auto it = mapping.find(ch);
    if (it == mapping.end()) throw PreconditionError(std::string("unmapped letter '") + ch + "'");
    if (!out.empty()) out += ' ';
    out += it->second;
  }
  return out;
}

std::string decode_word(const CipherMapping& mapping, std::string_view code,
                        std::span<const std::string> candidates) {
  std::vector<std::string> hits;
  for (const std::string& w : candidates) {
    try {
      if (encode_word(mapping, w) == code) hits.push_back(w);
    } catch (const PreconditionError&) {
      // a candidate with letters outside the board cannot match
    }
  }
  if (hits.size() != 1) {
    throw AmbiguityError(std::to_string(hits.size()) + " candidate words match the code");
  }
  return hits.front();
}

// ---- hole punch ------------------------------------------------------------

int point_in_all_sheets(std::span<const Sheet> sheets, std::span<const Point> candidates) {
  int found = -1;
  int hits = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Point p = candidates[i];
    const bool all = std::all_of(sheets.begin(), sheets.end(), [&](const Sheet& s) {
      return p.x > s.origin.x && p.x < s.origin.x + s.width && p.y > s.origin.y &&
             p.y < s.origin.y + s.height;
    });
    if (all) {
      found = static_cast<int>(i);
      ++hits;
    }
  }
  if (hits != 1) throw AmbiguityError(std::to_string(hits) + " points lie inside every sheet");
  return found;
}

// ---- word problems ---------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kNumWordProblemKinds> kKindNames = {
    "trade_chain",          "queue_position",  "nested_boxes",  "lit_windows",
    "pizza_slices",         "opposite_train_cars", "bundle_pricing", "distinct_digit_count",
    "catch_up_chests",      "paper_cutting",   "crossroad_distance",
};

std::int64_t positive(std::int64_t v, std::string_view what) {
  if (v <= 0) throw DegeneracyError(std::string(what) + " has no positive answer");
  return v;
}

}  // namespace

std::string_view to_string(WordProblemKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

WordProblemKind parse_word_problem_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<WordProblemKind>(i);
  }
  throw LookupError("unknown word problem kind '" + std::string(name) + "'");
}

std::int64_t WordProblemConfig::at(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) {
    throw PreconditionError(std::string(to_string(kind)) + " needs parameter " + name);
  }
  return it->second;
}

std::int64_t solve_word_problem(const WordProblemConfig& c) {
  const std::string_view what = to_string(c.kind);
  switch (c.kind) {
    case WordProblemKind::TradeChain:
      return positive(c.at("r") * c.at("s") * c.at("f"), what);
    case WordProblemKind::QueuePosition:
      return positive(c.at("total") - (c.at("ahead") + 2), what);
    case WordProblemKind::NestedBoxes: {
      const std::int64_t b = c.at("b");
      return positive(1 + b + b * b, what);
    }
    case WordProblemKind::LitWindows: {
      const std::int64_t w = c.at("w");
      if (w <= 0 || c.at("lit") % w != 0) throw DegeneracyError("lit windows not a multiple");
      return positive(c.at("rooms") - c.at("lit") / w, what);
    }
    case WordProblemKind::PizzaSlices:
      // The host eats too.
      return positive(c.at("p") * c.at("s") - (c.at("g") + 1), what);
    case WordProblemKind::OppositeTrainCars: {
      const std::int64_t v = 2 * c.at("j") - c.at("m");
      if (v > c.at("cars")) throw DegeneracyError("opposite car does not exist");
      return positive(v, what);
    }
    case WordProblemKind::BundlePricing: {
      const std::int64_t size = c.at("size");
      const std::int64_t price = c.at("price");
      const std::int64_t budget = c.at("budget");
      if (price <= 0 || size <= price) throw DegeneracyError("bundle is not a discount");
      return positive(size * (budget / price) + budget % price, what);
    }
    case WordProblemKind::DistinctDigitCount: {
      const std::int64_t lo = c.at("lo");
      const std::int64_t hi = c.at("hi");
      const std::set<int> digits(c.digits.begin(), c.digits.end());
      std::int64_t count = 0;
      for (std::int64_t n = std::max<std::int64_t>(lo + 1, 10); n < std::min<std::int64_t>(hi, 100); ++n) {
        const int tens = static_cast<int>(n / 10);
        const int ones = static_cast<int>(n % 10);
        if (tens != ones && digits.count(tens) && digits.count(ones)) ++count;
      }
      return positive(count, what);
    }
    case WordProblemKind::CatchUpChests: {
      const std::int64_t gain = c.at("r2") - c.at("r1");
      if (gain <= 0 || c.at("start") % gain != 0) throw DegeneracyError("chests never meet on a day");
      return positive(c.at("start") / gain, what);
    }
    case WordProblemKind::PaperCutting:
      // Pass one doubles white and gray, pass two doubles black and gray.
      return positive(2 * c.at("w") + 2 * c.at("k") + 4 * c.at("g"), what);
    case WordProblemKind::CrossroadDistance: {
      const std::int64_t x = c.at("x");
      if (x >= c.at("am") || x >= c.at("mj")) throw DegeneracyError("crossroad beyond a house");
      return positive((c.at("am") - x) + (c.at("mj") - x), what);
    }
  }
  throw PreconditionError("unknown word problem kind");
}

}  // namespace smartgen
