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

// Brute-force recomputation of every family's answer. Deliberately shares no
// code with solvers.cpp so that agreement between the two is evidence.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smartgen/solvers.hpp"

namespace smartgen::oracle {

// Enumerates every ordered sequence of j - 1 distinct intermediate vertices.
std::int64_t simple_paths(std::span<const Edge> edges, int s, int t, int j);

// Checks the full 2n x 2n matrix: 0/1 entries, block symmetry, all sums k.
bool road_grid_valid(const BinaryMatrix& x, int n, int k);

// Closed form over whole cycles.
std::int64_t fence_seconds(std::int64_t d, std::int64_t f, std::int64_t b, std::int64_t t);

// Ray casting against polygonal approximations; circles by squared distance.
bool point_in_region(const Region& region, Point p);
std::int64_t containment_count(const ContainmentConfig& config);

// Smallest subset of cells to toggle, found by increasing subset size.
// Returns -1 when no subset of at most `max_moves` cells works.
std::int64_t rowcol_moves(const Board& board, int c, BoardMode mode, int max_moves = 6);

// Element with as many sticks below it as above it.
int middle_stick(std::span<const int> order);

// Forward simulation of the chain with each candidate plugged in; returns the
// fitting candidates.
std::vector<std::string> diagram_fits(const DiagramChain& chain,
                                      std::span<const std::string> candidates);

// Backtracking placement search; positions the query item never takes.
std::vector<int> shelf_impossible(int num_items, std::span<const ShelfConstraint> constraints,
                                  int query);

// Reads letters back off a board given as grid[row][col] with labels.
struct CipherBoard {
  std::vector<std::string> column_labels;
  std::vector<std::string> row_labels;
  std::vector<std::string> rows;  // rows[r][c] is the letter, '.' when empty
};
std::vector<std::string> cipher_matches(const CipherBoard& board, const std::string& code,
                                        std::span<const std::string> candidates);

// Intersection rectangle of all sheets, then strict containment per point.
std::vector<int> punch_hits(std::span<const Sheet> sheets, std::span<const Point> candidates);

// Step-by-step simulation of each story.
std::int64_t word_problem(const WordProblemConfig& config);

}  // namespace smartgen::oracle
