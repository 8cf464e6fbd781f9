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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smartgen/core.hpp"
#include "smartgen/rng.hpp"

namespace smartgen {

class Registry;

// One manifest line. `svg` is the image file's content; it is not part of the
// line itself.
struct InstanceRecord {
  int root_id = 0;
  int instance_id = 0;
  std::uint64_t seed = 0;
  SkillCategory category = SkillCategory::Counting;
  std::string question;
  std::array<std::string, 5> options;
  int answer_index = 0;
  AnswerValue answer_value;
  std::string image_path;  // relative to the dataset directory
  json config;
  std::string svg;

  bool operator==(const InstanceRecord&) const = default;
};

std::string image_path_for(int root_id, int instance_id);
InstanceRecord record_from_instance(const PuzzleInstance& instance);

struct Dataset {
  std::uint64_t global_seed = 0;
  std::vector<RootPuzzleSpec> roots;
  std::vector<InstanceRecord> records;  // ordered by (root_id, instance_id)

  const RootPuzzleSpec& root(int root_id) const;  // throws LookupError
  bool operator==(const Dataset&) const = default;
};

// Instances 1..n of every listed root. Work is spread over `threads` workers
// (0 = hardware concurrency); the result does not depend on the count.
Dataset generate_dataset(const Registry& registry, std::uint64_t global_seed,
                         const std::vector<int>& root_ids, int instances_per_root,
                         unsigned threads = 0);

// One record per (root_id, instance_id), ids contiguous from 1 per root and
// every root known. Throws IntegrityError.
void validate_dataset(const Dataset& dataset);

inline constexpr std::string_view kManifestFile = "manifest.jsonl";
inline constexpr std::string_view kDatasetFile = "dataset.json";

ordered_json record_to_json(const InstanceRecord& record);
// Throws ParseError(line, ...) on a missing or mistyped field.
InstanceRecord record_from_json(const json& j, std::size_t line);

// Writes manifest.jsonl, dataset.json (seed and root specs) and one SVG per
// record under puzzle_<root_id>/instance_<instance_id>.svg.
void write_manifest(const Dataset& dataset, const std::filesystem::path& directory);
// Throws ParseError naming the line for malformed records and IntegrityError
// for missing images or broken id ranges.
Dataset read_manifest(const std::filesystem::path& directory);

// ---- splits ----------------------------------------------------------------

enum class SplitScheme { IS, AS, PS, FS };

std::string_view to_string(SplitScheme scheme);
SplitScheme parse_split_scheme(std::string_view name);

struct SplitParams {
  double train = 0.80;
  double val = 0.05;
  double test = 0.15;
  int m = 10;                 // FS: instances of each held-out root moved to train
  std::vector<int> ps_test;   // PS/FS: explicit held-out roots; empty = default rule
};

using InstanceKey = std::pair<int, int>;  // (root_id, instance_id)

struct SplitManifest {
  SplitScheme scheme = SplitScheme::IS;
  SplitParams params;
  std::vector<int> ps_val_roots;
  std::vector<int> ps_test_roots;
  std::vector<InstanceKey> train;
  std::vector<InstanceKey> val;
  std::vector<InstanceKey> test;
};

// The 21 held-out roots of the reference PS split.
const std::vector<int>& reference_ps_test_ids();

// IS: per root, contiguous id blocks; test is the last share, val the block
//     before it.
// AS: per root, every instance whose answer equals the lower median of the
//     root's answers is held out; the rest are split as in IS.
// PS: roots are held out whole, 77/3/21. The reference test list is used
//     when all 21 ids are present, otherwise a seeded per-category draw.
// FS: PS, then m seeded instances of each test root move to train.
// Throws SplitError on invalid parameters.
SplitManifest make_split(const Dataset& dataset, SplitScheme scheme, const SplitParams& params,
                         Rng& rng);

json split_to_json(const SplitManifest& split);
SplitManifest split_from_json(const json& j);
std::string split_file_name(SplitScheme scheme);  // "split_IS.json"
void write_split(const SplitManifest& split, const std::filesystem::path& directory);
SplitManifest read_split(const std::filesystem::path& file);

}  // namespace smartgen
