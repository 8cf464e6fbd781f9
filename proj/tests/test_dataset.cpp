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
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "smartgen/dataset.hpp"
#include "smartgen/errors.hpp"
#include "smartgen/generators.hpp"
#include "support.hpp"

using namespace smartgen;
namespace fs = std::filesystem;

namespace {

// A dataset without images: only ids and answers matter to the splitters.
Dataset synthetic(const Registry& reg, int per_root, std::function<std::int64_t(int, int)> answer) {
  Dataset d;
  d.roots = reg.specs();
  for (const auto& spec : d.roots) {
    for (int i = 1; i <= per_root; ++i) {
      InstanceRecord r;
      r.root_id = spec.root_id;
      r.instance_id = i;
      r.category = spec.category;
      r.answer_value = answer(spec.root_id, i);
      d.records.push_back(r);
    }
  }
  return d;
}

std::set<int> roots_of(const std::vector<InstanceKey>& keys) {
  std::set<int> out;
  for (const auto& k : keys) out.insert(k.first);
  return out;
}

void check_disjoint_cover(const Dataset& d, const SplitManifest& s) {
  std::set<InstanceKey> all;
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    for (const auto& k : *part) CHECK(all.insert(k).second);
  }
  CHECK(all.size() == d.records.size());
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("manifest of two roots with three instances") {
  const Registry reg = default_registry();
  const Dataset d = generate_dataset(reg, 5, {1, 4}, 3, 2);
  REQUIRE(d.records.size() == 6);
  const fs::path dir = testing::scratch_dir("manifest");
  write_manifest(d, dir);

  const std::string manifest = read_text(dir / kManifestFile);
  CHECK(std::count(manifest.begin(), manifest.end(), '\n') == 6);
  for (int root : {1, 4}) {
    const fs::path sub = dir / ("puzzle_" + std::to_string(root));
    REQUIRE(fs::is_directory(sub));
    CHECK(std::distance(fs::directory_iterator(sub), fs::directory_iterator()) == 3);
  }
  CHECK(fs::exists(dir / "puzzle_4" / "instance_2.svg"));

  const Dataset back = read_manifest(dir);
  CHECK(back == d);
  const json first = json::parse(manifest.substr(0, manifest.find('\n')));
  for (const char* key : {"root_id", "instance_id", "seed", "category", "question", "options",
                          "answer_index", "answer_value", "image_path"}) {
    CHECK(first.contains(key));
  }
  CHECK(first.at("image_path") == "puzzle_1/instance_1.svg");
}

TEST_CASE("generation does not depend on the worker count") {
  const Registry reg = default_registry();
  const std::vector<int> ids = {3, 1, 2, 11};
  CHECK(generate_dataset(reg, 9, ids, 4, 1) == generate_dataset(reg, 9, ids, 4, 3));
  CHECK_THROWS_AS(generate_dataset(reg, 9, {1, 1}, 2, 1), PreconditionError);
  CHECK_THROWS_AS(generate_dataset(reg, 9, {500}, 2, 1), LookupError);
}

TEST_CASE("a truncated manifest line names the line") {
  const Registry reg = default_registry();
  const fs::path dir = testing::scratch_dir("truncated");
  write_manifest(generate_dataset(reg, 1, {1}, 3, 1), dir);
  std::string text = read_text(dir / kManifestFile);
  const std::size_t second = text.find('\n') + 1;
  const std::size_t third = text.find('\n', second);
  text.erase(second + (third - second) / 2, third - second - (third - second) / 2);
  std::ofstream(dir / kManifestFile) << text;
  try {
    read_manifest(dir);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("a missing image is an integrity error") {
  const Registry reg = default_registry();
  const fs::path dir = testing::scratch_dir("missing_image");
  write_manifest(generate_dataset(reg, 1, {2}, 2, 1), dir);
  fs::remove(dir / "puzzle_2" / "instance_2.svg");
  CHECK_THROWS_AS(read_manifest(dir), IntegrityError);
}

TEST_CASE("validation rejects gaps and unknown roots") {
  const Registry reg = default_registry();
  Dataset d = generate_dataset(reg, 1, {1}, 3, 1);
  Dataset gap = d;
  gap.records.erase(gap.records.begin() + 1);
  CHECK_THROWS_AS(validate_dataset(gap), IntegrityError);
  Dataset stray = d;
  stray.records.back().root_id = 7;
  CHECK_THROWS_AS(validate_dataset(stray), IntegrityError);
  validate_dataset(d);
}

TEST_CASE("IS split of 2000 instances") {
  const Registry reg = testing::full_registry(1);
  const Dataset d = synthetic(reg, 2000, [](int, int i) { return i % 7; });
  Rng rng(1);
  const SplitManifest s = make_split(d, SplitScheme::IS, {}, rng);
  CHECK(s.train.size() == 1600);
  CHECK(s.val.size() == 100);
  REQUIRE(s.test.size() == 300);
  CHECK(s.test.front() == InstanceKey{1, 1701});
  CHECK(s.test.back() == InstanceKey{1, 2000});
  CHECK(s.val.front() == InstanceKey{1, 1601});
  check_disjoint_cover(d, s);
}

TEST_CASE("AS split holds out the median answer") {
  const Registry reg = testing::full_registry(1);
  const std::vector<std::int64_t> answers = {1, 2, 2, 3, 3, 3, 4};
  const Dataset d = synthetic(reg, 7, [&](int, int i) { return answers[i - 1]; });
  Rng rng(1);
  const SplitManifest s = make_split(d, SplitScheme::AS, {}, rng);
  CHECK(s.test == std::vector<InstanceKey>{{1, 4}, {1, 5}, {1, 6}});
  check_disjoint_cover(d, s);
  for (const auto& k : s.train) CHECK(answers[k.second - 1] != 3);
}

TEST_CASE("PS split uses the reference held-out roots") {
  const Registry reg = testing::full_registry(101);
  const Dataset d = synthetic(reg, 4, [](int r, int i) { return r + i; });
  Rng rng(3);
  const SplitManifest s = make_split(d, SplitScheme::PS, {}, rng);
  CHECK(s.ps_test_roots == reference_ps_test_ids());
  CHECK(s.ps_val_roots.size() == 3);
  CHECK(roots_of(s.train).size() == 77);
  CHECK(roots_of(s.val).size() == 3);
  CHECK(roots_of(s.test).size() == 21);
  std::set<int> overlap;
  const auto tr = roots_of(s.train), te = roots_of(s.test);
  std::set_intersection(tr.begin(), tr.end(), te.begin(), te.end(), std::inserter(overlap, overlap.end()));
  CHECK(overlap.empty());
  check_disjoint_cover(d, s);

  Rng again(3);
  const SplitManifest s2 = make_split(d, SplitScheme::PS, {}, again);
  CHECK(split_to_json(s2) == split_to_json(s));
}

TEST_CASE("PS fallback draws per category") {
  const Registry reg = testing::full_registry(50);
  const Dataset d = synthetic(reg, 2, [](int, int i) { return i; });
  Rng rng(4);
  const SplitManifest s = make_split(d, SplitScheme::PS, {}, rng);
  CHECK(s.ps_test_roots.size() == 10);
  CHECK(s.ps_val_roots.size() == 1);
  std::map<SkillCategory, int> total, held;
  for (const auto& spec : d.roots) ++total[spec.category];
  for (int r : s.ps_test_roots) ++held[d.root(r).category];
  for (const auto& [cat, n] : held) CHECK(n <= total[cat]);
  check_disjoint_cover(d, s);

  SplitParams explicit_ids;
  explicit_ids.ps_test = {1, 2, 99};
  CHECK_THROWS_AS(make_split(d, SplitScheme::PS, explicit_ids, rng), SplitError);
  explicit_ids.ps_test = {1, 2};
  CHECK(make_split(d, SplitScheme::PS, explicit_ids, rng).ps_test_roots == std::vector<int>{1, 2});
}

TEST_CASE("FS split moves m instances per held-out root") {
  const Registry reg = testing::full_registry(101);
  const Dataset d = synthetic(reg, 20, [](int, int i) { return i; });
  Rng a(6), b(6);
  const SplitManifest ps = make_split(d, SplitScheme::PS, {}, a);
  const SplitManifest fs_split = make_split(d, SplitScheme::FS, {}, b);
  CHECK(fs_split.train.size() == ps.train.size() + 21 * 10);
  CHECK(fs_split.test.size() == ps.test.size() - 21 * 10);
  std::map<int, int> moved;
  for (const auto& k : fs_split.train) {
    if (std::binary_search(ps.ps_test_roots.begin(), ps.ps_test_roots.end(), k.first)) ++moved[k.first];
  }
  CHECK(moved.size() == 21);
  for (const auto& [_, n] : moved) CHECK(n == 10);
  check_disjoint_cover(d, fs_split);

  SplitParams big;
  big.m = 21;
  Rng c(6);
  CHECK_THROWS_AS(make_split(d, SplitScheme::FS, big, c), SplitError);
}

TEST_CASE("splits are deterministic and round trip through json") {
  const Registry reg = testing::full_registry(101);
  const Dataset d = synthetic(reg, 20, [](int r, int i) { return (r * i) % 9; });
  for (SplitScheme scheme : {SplitScheme::IS, SplitScheme::AS, SplitScheme::PS, SplitScheme::FS}) {
    Rng a(12), b(12);
    const SplitManifest s = make_split(d, scheme, {}, a);
    CHECK(split_to_json(make_split(d, scheme, {}, b)) == split_to_json(s));
    CHECK(split_to_json(split_from_json(split_to_json(s))) == split_to_json(s));
    check_disjoint_cover(d, s);
    CHECK(parse_split_scheme(to_string(scheme)) == scheme);
  }
  const fs::path dir = testing::scratch_dir("split_file");
  Rng rng(1);
  const SplitManifest s = make_split(d, SplitScheme::IS, {}, rng);
  write_split(s, dir);
  CHECK(split_to_json(read_split(dir / split_file_name(SplitScheme::IS))) == split_to_json(s));
  CHECK_THROWS_AS(parse_split_scheme("XS"), SplitError);
}

TEST_CASE("bad split fractions are rejected") {
  const Registry reg = testing::full_registry(1);
  const Dataset d = synthetic(reg, 10, [](int, int i) { return i; });
  SplitParams p;
  p.train = 0.9;
  Rng rng(1);
  CHECK_THROWS_AS(make_split(d, SplitScheme::IS, p, rng), SplitError);
}
