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

#include "smartgen/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "smartgen/errors.hpp"
#include "smartgen/generators.hpp"

namespace smartgen {

namespace fs = std::filesystem;

std::string image_path_for(int root_id, int instance_id) {
  return "puzzle_" + std::to_string(root_id) + "/instance_" + std::to_string(instance_id) + ".svg";
}

InstanceRecord record_from_instance(const PuzzleInstance& instance) {
  InstanceRecord r;
  r.root_id = instance.root_id();
  r.instance_id = instance.instance_id();
  r.seed = instance.seed();
  r.category = instance.category();
  r.question = instance.question();
  r.options = instance.options();
  r.answer_index = instance.answer_index();
  r.answer_value = instance.answer_value();
  r.image_path = image_path_for(r.root_id, r.instance_id);
  r.config = instance.config();
  r.svg = render_svg(instance.scene());
  return r;
}

const RootPuzzleSpec& Dataset::root(int root_id) const {
  for (const RootPuzzleSpec& s : roots) {
    if (s.root_id == root_id) return s;
  }
  throw LookupError("unknown root puzzle " + std::to_string(root_id));
}

Dataset generate_dataset(const Registry& registry, std::uint64_t global_seed,
                         const std::vector<int>& root_ids, int instances_per_root, unsigned threads) {
  if (instances_per_root < 0) throw PreconditionError("instances per root must be non-negative");
  Dataset out;
  out.global_seed = global_seed;
  std::vector<int> ids = root_ids;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw PreconditionError("root list contains duplicates");
  }
  for (int id : ids) out.roots.push_back(registry.spec(id));

  const std::size_t total = ids.size() * static_cast<std::size_t>(instances_per_root);
  std::vector<std::optional<InstanceRecord>> slots(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        const int root = ids[k / static_cast<std::size_t>(instances_per_root)];
        const int instance = static_cast<int>(k % static_cast<std::size_t>(instances_per_root)) + 1;
        slots[k] = record_from_instance(generate_instance(registry, global_seed, root, instance));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  out.records.reserve(total);
  for (auto& s : slots) out.records.push_back(std::move(*s));
  return out;
}

void validate_dataset(const Dataset& dataset) {
  std::set<int> known;
  for (const RootPuzzleSpec& s : dataset.roots) {
    if (!known.insert(s.root_id).second) {
      throw IntegrityError("root " + std::to_string(s.root_id) + " listed twice");
    }
  }
  std::map<int, std::vector<int>> ids;
  for (const InstanceRecord& r : dataset.records) {
    if (!known.count(r.root_id)) {
      throw IntegrityError("record for unlisted root " + std::to_string(r.root_id));
    }
    ids[r.root_id].push_back(r.instance_id);
  }
  for (auto& [root, list] : ids) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] != static_cast<int>(i) + 1) {
        throw IntegrityError("root " + std::to_string(root) +
                             ": instance ids are not unique and contiguous from 1");
      }
    }
  }
}

// ---- manifest I/O ----------------------------------------------------------

ordered_json record_to_json(const InstanceRecord& r) {
  ordered_json j;
  j["root_id"] = r.root_id;
  j["instance_id"] = r.instance_id;
  j["seed"] = r.seed;
  j["category"] = to_string(r.category);
  j["question"] = r.question;
  j["options"] = r.options;
  j["answer_index"] = r.answer_index;
  j["answer_value"] = answer_to_json(r.answer_value);
  j["image_path"] = r.image_path;
  j["config"] = r.config;
  return j;
}

InstanceRecord record_from_json(const json& j, std::size_t line) {
  try {
    InstanceRecord r;
    r.root_id = j.at("root_id").get<int>();
    r.instance_id = j.at("instance_id").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.category = parse_category(j.at("category").get<std::string>());
    r.question = j.at("question").get<std::string>();
    const auto options = j.at("options").get<std::vector<std::string>>();
    if (options.size() != kNumOptions) throw ParseError(line, "expected five options");
    std::copy(options.begin(), options.end(), r.options.begin());
    r.answer_index = j.at("answer_index").get<int>();
    if (r.answer_index < 0 || r.answer_index >= kNumOptions) throw ParseError(line, "answer_index out of range");
    r.answer_value = answer_from_json(j.at("answer_value"));
    r.image_path = j.at("image_path").get<std::string>();
    r.config = j.value("config", json::object());
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

namespace {

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IntegrityError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IntegrityError("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IntegrityError("missing file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_manifest(const Dataset& dataset, const fs::path& directory) {
  validate_dataset(dataset);
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IntegrityError("cannot create " + directory.string() + ": " + ec.message());

  ordered_json meta;
  meta["global_seed"] = dataset.global_seed;
  meta["roots"] = ordered_json::array();
  for (const RootPuzzleSpec& s : dataset.roots) meta["roots"].push_back(spec_to_json(s));
  write_file(directory / kDatasetFile, meta.dump(2) + "\n");

  std::string lines;
  for (const InstanceRecord& r : dataset.records) {
    lines += record_to_json(r).dump();
    lines += '\n';
    const fs::path image = directory / r.image_path;
    fs::create_directories(image.parent_path(), ec);
    if (ec) throw IntegrityError("cannot create " + image.parent_path().string() + ": " + ec.message());
    write_file(image, r.svg);
  }
  write_file(directory / kManifestFile, lines);
}

Dataset read_manifest(const fs::path& directory) {
  Dataset d;
  const std::string meta_text = read_file(directory / kDatasetFile);
  try {
    const json meta = json::parse(meta_text);
    d.global_seed = meta.at("global_seed").get<std::uint64_t>();
    for (const json& s : meta.at("roots")) d.roots.push_back(spec_from_json(s));
  } catch (const json::exception& e) {
    throw ParseError(0, std::string(kDatasetFile) + ": " + e.what());
  }

  const std::string text = read_file(directory / kManifestFile);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("malformed record: ") + e.what());
    }
    InstanceRecord r = record_from_json(j, line_no);
    r.svg = read_file(directory / r.image_path);
    d.records.push_back(std::move(r));
  }
  validate_dataset(d);
  return d;
}

// ---- splits ----------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 4> kSchemeNames = {"IS", "AS", "PS", "FS"};

std::map<int, std::vector<const InstanceRecord*>> by_root(const Dataset& d) {
  std::map<int, std::vector<const InstanceRecord*>> out;
  for (const RootPuzzleSpec& s : d.roots) out[s.root_id];
  for (const InstanceRecord& r : d.records) out[r.root_id].push_back(&r);
  for (auto& [_, list] : out) {
    std::sort(list.begin(), list.end(),
              [](const InstanceRecord* a, const InstanceRecord* b) { return a->instance_id < b->instance_id; });
  }
  return out;
}

void check_fractions(const SplitParams& p) {
  if (p.train < 0 || p.val < 0 || p.test < 0 || std::abs(p.train + p.val + p.test - 1.0) > 1e-9) {
    throw SplitError("split fractions must be non-negative and sum to 1");
  }
}

std::size_t share(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
}

// Contiguous blocks: train first, then val, then test.
void split_blocks(const std::vector<const InstanceRecord*>& list, double val_frac, double test_frac,
                  SplitManifest& out) {
  const std::size_t n = list.size();
  const std::size_t n_test = std::min(n, share(n, test_frac));
  const std::size_t n_val = std::min(n - n_test, share(n, val_frac));
  for (std::size_t i = 0; i < n; ++i) {
    const InstanceKey key{list[i]->root_id, list[i]->instance_id};
    if (i >= n - n_test) out.test.push_back(key);
    else if (i >= n - n_test - n_val) out.val.push_back(key);
    else out.train.push_back(key);
  }
}

// Largest-remainder allocation of `total` across groups proportional to size.
std::vector<std::size_t> allocate(const std::vector<std::size_t>& sizes, std::size_t total) {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  std::vector<std::size_t> out(sizes.size());
  std::vector<std::pair<double, std::size_t>> rest;
  std::size_t used = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double exact = static_cast<double>(total) * static_cast<double>(sizes[i]) / static_cast<double>(n);
    out[i] = static_cast<std::size_t>(std::floor(exact));
    used += out[i];
    rest.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total && k < rest.size(); ++k) {
    if (out[rest[k].second] < sizes[rest[k].second]) {
      ++out[rest[k].second];
      ++used;
    }
  }
  return out;
}

void puzzle_split(const Dataset& d, const SplitParams& params, Rng& rng, SplitManifest& out) {
  std::vector<int> roots;
  for (const RootPuzzleSpec& s : d.roots) roots.push_back(s.root_id);
  std::sort(roots.begin(), roots.end());
  const std::size_t n = roots.size();
  const std::set<int> present(roots.begin(), roots.end());

  std::vector<int> test;
  const std::vector<int>& reference = reference_ps_test_ids();
  if (!params.ps_test.empty()) {
    for (int id : params.ps_test) {
      if (!present.count(id)) throw SplitError("held-out root " + std::to_string(id) + " is not in the dataset");
    }
    test = params.ps_test;
  } else if (std::all_of(reference.begin(), reference.end(), [&](int id) { return present.count(id) != 0; })) {
    test = reference;
  } else {
    const std::size_t n_test = std::max<std::size_t>(1, share(n, 21.0 / 101.0));
    std::map<SkillCategory, std::vector<int>> groups;
    for (const RootPuzzleSpec& s : d.roots) groups[s.category].push_back(s.root_id);
    std::vector<std::size_t> sizes;
    for (auto& [_, ids] : groups) {
      std::sort(ids.begin(), ids.end());
      sizes.push_back(ids.size());
    }
    const auto quota = allocate(sizes, n_test);
    std::size_t g = 0;
    for (auto& [_, ids] : groups) {
      for (int id : rng.sample(ids, quota[g])) test.push_back(id);
      ++g;
    }
  }
  std::sort(test.begin(), test.end());
  test.erase(std::unique(test.begin(), test.end()), test.end());

  std::vector<int> rest;
  for (int id : roots) {
    if (!std::binary_search(test.begin(), test.end(), id)) rest.push_back(id);
  }
  const std::size_t n_val = std::max<std::size_t>(1, share(n, 3.0 / 101.0));
  if (rest.size() <= n_val) throw SplitError("too few roots for a puzzle split");
  std::vector<int> val = rng.sample(rest, n_val);
  std::sort(val.begin(), val.end());

  out.ps_test_roots = test;
  out.ps_val_roots = val;
  for (const auto& [root, list] : by_root(d)) {
    auto& target = std::binary_search(test.begin(), test.end(), root)  ? out.test
                   : std::binary_search(val.begin(), val.end(), root) ? out.val
                                                                      : out.train;
    for (const InstanceRecord* r : list) target.emplace_back(r->root_id, r->instance_id);
  }
}

}  // namespace

std::string_view to_string(SplitScheme scheme) { return kSchemeNames[static_cast<std::size_t>(scheme)]; }

SplitScheme parse_split_scheme(std::string_view name) {
  for (std::size_t i = 0; i < kSchemeNames.size(); ++i) {
    if (kSchemeNames[i] == name) return static_cast<SplitScheme>(i);
  }
  throw SplitError("unknown split scheme '" + std::string(name) + "'");
}

const std::vector<int>& reference_ps_test_ids() {
  static const std::vector<int> ids = {61, 62, 65, 66, 67, 69, 70, 71, 72, 73, 74,
                                       75, 76, 77, 94, 95, 96, 97, 98, 99, 101};
  return ids;
}

SplitManifest make_split(const Dataset& dataset, SplitScheme scheme, const SplitParams& params, Rng& rng) {
  SplitManifest out;
  out.scheme = scheme;
  out.params = params;
  const auto roots = by_root(dataset);

  switch (scheme) {
    case SplitScheme::IS:
      check_fractions(params);
      for (const auto& [_, list] : roots) split_blocks(list, params.val, params.test, out);
      break;
    case SplitScheme::AS: {
      check_fractions(params);
      const double val_share = params.train + params.val > 0 ? params.val / (params.train + params.val) : 0.0;
      for (const auto& [root, list] : roots) {
        if (list.empty()) throw SplitError("root " + std::to_string(root) + " has no instances; median undefined");
        std::vector<AnswerValue> answers;
        for (const InstanceRecord* r : list) answers.push_back(r->answer_value);
        std::sort(answers.begin(), answers.end());
        const AnswerValue median = answers[(answers.size() - 1) / 2];
        std::vector<const InstanceRecord*> remainder;
        for (const InstanceRecord* r : list) {
          if (r->answer_value == median) out.test.emplace_back(r->root_id, r->instance_id);
          else remainder.push_back(r);
        }
        split_blocks(remainder, val_share, 0.0, out);
      }
      break;
    }
    case SplitScheme::PS:
      puzzle_split(dataset, params, rng, out);
      break;
    case SplitScheme::FS: {
      if (params.m < 1) throw SplitError("few-shot split needs m >= 1");
      puzzle_split(dataset, params, rng, out);
      for (int root : out.ps_test_roots) {
        std::vector<InstanceKey> pool;
        for (const InstanceKey& k : out.test) {
          if (k.first == root) pool.push_back(k);
        }
        if (pool.size() < static_cast<std::size_t>(params.m)) {
          throw SplitError("root " + std::to_string(root) + " has fewer than m=" + std::to_string(params.m) +
                           " instances");
        }
        for (const InstanceKey& k : rng.sample(pool, static_cast<std::size_t>(params.m))) {
          out.train.push_back(k);
          std::erase(out.test, k);
        }
      }
      break;
    }
  }
  for (auto* list : {&out.train, &out.val, &out.test}) std::sort(list->begin(), list->end());
  return out;
}

json split_to_json(const SplitManifest& s) {
  auto keys = [](const std::vector<InstanceKey>& list) {
    json out = json::array();
    for (const auto& [r, i] : list) out.push_back({r, i});
    return out;
  };
  ordered_json params;
  params["train"] = s.params.train;
  params["val"] = s.params.val;
  params["test"] = s.params.test;
  params["m"] = s.params.m;
  params["ps_test"] = s.params.ps_test;
  ordered_json j;
  j["scheme"] = to_string(s.scheme);
  j["params"] = params;
  j["val_roots"] = s.ps_val_roots;
  j["test_roots"] = s.ps_test_roots;
  j["train"] = keys(s.train);
  j["val"] = keys(s.val);
  j["test"] = keys(s.test);
  return json(j);
}

SplitManifest split_from_json(const json& j) {
  try {
    SplitManifest s;
    s.scheme = parse_split_scheme(j.at("scheme").get<std::string>());
    const json& p = j.at("params");
    s.params.train = p.at("train").get<double>();
    s.params.val = p.at("val").get<double>();
    s.params.test = p.at("test").get<double>();
    s.params.m = p.at("m").get<int>();
    s.params.ps_test = p.at("ps_test").get<std::vector<int>>();
    s.ps_val_roots = j.value("val_roots", std::vector<int>{});
    s.ps_test_roots = j.value("test_roots", std::vector<int>{});
    s.train = j.at("train").get<std::vector<InstanceKey>>();
    s.val = j.at("val").get<std::vector<InstanceKey>>();
    s.test = j.at("test").get<std::vector<InstanceKey>>();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("split file: ") + e.what());
  }
}

std::string split_file_name(SplitScheme scheme) { return "split_" + std::string(to_string(scheme)) + ".json"; }

void write_split(const SplitManifest& split, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IntegrityError("cannot create " + directory.string() + ": " + ec.message());
  write_file(directory / split_file_name(split.scheme), split_to_json(split).dump() + "\n");
}

SplitManifest read_split(const fs::path& file) {
  const std::string text = read_file(file);
  try {
    return split_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(0, file.string() + ": " + e.what());
  }
}

}  // namespace smartgen
