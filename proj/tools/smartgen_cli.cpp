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

// smartgen: generate, verify, split and score puzzle datasets.

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smartgen/dataset.hpp"
#include "smartgen/errors.hpp"
#include "smartgen/eval.hpp"
#include "smartgen/generators.hpp"
#include "smartgen/llm.hpp"

namespace fs = std::filesystem;
using namespace smartgen;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;   // bad input, parse or validation failure
constexpr int kExitInternal = 2;  // a generator or solver broke an invariant

// "1,3,5-9" -> {1, 3, 5, 6, 7, 8, 9}
std::vector<int> parse_id_list(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const std::string& item : items) {
    const auto dash = item.find('-', 1);
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
        continue;
      }
      const int lo = std::stoi(item.substr(0, dash));
      const int hi = std::stoi(item.substr(dash + 1));
      if (hi < lo) throw PreconditionError("empty id range '" + item + "'");
      for (int id = lo; id <= hi; ++id) out.push_back(id);
    } catch (const std::logic_error&) {
      throw PreconditionError("bad root id '" + item + "'");
    }
  }
  return out;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
  if (!out) throw IntegrityError("cannot write " + file.string());
}

// Prints in the chosen format and, with --out, keeps both forms on disk.
void emit(const std::string& name, const std::function<std::string(ReportFormat)>& render,
          ReportFormat format, const std::optional<fs::path>& out_dir) {
  std::cout << render(format);
  if (!out_dir) return;
  std::error_code ec;
  fs::create_directories(*out_dir, ec);
  if (ec) throw IntegrityError("cannot create " + out_dir->string() + ": " + ec.message());
  write_text(*out_dir / (name + ".txt"), render(ReportFormat::Table));
  write_text(*out_dir / (name + ".jsonl"), render(ReportFormat::Records));
}

const std::vector<InstanceKey>& split_part(const SplitManifest& split, const std::string& part) {
  if (part == "train") return split.train;
  if (part == "val") return split.val;
  if (part == "test") return split.test;
  throw PreconditionError("unknown split part '" + part + "'");
}

struct Common {
  std::string format = "table";
  unsigned threads = 0;
};

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
  std::uint64_t seed = 0;
  fs::path out;
  std::vector<std::string> roots;
  int instances = kDefaultInstancesPerRoot;
};

std::string generation_summary(const Dataset& d, const fs::path& dir, ReportFormat format) {
  std::map<SkillCategory, std::size_t> per_category;
  for (const InstanceRecord& r : d.records) ++per_category[r.category];
  std::string out;
  if (format == ReportFormat::Records) {
    for (const auto& [cat, n] : per_category) {
      out += ordered_json{{"category", to_string(cat)}, {"instances", n}}.dump() + "\n";
    }
    out += ordered_json{{"total", d.records.size()}, {"roots", d.roots.size()}, {"directory", dir.string()}}.dump() +
           "\n";
    return out;
  }
  char line[96];
  for (const auto& [cat, n] : per_category) {
    std::snprintf(line, sizeof line, "%-18s %8zu\n", std::string(to_string(cat)).c_str(), n);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-18s %8zu\n", "total", d.records.size());
  out += line;
  out += "wrote " + std::to_string(d.roots.size()) + " roots to " + dir.string() + "\n";
  return out;
}

int run_generate(const GenerateArgs& a, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  const Registry registry = default_registry();
  const std::vector<int> roots = a.roots.empty() ? registry.ids() : parse_id_list(a.roots);

  fs::path out = fs::absolute(a.out).lexically_normal();
  if (out.filename().empty()) out = out.parent_path();
  if (fs::exists(out)) {
    if (!fs::is_directory(out)) throw PreconditionError(out.string() + " exists and is not a directory");
    if (!fs::is_empty(out) && !fs::exists(out / kDatasetFile)) {
      throw PreconditionError("refusing to overwrite " + out.string() + ": not a dataset directory");
    }
  }
  // Everything is written next to the target first, so a failure leaves no
  // half-written dataset behind.
  const fs::path staging = out.parent_path() / ("." + out.filename().string() + ".partial");
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw IntegrityError("cannot create " + out.string() + ": " + ec.message());

  Dataset d;
  try {
    d = generate_dataset(registry, a.seed, roots, a.instances, c.threads);
    write_manifest(d, staging);
    fs::remove_all(out);
    fs::rename(staging, out);
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  std::cout << generation_summary(d, out, format);
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const fs::path& dataset_dir, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  const Dataset d = read_manifest(dataset_dir);
  if (d.records.empty()) std::cerr << "warning: " << dataset_dir.string() << " holds no instances\n";
  const std::vector<Mismatch> mismatches = verify_dataset(d, c.threads);
  for (const Mismatch& m : mismatches) {
    if (format == ReportFormat::Records) {
      std::cout << ordered_json{{"root_id", m.root_id}, {"instance_id", m.instance_id}, {"detail", m.detail}}.dump()
                << "\n";
    } else {
      std::cout << "mismatch: root " << m.root_id << " instance " << m.instance_id << ": " << m.detail << "\n";
    }
  }
  if (format == ReportFormat::Records) {
    std::cout << ordered_json{{"checked", d.records.size()}, {"mismatches", mismatches.size()}}.dump() << "\n";
  } else {
    std::cout << "checked " << d.records.size() << " instances, " << mismatches.size() << " mismatches\n";
  }
  return mismatches.empty() ? kExitOk : kExitInvalid;
}

// ---- split -----------------------------------------------------------------

struct SplitArgs {
  fs::path dataset;
  std::string scheme;
  std::uint64_t seed = 0;
  SplitParams params;
  std::vector<std::string> ps_test;
  std::optional<fs::path> out;
};

int run_split(SplitArgs a, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  const SplitScheme scheme = parse_split_scheme(a.scheme);
  a.params.ps_test = parse_id_list(a.ps_test);
  const Dataset d = read_manifest(a.dataset);
  Rng rng(a.seed);
  const SplitManifest s = make_split(d, scheme, a.params, rng);
  const fs::path dir = a.out.value_or(a.dataset);
  write_split(s, dir);

  const fs::path file = dir / split_file_name(scheme);
  if (format == ReportFormat::Records) {
    std::cout << ordered_json{{"scheme", to_string(scheme)}, {"train", s.train.size()}, {"val", s.val.size()},
                              {"test", s.test.size()}, {"val_roots", s.ps_val_roots},
                              {"test_roots", s.ps_test_roots}, {"file", file.string()}}
                     .dump()
              << "\n";
  } else {
    std::cout << "scheme " << to_string(scheme) << ": train " << s.train.size() << ", val " << s.val.size()
              << ", test " << s.test.size() << "\n";
    if (!s.ps_test_roots.empty()) {
      std::cout << "held-out roots:";
      for (int r : s.ps_test_roots) std::cout << " " << r;
      std::cout << "\n";
    }
    std::cout << "wrote " << file.string() << "\n";
  }
  return kExitOk;
}

// ---- eval / baseline ---------------------------------------------------------

struct EvalArgs {
  fs::path dataset;
  fs::path split;
  fs::path predictions;
  std::string part = "test";
  std::string name = "eval";
  std::optional<fs::path> out;
};

int run_eval(const EvalArgs& a, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  const Dataset d = read_manifest(a.dataset);
  const SplitManifest s = read_split(a.split);
  const auto preds = read_predictions(a.predictions);
  const EvalReport r = compute_metrics(preds, d, split_part(s, a.part), a.name);
  emit(a.name, [&](ReportFormat f) { return format_report(r, f); }, format, a.out);
  if (r.missing) std::cerr << "warning: " << r.missing << " instances have no prediction\n";
  return kExitOk;
}

struct BaselineArgs {
  fs::path dataset;
  fs::path split;
  bool greedy = false;
  bool uniform = false;
  std::uint64_t seed = 0;
  std::string part = "test";
  std::optional<fs::path> out;
};

int run_baseline(const BaselineArgs& a, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  if (!a.greedy && !a.uniform) throw PreconditionError("choose --greedy, --uniform or both");
  const Dataset d = read_manifest(a.dataset);
  SplitManifest s = read_split(a.split);
  if (a.part != "test") s.test = split_part(s, a.part);
  if (a.greedy) {
    const EvalReport r = greedy_baseline(d, s);
    emit(r.name, [&](ReportFormat f) { return format_report(r, f); }, format, a.out);
  }
  if (a.uniform) {
    Rng rng(a.seed);
    const EvalReport r = uniform_baseline(d, s.test, rng);
    emit(r.name, [&](ReportFormat f) { return format_report(r, f); }, format, a.out);
  }
  return kExitOk;
}

// ---- llm-eval --------------------------------------------------------------

struct LlmArgs {
  std::optional<fs::path> dataset;
  bool reference = false;
  std::vector<std::string> roots;
  int instance_id = 1;
  int trials = 10;
  EndpointConfig endpoint;
  double temperature = -1.0;
  fs::path transcripts;
  bool replay = false;
  std::optional<fs::path> out;
};

Dataset reference_dataset() {
  Dataset d;
  for (const ReferenceWordProblem& p : reference_word_problems()) {
    d.roots.push_back(p.spec);
    d.records.push_back(record_from_instance(p.instance));
  }
  return d;
}

int run_llm_eval(LlmArgs a, const Common& c) {
  const ReportFormat format = parse_report_format(c.format);
  if (a.reference == a.dataset.has_value()) throw PreconditionError("give exactly one of --dataset and --reference");
  const Dataset d = a.reference ? reference_dataset() : read_manifest(*a.dataset);

  std::set<int> roots;
  if (a.roots.empty()) {
    for (const RootPuzzleSpec& s : d.roots) {
      if (!s.needs_image) roots.insert(s.root_id);
    }
  } else {
    for (int id : parse_id_list(a.roots)) roots.insert(id);
  }
  if (roots.empty()) throw PreconditionError("no text-only roots to probe");

  std::vector<TrialRecord> trials;
  std::map<InstanceKey, int> answers;
  if (a.replay) {
    for (TrialRecord& t : replay_transcripts(a.transcripts, d)) {
      if (roots.count(t.root_id)) trials.push_back(std::move(t));
    }
    for (const InstanceRecord& r : d.records) {
      if (roots.count(r.root_id)) answers[{r.root_id, r.instance_id}] = r.answer_index;
    }
  } else {
    if (a.temperature >= 0.0) a.endpoint.temperature = a.temperature;
    a.endpoint.validate();
    HttpChatClient client(a.endpoint);
    for (int root : roots) {
      const RootPuzzleSpec& spec = d.root(root);
      const auto it = std::find_if(d.records.begin(), d.records.end(), [&](const InstanceRecord& r) {
        return r.root_id == root && r.instance_id == a.instance_id;
      });
      if (it == d.records.end()) {
        throw LookupError("root " + std::to_string(root) + " has no instance " + std::to_string(a.instance_id));
      }
      auto got = run_trials(client, a.endpoint, *it, spec, a.trials, a.transcripts);
      trials.insert(trials.end(), got.begin(), got.end());
      answers[{it->root_id, it->instance_id}] = it->answer_index;
    }
  }
  const LlmSummary summary = aggregate_llm(trials, answers);
  emit("llm_eval", [&](ReportFormat f) { return format_llm_summary(summary, f); }, format, a.out);
  if (summary.failed) {
    std::cerr << "warning: " << summary.failed << " trials failed after retries and count as OTHER\n";
  }
  return kExitOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const GenerationError& e) {
    std::cerr << "error: root " << e.root_id() << " (seed " << e.seed() << "): " << e.what() << "\n";
    return kExitInternal;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural visuo-linguistic puzzle generator and evaluation harness"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with default flag values; flags win");
  Common common;
  app.add_option("--format", common.format, "Report format: table or records")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads for generate/verify (0 = all cores)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a dataset");
  g->add_option("--seed", gen.seed, "Global seed")->required();
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--roots", gen.roots, "Root ids, e.g. 1,3,5-9 (default: all)")->delimiter(',');
  g->add_option("--instances-per-root", gen.instances, "Instances per root")->capture_default_str();

  fs::path verify_dir;
  auto* v = app.add_subcommand("verify", "Recompute every answer with the brute-force oracles");
  v->add_option("--dataset", verify_dir, "Dataset directory")->required();

  SplitArgs sp;
  auto* s = app.add_subcommand("split", "Write an IS/AS/PS/FS split manifest");
  s->add_option("--dataset", sp.dataset, "Dataset directory")->required();
  s->add_option("--scheme", sp.scheme, "IS, AS, PS or FS")->required();
  s->add_option("--seed", sp.seed, "Split seed")->capture_default_str();
  s->add_option("--train", sp.params.train, "Train share (IS/AS)")->capture_default_str();
  s->add_option("--val", sp.params.val, "Val share (IS/AS)")->capture_default_str();
  s->add_option("--test", sp.params.test, "Test share (IS/AS)")->capture_default_str();
  s->add_option("--m", sp.params.m, "FS: instances per held-out root moved to train")->capture_default_str();
  s->add_option("--ps-test", sp.ps_test, "PS/FS: explicit held-out root ids")->delimiter(',');
  s->add_option("--out", sp.out, "Directory for the split file (default: the dataset)");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score a predictions file");
  e->add_option("--dataset", ev.dataset, "Dataset directory")->required();
  e->add_option("--split", ev.split, "Split manifest file")->required();
  e->add_option("--predictions", ev.predictions, "Line-delimited predictions")->required();
  e->add_option("--part", ev.part, "Split part to score")->check(CLI::IsMember({"train", "val", "test"}))
      ->capture_default_str();
  e->add_option("--name", ev.name, "Report name")->capture_default_str();
  e->add_option("--out", ev.out, "Directory for table and record reports");

  BaselineArgs bl;
  auto* b = app.add_subcommand("baseline", "Greedy and uniform baselines");
  b->add_option("--dataset", bl.dataset, "Dataset directory")->required();
  b->add_option("--split", bl.split, "Split manifest file")->required();
  b->add_flag("--greedy", bl.greedy, "Most frequent train answer per root");
  b->add_flag("--uniform", bl.uniform, "Uniformly random option");
  b->add_option("--seed", bl.seed, "Seed for the uniform baseline")->capture_default_str();
  b->add_option("--part", bl.part, "Split part to score")->check(CLI::IsMember({"val", "test"}))
      ->capture_default_str();
  b->add_option("--out", bl.out, "Directory for table and record reports");

  LlmArgs llm;
  auto* l = app.add_subcommand("llm-eval", "Probe a chat endpoint with text-only puzzles");
  l->add_option("--dataset", llm.dataset, "Dataset directory");
  l->add_flag("--reference", llm.reference, "Use the eleven reference text-only puzzles");
  l->add_option("--roots", llm.roots, "Root ids (default: every text-only root)")->delimiter(',');
  l->add_option("--instance-id", llm.instance_id, "Instance probed per root")->capture_default_str();
  l->add_option("--trials", llm.trials, "Independent trials per puzzle")->capture_default_str();
  l->add_option("--base-url", llm.endpoint.base_url, "Endpoint base URL, e.g. https://host/v1");
  l->add_option("--model", llm.endpoint.model, "Model name sent with each request");
  l->add_option("--token-env", llm.endpoint.token_env, "Environment variable holding the bearer token")
      ->capture_default_str();
  l->add_option("--temperature", llm.temperature, "Sampling temperature (default: endpoint default)");
  l->add_option("--timeout", llm.endpoint.timeout_s, "Per-request timeout in seconds")->capture_default_str();
  l->add_option("--retries", llm.endpoint.max_retries, "Retries for transient failures")->capture_default_str();
  l->add_option("--concurrency", llm.endpoint.max_concurrency, "Requests in flight")->capture_default_str();
  l->add_option("--backoff-ms", llm.endpoint.backoff_ms, "First retry delay")->capture_default_str();
  l->add_option("--transcripts", llm.transcripts, "Directory for raw request/response transcripts")->required();
  l->add_flag("--replay", llm.replay, "Re-parse saved transcripts instead of calling the endpoint");
  l->add_option("--out", llm.out, "Directory for table and record reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitInvalid;
  }

  if (*g) return guarded([&] { return run_generate(gen, common); });
  if (*v) return guarded([&] { return run_verify(verify_dir, common); });
  if (*s) return guarded([&] { return run_split(sp, common); });
  if (*e) return guarded([&] { return run_eval(ev, common); });
  if (*b) return guarded([&] { return run_baseline(bl, common); });
  if (*l) return guarded([&] { return run_llm_eval(llm, common); });
  return kExitInvalid;
}
