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

// Python bindings. Structured values cross the boundary as JSON text and are
// decoded by the pure-Python wrapper in smartgen/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "smartgen/dataset.hpp"
#include "smartgen/errors.hpp"
#include "smartgen/eval.hpp"
#include "smartgen/generators.hpp"
#include "smartgen/llm.hpp"
#include "smartgen/oracles.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace smartgen;

namespace {

std::string instance_json(const PuzzleInstance& p) {
  const InstanceRecord r = record_from_instance(p);
  ordered_json j = record_to_json(r);
  j["svg"] = r.svg;
  return j.dump();
}

std::array<std::string, 5> five(const std::vector<std::string>& options) {
  if (options.size() != 5) throw PreconditionError("expected five options");
  std::array<std::string, 5> out;
  std::copy(options.begin(), options.end(), out.begin());
  return out;
}

std::vector<int> all_or(const Registry& reg, const std::optional<std::vector<int>>& roots) {
  return roots ? *roots : reg.ids();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "smartgen C++ core";

  auto base = py::register_exception<Error>(m, "SmartgenError", PyExc_RuntimeError);
  py::register_exception<LookupError>(m, "LookupError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
  py::register_exception<SplitError>(m, "SplitError", base.ptr());
  py::register_exception<EvalError>(m, "EvalError", base.ptr());

  m.def("root_ids", [] { return default_registry().ids(); });

  m.def(
      "generate_instance",
      [](std::uint64_t seed, int root_id, int instance_id) {
        return instance_json(generate_instance(default_registry(), seed, root_id, instance_id));
      },
      py::arg("seed"), py::arg("root_id"), py::arg("instance_id") = 1);

  m.def(
      "generate_dataset",
      [](const fs::path& out, std::uint64_t seed, std::optional<std::vector<int>> roots, int per_root,
         unsigned threads) {
        const Registry reg = default_registry();
        Dataset d;
        {
          py::gil_scoped_release release;
          d = generate_dataset(reg, seed, all_or(reg, roots), per_root, threads);
          write_manifest(d, out);
        }
        return d.records.size();
      },
      py::arg("out"), py::arg("seed"), py::arg("roots") = std::nullopt,
      py::arg("instances_per_root") = kDefaultInstancesPerRoot, py::arg("threads") = 0);

  m.def(
      "verify",
      [](const fs::path& dir, unsigned threads) {
        std::vector<std::tuple<int, int, std::string>> out;
        py::gil_scoped_release release;
        for (const Mismatch& x : verify_dataset(read_manifest(dir), threads)) {
          out.emplace_back(x.root_id, x.instance_id, x.detail);
        }
        return out;
      },
      py::arg("dataset"), py::arg("threads") = 0);

  m.def(
      "make_split",
      [](const fs::path& dir, const std::string& scheme, std::uint64_t seed, double train, double val,
         double test, int fs_m, std::vector<int> ps_test) {
        SplitParams p{train, val, test, fs_m, std::move(ps_test)};
        Rng rng(seed);
        const SplitManifest s = make_split(read_manifest(dir), parse_split_scheme(scheme), p, rng);
        write_split(s, dir);
        return split_to_json(s).dump();
      },
      py::arg("dataset"), py::arg("scheme"), py::arg("seed") = 0, py::arg("train") = 0.80,
      py::arg("val") = 0.05, py::arg("test") = 0.15, py::arg("m") = 10, py::arg("ps_test") = std::vector<int>{});

  m.def(
      "evaluate",
      [](const fs::path& dir, const fs::path& split_file, const fs::path& predictions, const std::string& part) {
        const SplitManifest s = read_split(split_file);
        const auto& keys = part == "val" ? s.val : part == "train" ? s.train : s.test;
        const EvalReport r = compute_metrics(read_predictions(predictions), read_manifest(dir), keys);
        return format_report(r, ReportFormat::Records);
      },
      py::arg("dataset"), py::arg("split"), py::arg("predictions"), py::arg("part") = "test");

  m.def(
      "baseline",
      [](const fs::path& dir, const fs::path& split_file, const std::string& kind, std::uint64_t seed) {
        const Dataset d = read_manifest(dir);
        const SplitManifest s = read_split(split_file);
        if (kind == "greedy") return format_report(greedy_baseline(d, s), ReportFormat::Records);
        if (kind != "uniform") throw PreconditionError("baseline must be greedy or uniform");
        Rng rng(seed);
        return format_report(uniform_baseline(d, s.test, rng), ReportFormat::Records);
      },
      py::arg("dataset"), py::arg("split"), py::arg("kind"), py::arg("seed") = 0);

  m.def(
      "select_option",
      [](const std::variant<double, std::string>& predicted, const std::vector<std::string>& options,
         const std::string& kind) {
        AnswerType t;
        if (kind == "integer") t = AnswerType::integer(INT64_MIN, INT64_MAX);
        else if (kind == "option_label") t = AnswerType::option_label();
        else if (kind == "word") t = AnswerType::word();
        else throw PreconditionError("unknown answer kind '" + kind + "'");
        return select_option(predicted, five(options), t);
      },
      py::arg("predicted"), py::arg("options"), py::arg("kind") = "integer");

  m.def("answer_freq_std", &answer_freq_std, py::arg("counts"));
  m.def("pearson", &pearson, py::arg("x"), py::arg("y"));

  m.def(
      "parse_choice",
      [](const std::string& text, const std::vector<std::string>& options) {
        return choice_name(parse_choice(text, five(options)));
      },
      py::arg("text"), py::arg("options"));

  m.def("reference_word_problems", [] {
    std::vector<std::string> out;
    for (const ReferenceWordProblem& p : reference_word_problems()) out.push_back(instance_json(p.instance));
    return out;
  });

  m.def("fence_jumps", &simulate_fence_jumps, py::arg("distance"), py::arg("forward"), py::arg("back"),
        py::arg("seconds_per_jump"));
  m.def(
      "count_simple_paths",
      [](const std::vector<Edge>& edges, int s, int t, int j) { return count_simple_paths(edges, s, t, j); },
      py::arg("edges"), py::arg("source"), py::arg("target"), py::arg("length"));
}
