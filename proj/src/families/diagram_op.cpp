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

constexpr std::int64_t kMaxValue = 200;

std::vector<std::int64_t> divisors_between(std::int64_t v, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = lo; d <= hi; ++d) {
    if (v % d == 0) out.push_back(d);
  }
  return out;
}

// An operation that keeps the value a positive integer no larger than kMaxValue.
std::optional<Op> sample_step(std::int64_t value, Rng& rng) {
  switch (rng.index(4)) {
    case 0: {
      const std::int64_t hi = std::min<std::int64_t>(20, kMaxValue - value);
      if (hi < 1) return std::nullopt;
      return Op{OpKind::Add, rng.uniform_int(1, hi)};
    }
    case 1: {
      const std::int64_t hi = std::min<std::int64_t>(20, value - 1);
      if (hi < 1) return std::nullopt;
      return Op{OpKind::Sub, rng.uniform_int(1, hi)};
    }
    case 2: {
      const std::int64_t hi = std::min<std::int64_t>(5, kMaxValue / value);
      if (hi < 2) return std::nullopt;
      return Op{OpKind::Mul, rng.uniform_int(2, hi)};
    }
    default: {
      const auto divs = divisors_between(value, 2, 9);
      if (divs.empty()) return std::nullopt;
      return Op{OpKind::Div, rng.pick(divs)};
    }
  }
}

Op random_decoy(Rng& rng) {
  const auto kind = static_cast<OpKind>(rng.index(4));
  const bool small = kind == OpKind::Mul || kind == OpKind::Div;
  return {kind, small ? rng.uniform_int(2, 9) : rng.uniform_int(1, 40)};
}

std::optional<std::int64_t> run(const DiagramChain& chain, const Op& fill) {
  std::int64_t v = chain.start;
  for (const auto& op : chain.ops) {
    const auto next = apply_op(op ? *op : fill, v);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

// Value boxes stacked top to bottom with an arrow and its operation between
// consecutive boxes; the unknown operation is an empty square.
void draw(Scene& scene, const DiagramChain& chain) {
  const std::size_t boxes = chain.ops.size() + 1;
  const double w = 44.0, h = 24.0, x = 90.0, xc = x + w / 2;
  const double gap = (kDefaultCanvas - 16.0 - h * static_cast<double>(boxes)) / static_cast<double>(boxes - 1);
  auto box_y = [&](std::size_t i) { return 8.0 + static_cast<double>(i) * (h + gap); };
  for (std::size_t i = 0; i < boxes; ++i) {
    scene.add(RectShape{{x, box_y(i)}, w, h, Style{kBlack, Rgb{245, 245, 235}, 1.2}});
    const double base = box_y(i) + h / 2 + 4;
    if (i == 0) scene.add(TextShape{{xc, base}, std::to_string(chain.start), 12.0, kBlack});
    if (i + 1 == boxes) scene.add(TextShape{{xc, base}, std::to_string(chain.end), 12.0, kBlack});
  }
  for (std::size_t i = 0; i < chain.ops.size(); ++i) {
    const double y1 = box_y(i) + h, y2 = box_y(i + 1);
    scene.add(LineShape{{xc, y1 + 1}, {xc, y2 - 2}, Style{kBlack, std::nullopt, 1.2}});
    scene.add(PolygonShape{{{xc, y2 - 1}, {xc - 3, y2 - 6}, {xc + 3, y2 - 6}}, Style{kBlack, kBlack, 1.0}});
    const double ym = (y1 + y2) / 2;
    if (chain.ops[i]) {
      scene.add(TextShape{{xc + 22, ym + 4}, format_op(*chain.ops[i]), 12.0, kBlack});
    } else {
      scene.add(RectShape{{xc + 10, ym - 8}, 16, 16, Style{kBlack, kWhite, 1.5}});
    }
  }
}

DiagramChain chain_from_json(const json& j) {
  DiagramChain c;
  c.start = j.at("start").get<std::int64_t>();
  c.end = j.at("end").get<std::int64_t>();
  for (const json& op : j.at("ops")) {
    if (op.is_null()) c.ops.push_back(std::nullopt);
    else c.ops.push_back(parse_op(op.get<std::string>()));
  }
  return c;
}

class DiagramOpGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::DiagramOp; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const auto edges = rng.uniform_int(param(spec, "edges_min", 2), param(spec, "edges_max", 4));
    DiagramChain chain;
    chain.start = rng.uniform_int(2, 30);
    std::int64_t v = chain.start;
    for (std::int64_t i = 0; i < edges; ++i) {
      std::optional<Op> op;
      for (int attempt = 0; attempt < 20 && !op; ++attempt) op = sample_step(v, rng);
      if (!op) throw DegeneracyError("no operation keeps the chain in range");
      v = *apply_op(*op, v);
      chain.ops.push_back(*op);
    }
    chain.end = v;
    const std::size_t unknown = rng.index(chain.ops.size());
    const Op truth = *chain.ops[unknown];
    chain.ops[unknown] = std::nullopt;

    std::vector<std::string> decoys;
    for (int attempt = 0; attempt < 200 && decoys.size() < 4; ++attempt) {
      const Op op = random_decoy(rng);
      const std::string s = format_op(op);
      if (op == truth || run(chain, op) == chain.end) continue;
      if (std::find(decoys.begin(), decoys.end(), s) != decoys.end()) continue;
      decoys.push_back(s);
    }
    if (decoys.size() < 4) throw DegeneracyError("not enough non-fitting decoys");

    std::vector<std::string> candidates = decoys;
    candidates.push_back(format_op(truth));
    const std::string answer = infer_diagram_op(chain, candidates);

    Scene scene;
    draw(scene, chain);

    json ops = json::array();
    for (const auto& op : chain.ops) ops.push_back(op ? json(format_op(*op)) : json(nullptr));
    Draft d;
    d.config = {{"start", chain.start}, {"end", chain.end}, {"ops", ops}, {"candidates", candidates}};
    d.answer = answer;
    d.scene = std::move(scene);
    d.question = question_from(family(), "fill", Bindings{}, rng);
    d.policy = DecoyPolicy{decoys};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    const auto candidates = config.at("candidates").get<std::vector<std::string>>();
    const auto fits = oracle::diagram_fits(chain_from_json(config), candidates);
    if (fits.size() != 1) throw ConsistencyError(std::to_string(fits.size()) + " operations fit the diagram");
    return fits.front();
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_diagram_op() { return std::make_shared<DiagramOpGenerator>(); }

}  // namespace smartgen::detail
