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

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

class FenceJumpGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::FenceJump; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const auto d = rng.uniform_int(param(spec, "d_min", 4), param(spec, "d_max", 16));
    const auto f = rng.uniform_int(param(spec, "f_min", 2), param(spec, "f_max", 5));
    const auto b = rng.uniform_int(1, f - 1);
    const auto t = rng.uniform_int(param(spec, "t_min", 2), param(spec, "t_max", 6));
    const std::int64_t seconds = simulate_fence_jumps(d, f, b, t);

    // d + 1 posts joined by a rail; the jumper waits on the first post.
    Scene scene;
    const double left = 14.0, right = 210.0, top = 120.0, bottom = 170.0;
    const double step = (right - left) / static_cast<double>(d);
    scene.add(LineShape{{6.0, bottom}, {218.0, bottom}, Style{Rgb{0, 120, 60}, std::nullopt, 2.0}});
    scene.add(LineShape{{left, top + 10}, {right, top + 10}, Style{Rgb{120, 80, 40}, std::nullopt, 2.0}});
    const double post_w = std::min(8.0, step * 0.5);
    for (std::int64_t i = 0; i <= d; ++i) {
      const double x = left + step * static_cast<double>(i);
      scene.add(RectShape{{x - post_w / 2, top}, post_w, bottom - top,
                          Style{kBlack, Rgb{160, 110, 60}, 1.0}});
    }
    scene.add(GlyphShape{GlyphKind::Bird, {left, top - 12.0}, 10.0, Style{kBlack, Rgb{86, 180, 233}, 1.0}});

    Bindings bind;
    bind.numbers = {{"t", t}, {"f", f}, {"b", b}, {"posts", d + 1}};

    std::vector<std::int64_t> preferred;
    for (std::int64_t delta = -4; delta <= 4; ++delta) {
      if (delta != 0 && seconds + delta * t > 0) preferred.push_back(seconds + delta * t);
    }
    Draft out;
    out.config = {{"d", d}, {"f", f}, {"b", b}, {"t", t}};
    out.answer = seconds;
    out.scene = std::move(scene);
    out.question = question_from(family(), "fence", bind, rng);
    out.policy = IntegerPool{preferred, IntegerWindow{1, std::nullopt}};
    return out;
  }

  AnswerValue oracle(const json& config) const override {
    return oracle::fence_seconds(config.at("d").get<std::int64_t>(), config.at("f").get<std::int64_t>(),
                                 config.at("b").get<std::int64_t>(), config.at("t").get<std::int64_t>());
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_fence_jump() { return std::make_shared<FenceJumpGenerator>(); }

}  // namespace smartgen::detail
