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
#include <set>

#include "common.hpp"
#include "smartgen/oracles.hpp"

namespace smartgen::detail {
namespace {

constexpr const char* kWords[] = {
    "PIZZA", "APPLE", "HOUSE", "TIGER", "CLOUD", "RIVER", "PLANT", "BREAD", "CHAIR", "LEMON",
    "MOUSE", "HORSE", "TRAIN", "SNAKE", "WATER", "GRAPE", "STONE", "LIGHT", "PAPER", "MUSIC",
    "BEACH", "CANDY", "DREAM", "EARTH", "FROST", "GHOST", "HONEY", "JELLY", "KOALA", "MAPLE",
    "NIGHT", "OCEAN", "PEARL", "QUEEN", "ROBIN", "SHEEP", "TOWEL", "WHALE", "ZEBRA", "CAKE",
    "BIRD",  "FISH",  "LAMP",  "MOON",  "STAR",  "TREE",  "WOLF",  "FROG",  "DUCK",  "KITE",
    "RAIN",  "SNOW",  "GOLD",  "ROSE",  "SHIP",  "BOAT",  "DOOR",  "BELL",  "MILK",  "NEST",
};

std::vector<std::string> labels(char first, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.emplace_back(1, static_cast<char>(first + i));
  return out;
}

oracle::CipherBoard board_from_json(const json& j) {
  return {j.at("column_labels").get<std::vector<std::string>>(), j.at("row_labels").get<std::vector<std::string>>(),
          j.at("rows").get<std::vector<std::string>>()};
}

class CipherGenerator : public FamilyGenerator {
 public:
  Family family() const override { return Family::Cipher; }

  Draft sample(const RootPuzzleSpec& spec, Rng& rng) const override {
    const int g = static_cast<int>(rng.uniform_int(param(spec, "grid_min", 4), param(spec, "grid_max", 5)));
    std::vector<std::string> words(std::begin(kWords), std::end(kWords));
    const auto pair = rng.sample(words, 2);
    const std::string& target = pair[0];
    const std::string& example = pair[1];

    std::set<char> needed(target.begin(), target.end());
    needed.insert(example.begin(), example.end());
    if (static_cast<int>(needed.size()) > g * g) throw DegeneracyError("words need more letters than the board has");
    std::vector<char> rest;
    for (char ch = 'A'; ch <= 'Z'; ++ch) {
      if (!needed.count(ch)) rest.push_back(ch);
    }
    std::vector<char> letters(needed.begin(), needed.end());
    for (char ch : rng.sample(rest, static_cast<std::size_t>(g * g) - letters.size())) letters.push_back(ch);
    rng.shuffle(letters);

    oracle::CipherBoard board{labels('A', g), labels('1', g), {}};
    CipherMapping mapping;
    for (int r = 0; r < g; ++r) {
      std::string row;
      for (int c = 0; c < g; ++c) {
        const char ch = letters[static_cast<std::size_t>(r * g + c)];
        row += ch;
        mapping[ch] = board.column_labels[c] + board.row_labels[r];
      }
      board.rows.push_back(row);
    }

    std::vector<std::string> decoys;
    for (int attempt = 0; attempt < 100 && decoys.size() < 4; ++attempt) {
      std::string w = target;
      const auto changes = rng.uniform_int(1, 2);
      for (std::int64_t i = 0; i < changes; ++i) w[rng.index(w.size())] = rng.pick(letters);
      if (w != target && std::find(decoys.begin(), decoys.end(), w) == decoys.end()) decoys.push_back(w);
    }
    if (decoys.size() < 4) throw DegeneracyError("not enough decoy words");
    std::vector<std::string> candidates = decoys;
    candidates.push_back(target);
    const std::string code = encode_word(mapping, target);
    const std::string answer = decode_word(mapping, code, candidates);

    Scene scene;
    const double cell = 160.0 / (g + 1), x0 = (kDefaultCanvas - cell * (g + 1)) / 2;
    for (int c = 0; c < g; ++c) {
      scene.add(TextShape{{x0 + cell * (c + 1.5), x0 + cell * 0.5 + 5}, board.column_labels[c], 13.0, Rgb{0, 114, 178}});
    }
    for (int r = 0; r < g; ++r) {
      scene.add(TextShape{{x0 + cell * 0.5, x0 + cell * (r + 1.5) + 5}, board.row_labels[r], 13.0, Rgb{0, 114, 178}});
      for (int c = 0; c < g; ++c) {
        const Point o{x0 + cell * (c + 1), x0 + cell * (r + 1)};
        scene.add(RectShape{o, cell, cell, Style{kBlack, kWhite, 1.0}});
        scene.add(TextShape{{o.x + cell / 2, o.y + cell / 2 + 5}, std::string(1, board.rows[r][c]), 14.0, kBlack});
      }
    }

    Bindings b;
    b.texts = {{"example", example}, {"example_code", encode_word(mapping, example)}, {"code", code}};

    Draft d;
    d.config = {{"column_labels", board.column_labels}, {"row_labels", board.row_labels},
                {"rows", board.rows}, {"code", code}, {"candidates", candidates}};
    d.answer = answer;
    d.scene = std::move(scene);
    d.question = question_from(family(), "decode", b, rng);
    d.policy = DecoyPolicy{decoys};
    return d;
  }

  AnswerValue oracle(const json& config) const override {
    const auto candidates = config.at("candidates").get<std::vector<std::string>>();
    const auto hits = oracle::cipher_matches(board_from_json(config), config.at("code").get<std::string>(), candidates);
    if (hits.size() != 1) throw ConsistencyError(std::to_string(hits.size()) + " words match the code");
    return hits.front();
  }
};

}  // namespace

std::shared_ptr<const FamilyGenerator> make_cipher() { return std::make_shared<CipherGenerator>(); }

}  // namespace smartgen::detail
