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

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace smartgen {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of one instance. Chained so that (g, r, i) and (g, i, r) differ.
constexpr std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t root_id,
                                    std::uint64_t instance_id) {
  std::uint64_t h = splitmix64(global_seed);
  h = splitmix64(h ^ root_id);
  h = splitmix64(h ^ (instance_id * 0xd6e8feb86659fd93ULL));
  return h;
}

// Portable random stream. The engine (mt19937_64) is fully specified by the
// standard; the std:: distributions are not, so every draw used for
// generation goes through the members below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi], rejection-sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [lo, hi) with 53 random bits.
  double uniform_real(double lo, double hi);

  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

  std::size_t index(std::size_t size) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(size) - 1));
  }

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

  template <class T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[index(items.size())];
  }

  // k distinct elements chosen uniformly, in random order.
  template <class T>
  std::vector<T> sample(std::vector<T> items, std::size_t k) {
    shuffle(items);
    items.resize(std::min(k, items.size()));
    return items;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline Rng derive_rng(std::uint64_t global_seed, std::uint64_t root_id,
                      std::uint64_t instance_id) {
  return Rng(derive_seed(global_seed, root_id, instance_id));
}

}  // namespace smartgen
