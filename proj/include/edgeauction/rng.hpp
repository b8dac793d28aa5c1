// Copyright 2026 The edgeauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace edgeauction {

// Seeded generator used for every random draw in the project.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform reals are produced from the top 53 bits of each word
// rather than through std::uniform_real_distribution, whose algorithm is
// implementation-defined, so draws are identical across toolchains.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/53bit-uniform";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi); returns lo exactly when lo == hi.
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform on (lo, hi]; returns hi exactly when lo == hi. Never lo for a
  // nondegenerate interval, so a lower bound of 0 yields strictly positive
  // draws.
  double UniformOpenLow(double lo, double hi) {
    return hi - (hi - lo) * Uniform01();
  }

  std::uint64_t NextWord() { return engine_(); }

  // Independent stream for a labelled purpose (initialisation, batches,
  // evaluation, figure cells) derived from a base seed.
  static Rng Derive(std::uint64_t seed, std::uint64_t stream) {
    return Rng(SplitMix64(seed ^ SplitMix64(stream + 0x9e3779b97f4a7c15ULL)));
  }

  static std::uint64_t SplitMix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgeauction
