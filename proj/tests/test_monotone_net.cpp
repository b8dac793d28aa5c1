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

#include <cmath>

#include <doctest.h>

#include "edgeauction/errors.hpp"
#include "edgeauction/monotone_net.hpp"
#include "oracles.hpp"

using namespace edgeauction;

namespace {

MonotoneNetParams SingleUnit(double alpha, double beta) {
  MonotoneNetParams p(1, NetShape{1, 1, true});
  p.alpha()[0] = alpha;
  p.beta()[0] = beta;
  return p;
}

}  // namespace

TEST_CASE("identity transform") {
  const MonotoneNetParams id = MonotoneNetParams::Identity(3, NetShape{1, 1, true});
  for (double b : {-2.0, 0.0, 0.37, 5.0}) {
    CHECK(Transform(id, 1, b) == b);
    CHECK(InverseTransform(id, 2, b) == b);
  }
  // Every unit identical also gives the identity.
  const MonotoneNetParams wide = MonotoneNetParams::Identity(2, NetShape{5, 10, false});
  CHECK(Transform(wide, 1, 0.8) == 0.8);
  CHECK(InverseTransform(wide, 0, 0.8) == 0.8);
}

TEST_CASE("dominated unit does not change the transform") {
  MonotoneNetParams p(1, NetShape{1, 2, true});
  p.beta()[1] = -1.0;
  for (double b : {0.0, 0.5, 3.0}) CHECK(Transform(p, 0, b) == b);
}

TEST_CASE("affine inversion") {
  const MonotoneNetParams p = SingleUnit(std::log(2.0), 1.0);
  CHECK(InverseTransform(p, 0, 5.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(Transform(p, 0, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("bidder index is checked") {
  const MonotoneNetParams p = MonotoneNetParams::Identity(2, NetShape{});
  CHECK_THROWS_AS(Transform(p, 2, 0.5), InvalidInput);
  CHECK_THROWS_AS(InverseTransform(p, 5, 0.5), InvalidInput);
  CHECK_THROWS_AS(MonotoneNetParams(0, NetShape{}), InvalidInput);
  CHECK_THROWS_AS(MonotoneNetParams(1, NetShape{0, 3, true}), InvalidInput);
}

TEST_CASE("parameter layout") {
  const MonotoneNetParams shared(4, NetShape{5, 10, true});
  CHECK(shared.alpha().size() == 50);
  CHECK(shared.TransformIndex(3) == 0);
  const MonotoneNetParams per(4, NetShape{5, 10, false});
  CHECK(per.alpha().size() == 200);
  CHECK(per.TransformIndex(3) == 3);
}

TEST_CASE("random init slopes are positive and near one") {
  Rng rng(9);
  const auto p = MonotoneNetParams::RandomInit(3, NetShape{5, 10, false}, rng);
  for (std::size_t t = 0; t < p.n_transforms(); ++t) {
    for (std::size_t g = 0; g < p.groups(); ++g) {
      for (std::size_t k = 0; k < p.units(); ++k) {
        const double w = p.Slope(t, g, k);
        REQUIRE(w > 0.0);
        REQUIRE(w >= std::exp(-1.0));
        REQUIRE(w <= std::exp(1.0));
      }
    }
  }
}

TEST_CASE("transform agrees with the brute-force oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const bool shared = trial % 2 == 0;
    const auto p = oracle::RandomParams(rng, 3, oracle::RandomShape(rng, shared));
    const std::size_t bidder = rng.NextWord() % 3;
    const double b = rng.Uniform(-3.0, 3.0);
    CHECK(Transform(p, bidder, b) ==
          doctest::Approx(static_cast<double>(oracle::Phi(p, bidder, b))).epsilon(1e-12));
    const double y = rng.Uniform(-3.0, 3.0);
    CHECK(InverseTransform(p, bidder, y) ==
          doctest::Approx(static_cast<double>(oracle::PhiInverseBisect(p, bidder, y)))
              .epsilon(1e-10));
  }
}

TEST_CASE("strict monotonicity over sampled bid pairs") {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    const auto p = oracle::RandomParams(rng, 1, oracle::RandomShape(rng, true));
    double b1 = rng.Uniform(-2.0, 2.0);
    double b2 = rng.Uniform(-2.0, 2.0);
    if (b1 == b2) continue;
    if (b1 > b2) std::swap(b1, b2);
    REQUIRE(Transform(p, 0, b1) < Transform(p, 0, b2));
  }
}

TEST_CASE("inverse round trip") {
  Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const auto p = oracle::RandomParams(rng, 2, oracle::RandomShape(rng, false));
    const std::size_t bidder = i % 2;
    const double y = rng.Uniform(-5.0, 5.0);
    REQUIRE(std::abs(Transform(p, bidder, InverseTransform(p, bidder, y)) - y) <= 1e-6);
  }
}

TEST_CASE("materialized view evaluates bit-identically") {
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const auto p = oracle::RandomParams(rng, 2, oracle::RandomShape(rng, false));
    const MaterializedNet net(p);
    const double b = rng.Uniform(-2.0, 2.0);
    ActiveUnit a1;
    ActiveUnit a2;
    REQUIRE(net.Transform(1, b, a1) == Transform(p, 1, b, a2));
    CHECK(a1.group == a2.group);
    CHECK(a1.unit == a2.unit);
    REQUIRE(net.InverseTransform(0, b) == InverseTransform(p, 0, b));
  }
}
