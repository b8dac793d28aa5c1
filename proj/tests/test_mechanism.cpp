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
#include <numeric>

#include <doctest.h>

#include "edgeauction/baselines.hpp"
#include "edgeauction/errors.hpp"
#include "edgeauction/mechanism.hpp"
#include "oracles.hpp"

using namespace edgeauction;

namespace {

BidProfile Profile(std::vector<double> bids) { return BidProfile{1.0, std::move(bids)}; }

MonotoneNetParams Identity(std::size_t n) {
  return MonotoneNetParams::Identity(n, NetShape{1, 1, true});
}

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST_CASE("allocate_soft") {
  const std::vector<double> one{0.0};
  const auto p = AllocateSoft(one, 1.0);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  const std::vector<double> tie{2.0, 2.0};
  const auto q = AllocateSoft(tie, 1e4);
  CHECK(q[0] == doctest::Approx(0.5));
  CHECK(q[1] == doctest::Approx(0.5));
  CHECK(q[2] < 1e-300);

  const std::vector<double> split{1.0, -1.0};
  const auto r = AllocateSoft(split, 1e3);
  CHECK(r[0] == doctest::Approx(1.0));
  CHECK(r[1] < 1e-300);
  CHECK(r[2] < 1e-300);

  CHECK_THROWS_AS(AllocateSoft(one, 0.0), InvalidInput);
  CHECK_THROWS_AS(AllocateSoft(one, -1.0), InvalidInput);
}

TEST_CASE("allocate_soft never overflows and always sums to one") {
  Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    std::vector<double> z(1 + rng.NextWord() % 8);
    for (double& x : z) x = rng.Uniform(-1e300, 1e300) * (i % 3 == 0 ? 1.0 : 1e-300);
    const double kappa = std::pow(10.0, rng.Uniform(-3.0, 6.0));
    const auto p = AllocateSoft(z, kappa);
    REQUIRE(p.size() == z.size() + 1);
    for (double x : p) REQUIRE((x >= 0.0 && std::isfinite(x)));
    REQUIRE(std::abs(Sum(p) - 1.0) <= 1e-9);
  }
}

TEST_CASE("allocate_hard") {
  CHECK(AllocateHard(std::vector<double>{0.3, 0.9, 0.1}) == 1u);
  CHECK_FALSE(AllocateHard(std::vector<double>{-0.2, -0.5}).has_value());
  CHECK(AllocateHard(std::vector<double>{0.7, 0.7}) == 0u);
  CHECK_FALSE(AllocateHard(std::vector<double>{0.0, 0.0}).has_value());
  CHECK_THROWS_AS(AllocateHard(std::vector<double>{}), InvalidInput);
}

TEST_CASE("allocate_hard is invariant under a common increasing map fixing 0") {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> z(1 + rng.NextWord() % 6);
    for (double& x : z) x = rng.Uniform(-2.0, 2.0);
    std::vector<double> mapped(z.size());
    const double scale = rng.Uniform(0.1, 5.0);
    for (std::size_t k = 0; k < z.size(); ++k) {
      mapped[k] = z[k] > 0 ? scale * z[k] * z[k] + z[k] : std::sinh(z[k]);
    }
    REQUIRE(AllocateHard(z) == AllocateHard(mapped));
  }
}

TEST_CASE("payment") {
  const auto id = Identity(2);
  CHECK(Payment(id, Profile({0.9, 0.6}), 0) == 0.6);
  CHECK(Payment(Identity(1), Profile({0.9}), 0) == 0.0);
  CHECK_THROWS_AS(Payment(id, Profile({0.9, 0.6}), 2), InvalidInput);
}

TEST_CASE("payment never exceeds the winning bid under random monotone params") {
  Rng rng(14);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng.NextWord() % 5;
    const auto p = oracle::RandomParams(rng, n, oracle::RandomShape(rng, i % 2 == 0));
    BidProfile profile;
    for (std::size_t k = 0; k < n; ++k) profile.bids.push_back(rng.Uniform(0.0, 3.0));
    const AuctionOutcome out = RunAuction(p, profile, HardMode{});
    if (!out.winner) {
      REQUIRE(out.payment == 0.0);
      continue;
    }
    REQUIRE(out.payment <= profile.bids[*out.winner]);
    REQUIRE(out.payment >= 0.0);
    REQUIRE(Payment(p, profile, *out.winner) <= profile.bids[*out.winner] + 1e-9);
  }
}

TEST_CASE("run_auction hard") {
  const auto id = Identity(3);
  const AuctionOutcome out = RunAuction(id, Profile({3, 1, 2}), HardMode{});
  CHECK(out.winner == 0u);
  CHECK(out.payment == 2.0);
  CHECK(out.alloc_probs == std::vector<double>{1, 0, 0, 0});

  const AuctionOutcome none = RunAuction(id, Profile({0, 0, 0}), HardMode{});
  CHECK_FALSE(none.winner.has_value());
  CHECK(none.payment == 0.0);
  CHECK(none.alloc_probs == std::vector<double>{0, 0, 0, 1});

  CHECK_THROWS_AS(RunAuction(id, Profile({1, 2}), HardMode{}), InvalidInput);
}

TEST_CASE("run_auction soft") {
  const auto id = Identity(2);
  const AuctionOutcome out = RunAuction(id, Profile({1.0, 0.5}), SoftMode{1e4});
  CHECK(out.winner == 0u);
  CHECK(out.payment == doctest::Approx(0.5));
  CHECK(std::abs(Sum(out.alloc_probs) - 1.0) <= 1e-9);

  // Everything transformed below zero: the dummy takes the mass.
  MonotoneNetParams shifted = Identity(2);
  shifted.beta()[0] = -10.0;
  const AuctionOutcome none = RunAuction(shifted, Profile({1.0, 0.5}), SoftMode{100});
  CHECK_FALSE(none.winner.has_value());
  CHECK(none.alloc_probs.back() == doctest::Approx(1.0));
  CHECK_THROWS_AS(RunAuction(id, Profile({1.0, 0.5}), SoftMode{0.0}), InvalidInput);
}

TEST_CASE("soft mode at high temperature agrees with hard mode") {
  Rng rng(15);
  Rng init(16);
  const auto p = MonotoneNetParams::RandomInit(4, NetShape{5, 10, true}, init);
  int agree = 0;
  const int total = 10000;
  for (int i = 0; i < total; ++i) {
    BidProfile profile;
    for (int k = 0; k < 4; ++k) profile.bids.push_back(rng.Uniform(0.0, 1.0));
    const auto hard = RunAuction(p, profile, HardMode{});
    const auto soft = RunAuction(p, profile, SoftMode{1e4});
    if (hard.winner == soft.winner) ++agree;
  }
  CHECK(agree >= total * 99 / 100);
}

TEST_CASE("identity transforms reproduce SPA exactly") {
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + rng.NextWord() % 6;
    BidProfile profile;
    for (std::size_t k = 0; k < n; ++k) {
      // Include exact zeros and ties.
      const auto r = rng.NextWord() % 4;
      profile.bids.push_back(r == 0 ? 0.0 : r == 1 ? 0.5 : rng.Uniform01());
    }
    const auto dl = RunAuction(Identity(n), profile, HardMode{});
    REQUIRE(dl == Spa(profile.bids));
  }
}

TEST_CASE("ic_regret") {
  const auto id = Identity(3);
  Rng rng(18);
  for (int i = 0; i < 500; ++i) {
    BidProfile profile;
    for (int k = 0; k < 3; ++k) profile.bids.push_back(rng.Uniform01());
    for (std::size_t b = 0; b < 3; ++b) {
      const auto grid = DeviationGrid(profile.bids[b], 50);
      REQUIRE(IcRegret(id, profile, b, grid) == 0.0);
    }
  }
  Rng init(19);
  const auto p = MonotoneNetParams::RandomInit(3, NetShape{5, 10, false}, init);
  const BidProfile profile = Profile({0.4, 0.9, 0.2});
  const std::vector<double> truthful{0.9};
  CHECK(IcRegret(p, profile, 1, truthful) == 0.0);
  CHECK_THROWS_AS(IcRegret(p, profile, 1, std::vector<double>{}), InvalidInput);
}

TEST_CASE("ic_regret matches a brute-force re-run of the auction") {
  Rng rng(20);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.NextWord() % 4;
    const auto p = oracle::RandomParams(rng, n, oracle::RandomShape(rng, false));
    BidProfile profile;
    for (std::size_t k = 0; k < n; ++k) profile.bids.push_back(rng.Uniform(0.0, 2.0));
    const std::size_t bidder = rng.NextWord() % n;
    const auto grid = DeviationGrid(profile.bids[bidder], 40);

    auto utility = [&](double report) {
      BidProfile deviated = profile;
      deviated.bids[bidder] = report;
      const auto out = RunAuction(p, deviated, HardMode{});
      return out.winner == bidder ? profile.bids[bidder] - out.payment : 0.0;
    };
    double brute = 0.0;
    for (double report : grid) {
      brute = std::max(brute, utility(report) - utility(profile.bids[bidder]));
    }
    REQUIRE(IcRegret(p, profile, bidder, grid) == doctest::Approx(brute).epsilon(1e-12));
    // Threshold pricing: no report can do better than the truth.
    REQUIRE(brute <= 1e-12);
  }
}

TEST_CASE("deviation grid") {
  const auto grid = DeviationGrid(0.5, 200);
  REQUIRE(grid.size() == 201);
  CHECK(grid.front() == 0.0);
  CHECK(grid[199] == 1.0);
  CHECK(grid.back() == 0.5);
}

TEST_CASE("check_ir") {
  const BidProfile profile = Profile({0.9, 0.5});
  CHECK(CheckIr(AuctionOutcome{0u, 0.6, {1, 0, 0}}, profile));
  CHECK_FALSE(CheckIr(AuctionOutcome{1u, 0.6, {0, 1, 0}}, profile));
  CHECK(CheckIr(AuctionOutcome{std::nullopt, 0.0, {0, 0, 1}}, profile));
}

TEST_CASE("outcome probabilities form a distribution") {
  Rng rng(22);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + rng.NextWord() % 5;
    const auto p = oracle::RandomParams(rng, n, oracle::RandomShape(rng, true));
    BidProfile profile;
    for (std::size_t k = 0; k < n; ++k) profile.bids.push_back(rng.Uniform(0.0, 2.0));
    for (AuctionMode mode : {AuctionMode{HardMode{}}, AuctionMode{SoftMode{100.0}}}) {
      const auto out = RunAuction(p, profile, mode);
      REQUIRE(out.alloc_probs.size() == n + 1);
      for (double x : out.alloc_probs) REQUIRE(x >= 0.0);
      REQUIRE(std::abs(Sum(out.alloc_probs) - 1.0) <= 1e-9);
    }
  }
}
