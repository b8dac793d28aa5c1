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

#include "edgeauction/baselines.hpp"

#include <algorithm>
#include <vector>

#include "edgeauction/errors.hpp"

namespace edgeauction {
namespace {

// Index of the highest bid (lowest index on ties) and the highest bid
// among the others, or 0 when there are none.
struct TopTwo {
  std::size_t best = 0;
  double second = 0.0;
};

TopTwo FindTopTwo(std::span<const double> bids) {
  if (bids.empty()) throw InvalidInput("auction needs at least one bid");
  TopTwo top;
  for (std::size_t i = 1; i < bids.size(); ++i) {
    if (bids[i] > bids[top.best]) top.best = i;
  }
  bool seen = false;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (i == top.best) continue;
    top.second = seen ? std::max(top.second, bids[i]) : bids[i];
    seen = true;
  }
  return top;
}

AuctionOutcome Sold(std::size_t n, std::optional<std::size_t> winner,
                    double price) {
  AuctionOutcome outcome;
  outcome.winner = winner;
  outcome.payment = winner ? price : 0.0;
  outcome.alloc_probs.assign(n + 1, 0.0);
  outcome.alloc_probs[winner ? *winner : n] = 1.0;
  return outcome;
}

}  // namespace

AuctionOutcome Spa(std::span<const double> bids, SpaConfig config) {
  if (config.reserve < 0.0) throw InvalidInput("reserve must be >= 0");
  const TopTwo top = FindTopTwo(bids);
  const double high = bids[top.best];
  if (high < config.reserve || !(high > 0.0)) {
    return Sold(bids.size(), std::nullopt, 0.0);
  }
  const double second = bids.size() > 1 ? top.second : 0.0;
  return Sold(bids.size(), top.best, std::max(second, config.reserve));
}

AuctionOutcome Fpa(std::span<const double> bids) {
  const TopTwo top = FindTopTwo(bids);
  return Sold(bids.size(), top.best, bids[top.best]);
}

AuctionOutcome MyersonUniform(std::span<const double> bids) {
  return Spa(bids, SpaConfig{0.5});
}

namespace {

template <typename Mechanism>
RevenueEstimate UniformRevenue(std::size_t n, std::size_t samples, Rng& rng,
                               Mechanism mechanism) {
  if (n == 0) throw InvalidInput("need at least one bidder");
  RunningStats stats;
  std::vector<double> bids(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& b : bids) b = rng.Uniform01();
    stats.Add(mechanism(bids).payment);
  }
  return stats.Estimate();
}

}  // namespace

RevenueEstimate MyersonUniformRevenue(std::size_t n, std::size_t samples, Rng& rng) {
  return UniformRevenue(n, samples, rng, [](std::span<const double> bids) {
    return MyersonUniform(bids);
  });
}

RevenueEstimate SpaUniformRevenue(std::size_t n, std::size_t samples, Rng& rng) {
  return UniformRevenue(n, samples, rng,
                        [](std::span<const double> bids) { return Spa(bids); });
}

}  // namespace edgeauction
