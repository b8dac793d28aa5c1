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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "edgeauction/rng.hpp"

namespace edgeauction {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Distributions generating one auction instance. Bidder i draws an AoI
// preference weight theta ~ U[pref] and an AoI requirement r ~ U[req]; the
// worker's AoI is a fixed scalar for the whole experiment.
struct AoIMarketParams {
  std::size_t n_bidders = 3;
  double worker_aoi = 0.5;
  Interval pref{0.1, 1.0};
  Interval req{0.2, 1.0};
  double value_floor = 0.0;
  std::uint64_t seed = 1;

  // Throws InvalidInput naming the first violated constraint.
  void Validate() const;
};

struct BidderType {
  double preference = 0.0;
  double requirement = 0.0;
};

// One auction instance: the worker's AoI and the truthful bids of N model
// owners.
struct BidProfile {
  double worker_aoi = 1.0;
  std::vector<double> bids;

  std::size_t size() const { return bids.size(); }
};

BidderType SampleBidder(const AoIMarketParams& params, Rng& rng);

// Value of fresh data with age `aoi` to a bidder of the given type.
// Inversely proportional to the AoI while it meets the requirement
// (aoi <= requirement); otherwise the flat floor f * theta / r.
double Valuation(double preference, double requirement, double aoi,
                 double value_floor);

BidProfile SampleProfile(const AoIMarketParams& params, Rng& rng);

std::vector<BidProfile> SampleProfiles(const AoIMarketParams& params,
                                       std::size_t count, Rng& rng);

}  // namespace edgeauction
