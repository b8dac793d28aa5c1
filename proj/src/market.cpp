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

#include "edgeauction/market.hpp"

#include <cmath>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {

void AoIMarketParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidInput(std::string("market: ") + what);
  };
  require(n_bidders >= 1, "n_bidders must be >= 1");
  require(worker_aoi > 0.0 && worker_aoi <= 1.0, "worker_aoi must be in (0, 1]");
  require(pref.lo >= 0.0 && pref.lo <= pref.hi && pref.hi > 0.0 &&
              std::isfinite(pref.hi),
          "pref range must satisfy 0 <= lo <= hi, hi > 0");
  require(req.lo > 0.0 && req.lo <= req.hi && req.hi <= 1.0,
          "req range must satisfy 0 < lo <= hi <= 1");
  require(value_floor >= 0.0 && value_floor < 1.0,
          "value_floor must be in [0, 1)");
}

BidderType SampleBidder(const AoIMarketParams& params, Rng& rng) {
  BidderType type;
  type.preference = rng.UniformOpenLow(params.pref.lo, params.pref.hi);
  type.requirement = rng.UniformOpenLow(params.req.lo, params.req.hi);
  return type;
}

double Valuation(double preference, double requirement, double aoi,
                 double value_floor) {
  if (!(aoi > 0.0) || !(preference > 0.0)) {
    throw InvalidInput("valuation: preference and AoI must be positive");
  }
  if (!(requirement > 0.0)) {
    throw InvalidInput("valuation: requirement must be positive");
  }
  if (aoi <= requirement) return preference / aoi;
  return value_floor * preference / requirement;
}

BidProfile SampleProfile(const AoIMarketParams& params, Rng& rng) {
  BidProfile profile;
  profile.worker_aoi = params.worker_aoi;
  profile.bids.reserve(params.n_bidders);
  for (std::size_t i = 0; i < params.n_bidders; ++i) {
    const BidderType type = SampleBidder(params, rng);
    profile.bids.push_back(Valuation(type.preference, type.requirement,
                                     params.worker_aoi, params.value_floor));
  }
  return profile;
}

std::vector<BidProfile> SampleProfiles(const AoIMarketParams& params,
                                       std::size_t count, Rng& rng) {
  std::vector<BidProfile> profiles;
  profiles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    profiles.push_back(SampleProfile(params, rng));
  }
  return profiles;
}

}  // namespace edgeauction
