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
#include <span>

#include "edgeauction/mechanism.hpp"
#include "edgeauction/rng.hpp"
#include "edgeauction/stats.hpp"

namespace edgeauction {

struct SpaConfig {
  double reserve = 0.0;
};

// Second-price auction. The highest bid wins if it is at least the reserve
// and strictly positive (a zero bid never wins, matching the zero-reserve
// rule of the learned mechanism); the price is max(second bid, reserve).
AuctionOutcome Spa(std::span<const double> bids, SpaConfig config = {});

// First-price auction: the highest bid wins and pays itself.
AuctionOutcome Fpa(std::span<const double> bids);

// Revenue-optimal auction for i.i.d. U[0, 1] values (virtual value 2v - 1):
// SPA with reserve 1/2.
AuctionOutcome MyersonUniform(std::span<const double> bids);

// Monte-Carlo revenue of MyersonUniform with `n` i.i.d. U[0, 1] bidders.
RevenueEstimate MyersonUniformRevenue(std::size_t n, std::size_t samples, Rng& rng);

// Monte-Carlo revenue of zero-reserve SPA with `n` i.i.d. U[0, 1] bidders.
RevenueEstimate SpaUniformRevenue(std::size_t n, std::size_t samples, Rng& rng);

}  // namespace edgeauction
