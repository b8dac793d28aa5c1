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
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "edgeauction/market.hpp"
#include "edgeauction/monotone_net.hpp"

namespace edgeauction {

// Result of one auction. alloc_probs has N + 1 entries; the last is the
// no-sale (dummy) outcome.
struct AuctionOutcome {
  std::optional<std::size_t> winner;
  double payment = 0.0;
  std::vector<double> alloc_probs;

  friend bool operator==(const AuctionOutcome&, const AuctionOutcome&) = default;
};

struct SoftMode {
  double temperature = 100.0;
};
struct HardMode {};
using AuctionMode = std::variant<SoftMode, HardMode>;

// phi_i(b_i) for every bidder.
std::vector<double> TransformBids(const MonotoneNetParams& params,
                                  const BidProfile& profile);
std::vector<double> TransformBids(const MaterializedNet& net,
                                  const BidProfile& profile);

// Softmax of temperature * [transformed..., 0]. The trailing 0 is the dummy
// bidder that implements the zero reserve.
std::vector<double> AllocateSoft(std::span<const double> transformed,
                                 double temperature);

// Highest transformed bid if it is strictly positive, lowest index on ties.
std::optional<std::size_t> AllocateHard(std::span<const double> transformed);

// max(0, max_{j != excluded} transformed[j]): the transformed threshold a
// bidder must beat.
double TransformedThreshold(std::span<const double> transformed,
                            std::size_t excluded);

// Smallest non-negative bid with which `winner` still wins, i.e.
// phi_w^{-1}(max(0, max_{j != w} phi_j(b_j))) floored at 0.
double Payment(const MonotoneNetParams& params, const BidProfile& profile,
               std::size_t winner);

AuctionOutcome RunAuction(const MonotoneNetParams& params,
                          const BidProfile& profile, AuctionMode mode);
// Same, reusing precomputed slopes across many profiles.
AuctionOutcome RunAuction(const MaterializedNet& net, const BidProfile& profile,
                          AuctionMode mode);

// Largest utility gain `bidder` obtains by reporting any bid in the grid
// instead of its true value (hard mode).
double IcRegret(const MonotoneNetParams& params, const BidProfile& profile,
                std::size_t bidder, std::span<const double> deviation_grid);
double IcRegret(const MaterializedNet& net, const BidProfile& profile,
                std::size_t bidder, std::span<const double> deviation_grid);

// `points` evenly spaced bids on [0, 2 * truthful] plus the truthful bid.
std::vector<double> DeviationGrid(double truthful, std::size_t points);

bool CheckIr(const AuctionOutcome& outcome, const BidProfile& profile);

}  // namespace edgeauction
