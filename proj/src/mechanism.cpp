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

#include "edgeauction/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {
namespace {

void RequireMatchingProfile(const MaterializedNet& params,
                            const BidProfile& profile) {
  if (profile.size() != params.n_bidders()) {
    throw InvalidInput("profile has " + std::to_string(profile.size()) +
                       " bids but the mechanism expects " +
                       std::to_string(params.n_bidders()));
  }
}

std::vector<double> OneHot(std::size_t n, std::optional<std::size_t> winner) {
  std::vector<double> probs(n + 1, 0.0);
  probs[winner ? *winner : n] = 1.0;
  return probs;
}

}  // namespace

std::vector<double> TransformBids(const MaterializedNet& net,
                                  const BidProfile& profile) {
  RequireMatchingProfile(net, profile);
  std::vector<double> transformed(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    transformed[i] = net.Transform(i, profile.bids[i]);
  }
  return transformed;
}

std::vector<double> TransformBids(const MonotoneNetParams& params,
                                  const BidProfile& profile) {
  return TransformBids(MaterializedNet(params), profile);
}

std::vector<double> AllocateSoft(std::span<const double> transformed,
                                 double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InvalidInput("softmax temperature must be positive and finite");
  }
  // Shift by the largest logit (the dummy contributes 0). Differences are
  // taken before scaling so huge inputs cannot produce inf - inf.
  double top = 0.0;
  for (double z : transformed) top = std::max(top, z);
  std::vector<double> probs(transformed.size() + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < transformed.size(); ++i) {
    probs[i] = std::exp(temperature * (transformed[i] - top));
    total += probs[i];
  }
  probs.back() = std::exp(temperature * (0.0 - top));
  total += probs.back();
  for (double& p : probs) p /= total;
  return probs;
}

std::optional<std::size_t> AllocateHard(std::span<const double> transformed) {
  if (transformed.empty()) throw InvalidInput("allocation needs at least one bid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < transformed.size(); ++i) {
    if (transformed[i] > transformed[best]) best = i;
  }
  if (transformed[best] > 0.0) return best;
  return std::nullopt;
}

double TransformedThreshold(std::span<const double> transformed,
                            std::size_t excluded) {
  double threshold = 0.0;
  for (std::size_t j = 0; j < transformed.size(); ++j) {
    if (j != excluded) threshold = std::max(threshold, transformed[j]);
  }
  return threshold;
}

namespace {

double PaymentFromTransformed(const MaterializedNet& net,
                              std::span<const double> transformed,
                              std::size_t winner) {
  const double threshold = TransformedThreshold(transformed, winner);
  return std::max(0.0, net.InverseTransform(winner, threshold));
}

}  // namespace

double Payment(const MonotoneNetParams& params, const BidProfile& profile,
               std::size_t winner) {
  if (winner >= profile.size()) {
    throw InvalidInput("winner index " + std::to_string(winner) + " out of range");
  }
  const MaterializedNet net(params);
  const std::vector<double> transformed = TransformBids(net, profile);
  return PaymentFromTransformed(net, transformed, winner);
}

AuctionOutcome RunAuction(const MonotoneNetParams& params,
                          const BidProfile& profile, AuctionMode mode) {
  return RunAuction(MaterializedNet(params), profile, mode);
}

AuctionOutcome RunAuction(const MaterializedNet& net, const BidProfile& profile,
                          AuctionMode mode) {
  const std::vector<double> transformed = TransformBids(net, profile);
  const std::size_t n = profile.size();
  AuctionOutcome outcome;

  if (std::holds_alternative<HardMode>(mode)) {
    outcome.winner = AllocateHard(transformed);
    if (outcome.winner) {
      const std::size_t w = *outcome.winner;
      // The threshold never exceeds the winner's transformed bid, but the
      // inverse can round an ulp above the bid.
      outcome.payment = std::min(PaymentFromTransformed(net, transformed, w),
                                 profile.bids[w]);
    }
    outcome.alloc_probs = OneHot(n, outcome.winner);
    return outcome;
  }

  const double temperature = std::get<SoftMode>(mode).temperature;
  outcome.alloc_probs = AllocateSoft(transformed, temperature);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double threshold = TransformedThreshold(transformed, i);
    outcome.payment +=
        outcome.alloc_probs[i] * net.InverseTransform(i, threshold);
    if (outcome.alloc_probs[i] > outcome.alloc_probs[best]) best = i;
  }
  if (outcome.alloc_probs[best] > outcome.alloc_probs[n]) outcome.winner = best;
  return outcome;
}

double IcRegret(const MonotoneNetParams& params, const BidProfile& profile,
                std::size_t bidder, std::span<const double> deviation_grid) {
  return IcRegret(MaterializedNet(params), profile, bidder, deviation_grid);
}

double IcRegret(const MaterializedNet& net, const BidProfile& profile,
                std::size_t bidder, std::span<const double> deviation_grid) {
  if (deviation_grid.empty()) throw InvalidInput("deviation grid is empty");
  if (bidder >= profile.size()) {
    throw InvalidInput("bidder index " + std::to_string(bidder) + " out of range");
  }
  const std::vector<double> transformed = TransformBids(net, profile);
  const double value = profile.bids[bidder];

  // Everything except the bidder's own transformed bid is fixed, so the
  // price it faces is the same for every report; only winning changes.
  double rival = 0.0;
  bool rival_has_priority = false;  // a lower-index rival wins exact ties
  bool any_rival = false;
  for (std::size_t j = 0; j < transformed.size(); ++j) {
    if (j == bidder) continue;
    if (!any_rival || transformed[j] > rival) {
      rival = transformed[j];
      rival_has_priority = j < bidder;
      any_rival = true;
    }
  }
  const double price = std::max(0.0, net.InverseTransform(bidder, std::max(0.0, rival)));
  auto utility = [&](double report) {
    const double z = net.Transform(bidder, report);
    if (!(z > 0.0)) return 0.0;
    if (any_rival && (z < rival || (z == rival && rival_has_priority))) return 0.0;
    return value - std::min(price, report);
  };

  const double truthful = utility(value);
  double regret = 0.0;
  for (double report : deviation_grid) {
    regret = std::max(regret, utility(report) - truthful);
  }
  return regret;
}

std::vector<double> DeviationGrid(double truthful, std::size_t points) {
  std::vector<double> grid;
  grid.reserve(points + 1);
  const double top = 2.0 * truthful;
  for (std::size_t k = 0; k < points; ++k) {
    grid.push_back(points == 1 ? 0.0
                               : top * static_cast<double>(k) /
                                     static_cast<double>(points - 1));
  }
  grid.push_back(truthful);
  return grid;
}

bool CheckIr(const AuctionOutcome& outcome, const BidProfile& profile) {
  if (!outcome.winner) return true;
  return outcome.payment <= profile.bids.at(*outcome.winner);
}

}  // namespace edgeauction
