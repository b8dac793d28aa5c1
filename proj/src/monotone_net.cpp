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

#include "edgeauction/monotone_net.hpp"

#include <cmath>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {

MonotoneNetParams::MonotoneNetParams(std::size_t n_bidders, NetShape shape)
    : n_bidders_(n_bidders), shape_(shape) {
  if (n_bidders == 0 || shape.groups == 0 || shape.units == 0) {
    throw InvalidInput("monotone net: bidders, groups and units must be >= 1");
  }
  const std::size_t size = n_transforms() * units_per_transform();
  alpha_.assign(size, 0.0);
  beta_.assign(size, 0.0);
}

MonotoneNetParams MonotoneNetParams::RandomInit(std::size_t n_bidders,
                                                NetShape shape, Rng& rng) {
  MonotoneNetParams params(n_bidders, shape);
  for (std::size_t i = 0; i < params.alpha_.size(); ++i) {
    params.alpha_[i] = rng.Uniform(-1.0, 1.0);
    params.beta_[i] = rng.Uniform(-1.0, 1.0);
  }
  return params;
}

std::size_t MonotoneNetParams::TransformIndex(std::size_t bidder) const {
  if (bidder >= n_bidders_) {
    throw InvalidInput("bidder index " + std::to_string(bidder) +
                       " out of range for " + std::to_string(n_bidders_) +
                       " bidders");
  }
  return shape_.shared_weights ? 0 : bidder;
}

double MonotoneNetParams::Slope(std::size_t transform, std::size_t group,
                                std::size_t unit) const {
  return std::exp(alpha_[Offset(transform, group, unit)]);
}

namespace {

// min over groups of max over units of slope * bid + beta.
template <typename SlopeFn>
double MinMax(const MonotoneNetParams& params, std::size_t bidder, double bid,
              SlopeFn slope, ActiveUnit& active) {
  const std::size_t t = params.TransformIndex(bidder);
  const auto beta = params.beta();
  double result = 0.0;
  for (std::size_t g = 0; g < params.groups(); ++g) {
    double group_max = 0.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < params.units(); ++k) {
      const std::size_t o = params.Offset(t, g, k);
      const double value = slope(o) * bid + beta[o];
      if (k == 0 || value > group_max) {
        group_max = value;
        arg = k;
      }
    }
    if (g == 0 || group_max < result) {
      result = group_max;
      active = {g, arg};
    }
  }
  return result;
}

// max over groups of min over units of inverse_slope * (y - beta).
template <typename SlopeFn>
double MaxMin(const MonotoneNetParams& params, std::size_t bidder,
              double transformed, SlopeFn inverse_slope, ActiveUnit& active) {
  const std::size_t t = params.TransformIndex(bidder);
  const auto beta = params.beta();
  double result = 0.0;
  for (std::size_t g = 0; g < params.groups(); ++g) {
    double group_min = 0.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < params.units(); ++k) {
      const std::size_t o = params.Offset(t, g, k);
      const double value = inverse_slope(o) * (transformed - beta[o]);
      if (k == 0 || value < group_min) {
        group_min = value;
        arg = k;
      }
    }
    if (g == 0 || group_min > result) {
      result = group_min;
      active = {g, arg};
    }
  }
  return result;
}

}  // namespace

double Transform(const MonotoneNetParams& params, std::size_t bidder, double bid,
                 ActiveUnit& active) {
  const auto alpha = params.alpha();
  return MinMax(
      params, bidder, bid, [&](std::size_t o) { return std::exp(alpha[o]); },
      active);
}

double InverseTransform(const MonotoneNetParams& params, std::size_t bidder,
                        double transformed, ActiveUnit& active) {
  const auto alpha = params.alpha();
  return MaxMin(
      params, bidder, transformed,
      [&](std::size_t o) { return std::exp(-alpha[o]); }, active);
}

MaterializedNet::MaterializedNet(const MonotoneNetParams& params)
    : params_(&params) {
  const auto alpha = params.alpha();
  slope_.resize(alpha.size());
  inverse_slope_.resize(alpha.size());
  for (std::size_t o = 0; o < alpha.size(); ++o) {
    slope_[o] = std::exp(alpha[o]);
    inverse_slope_[o] = std::exp(-alpha[o]);
  }
}

double MaterializedNet::Transform(std::size_t bidder, double bid,
                                  ActiveUnit& active) const {
  return MinMax(
      *params_, bidder, bid, [this](std::size_t o) { return slope_[o]; }, active);
}

double MaterializedNet::InverseTransform(std::size_t bidder, double transformed,
                                         ActiveUnit& active) const {
  return MaxMin(
      *params_, bidder, transformed,
      [this](std::size_t o) { return inverse_slope_[o]; }, active);
}

double Transform(const MonotoneNetParams& params, std::size_t bidder, double bid) {
  ActiveUnit ignored;
  return Transform(params, bidder, bid, ignored);
}

double InverseTransform(const MonotoneNetParams& params, std::size_t bidder,
                        double transformed) {
  ActiveUnit ignored;
  return InverseTransform(params, bidder, transformed, ignored);
}

}  // namespace edgeauction
