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
#include <vector>

#include "edgeauction/rng.hpp"

namespace edgeauction {

// Shape of the min-max transform: `groups` groups of `units` affine units.
struct NetShape {
  std::size_t groups = 5;
  std::size_t units = 10;
  bool shared_weights = true;

  friend bool operator==(const NetShape&, const NetShape&) = default;
};

// Which (group, unit) pair a min-max evaluation selected. Gradients flow
// only through this unit.
struct ActiveUnit {
  std::size_t group = 0;
  std::size_t unit = 0;
};

// Strictly increasing piecewise-linear bid transforms
//
//   phi_i(b) = min_g max_k ( exp(alpha[g][k]) * b + beta[g][k] )
//
// one per bidder, or a single transform reused by every bidder when
// shared_weights is set. Slopes are exp(alpha) so they stay positive for any
// real alpha. Storage is flat, row-major over (transform, group, unit).
class MonotoneNetParams {
 public:
  MonotoneNetParams() = default;

  // All alpha and beta zero: every transform is the identity.
  MonotoneNetParams(std::size_t n_bidders, NetShape shape);

  static MonotoneNetParams Identity(std::size_t n_bidders, NetShape shape) {
    return MonotoneNetParams(n_bidders, shape);
  }
  // alpha, beta ~ U[-1, 1].
  static MonotoneNetParams RandomInit(std::size_t n_bidders, NetShape shape,
                                      Rng& rng);

  std::size_t n_bidders() const { return n_bidders_; }
  std::size_t groups() const { return shape_.groups; }
  std::size_t units() const { return shape_.units; }
  bool shared_weights() const { return shape_.shared_weights; }
  const NetShape& shape() const { return shape_; }
  std::size_t n_transforms() const { return shape_.shared_weights ? 1 : n_bidders_; }
  std::size_t units_per_transform() const { return shape_.groups * shape_.units; }

  // Parameter block used by `bidder`; throws InvalidInput when out of range.
  std::size_t TransformIndex(std::size_t bidder) const;

  // Offset of (transform, group, unit) in the flat alpha/beta arrays.
  std::size_t Offset(std::size_t transform, std::size_t group,
                     std::size_t unit) const {
    return (transform * shape_.groups + group) * shape_.units + unit;
  }

  std::span<double> alpha() { return alpha_; }
  std::span<const double> alpha() const { return alpha_; }
  std::span<double> beta() { return beta_; }
  std::span<const double> beta() const { return beta_; }

  double Slope(std::size_t transform, std::size_t group,
               std::size_t unit) const;

  friend bool operator==(const MonotoneNetParams&,
                         const MonotoneNetParams&) = default;

 private:
  std::size_t n_bidders_ = 0;
  NetShape shape_{};
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

// Read-only view of a parameter set with exp(alpha) and exp(-alpha)
// precomputed. Evaluates bit-identically to the free functions below; the
// parameters must outlive the view and stay unchanged while it is used.
class MaterializedNet {
 public:
  explicit MaterializedNet(const MonotoneNetParams& params);

  const MonotoneNetParams& params() const { return *params_; }
  std::size_t n_bidders() const { return params_->n_bidders(); }

  double Transform(std::size_t bidder, double bid, ActiveUnit& active) const;
  double InverseTransform(std::size_t bidder, double transformed,
                          ActiveUnit& active) const;
  double Transform(std::size_t bidder, double bid) const {
    ActiveUnit ignored;
    return Transform(bidder, bid, ignored);
  }
  double InverseTransform(std::size_t bidder, double transformed) const {
    ActiveUnit ignored;
    return InverseTransform(bidder, transformed, ignored);
  }

  double slope(std::size_t offset) const { return slope_[offset]; }
  double inverse_slope(std::size_t offset) const { return inverse_slope_[offset]; }

 private:
  const MonotoneNetParams* params_;
  std::vector<double> slope_;
  std::vector<double> inverse_slope_;
};

double Transform(const MonotoneNetParams& params, std::size_t bidder, double bid);
double InverseTransform(const MonotoneNetParams& params, std::size_t bidder,
                        double transformed);

// Same as above, also reporting the selected unit (lowest index wins ties).
double Transform(const MonotoneNetParams& params, std::size_t bidder, double bid,
                 ActiveUnit& active);
double InverseTransform(const MonotoneNetParams& params, std::size_t bidder,
                        double transformed, ActiveUnit& active);

}  // namespace edgeauction
