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
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgeauction/market.hpp"
#include "edgeauction/mechanism.hpp"
#include "edgeauction/monotone_net.hpp"
#include "edgeauction/stats.hpp"

namespace edgeauction {

enum class InitKind { kRandom, kIdentity };

struct TrainConfig {
  std::size_t batch_size = 128;
  std::size_t iterations = 3000;
  double learning_rate = 1e-3;
  double temperature = 100.0;
  std::uint64_t seed = 1;
  AoIMarketParams market;
  NetShape net;
  InitKind init = InitKind::kRandom;
  // Random init only: the transforms start with their zero crossing at this
  // quantile of the market's positive bids.
  double init_reserve_quantile = 0.1;
  std::size_t eval_every = 500;
  std::size_t eval_samples = 10000;

  void Validate() const;
};

// Hard-mode revenue of a learned mechanism against SPA (zero reserve) on the
// same profiles. `gain` is the paired per-profile difference dl - spa.
struct RevenueComparison {
  RevenueEstimate dl;
  RevenueEstimate spa;
  RevenueEstimate gain;
};

struct HistoryRecord {
  std::size_t iteration = 0;
  double train_revenue = 0.0;  // soft-mode revenue of the batch
  RevenueComparison eval;
};

struct TrainHistory {
  std::vector<HistoryRecord> records;
};

struct ParamGradient {
  std::vector<double> alpha;
  std::vector<double> beta;

  friend bool operator==(const ParamGradient&, const ParamGradient&) = default;
};

struct TrainResult {
  MonotoneNetParams params;
  TrainHistory history;
};

// Raised when the loss becomes non-finite. Carries the parameters from the
// last iteration whose loss was finite and the history recorded so far.
class TrainingFailure : public std::runtime_error {
 public:
  TrainingFailure(const std::string& what, std::size_t iteration,
                  MonotoneNetParams last_good, TrainHistory history)
      : std::runtime_error(what),
        iteration_(iteration),
        last_good_(std::move(last_good)),
        history_(std::move(history)) {}

  std::size_t iteration() const { return iteration_; }
  const MonotoneNetParams& last_good() const { return last_good_; }
  const TrainHistory& history() const { return history_; }

 private:
  std::size_t iteration_;
  MonotoneNetParams last_good_;
  TrainHistory history_;
};

// Expected soft-mode payment of one profile:
//   sum_i p_i * phi_i^{-1}(max(0, max_{j != i} phi_j(b_j)))
double ExpectedSoftPayment(const MonotoneNetParams& params,
                           const BidProfile& profile, double temperature);

// Negated mean expected soft-mode payment over the batch.
double RevenueLoss(const MonotoneNetParams& params,
                   std::span<const BidProfile> batch, double temperature);

// Gradient of RevenueLoss with respect to (alpha, beta). Min/max selections
// are treated as fixed (subgradient through the selected unit, lowest index
// on ties). Returns the loss; profiles are reduced sequentially in order.
double LossAndGradient(const MonotoneNetParams& params,
                       std::span<const BidProfile> batch, double temperature,
                       ParamGradient& gradient);

ParamGradient Gradient(const MonotoneNetParams& params,
                       std::span<const BidProfile> batch, double temperature);

RevenueComparison CompareWithSpa(const MonotoneNetParams& params,
                                 std::span<const BidProfile> profiles);

MonotoneNetParams InitialParams(const TrainConfig& config);

// Minibatch SGD on RevenueLoss. Records a HistoryRecord every eval_every
// iterations and after the last one.
TrainResult Train(const TrainConfig& config);

struct Checkpoint {
  MonotoneNetParams params;
  TrainConfig config;
};

inline constexpr int kCheckpointVersion = 1;

// JSON checkpoint holding the format version, shapes, RNG algorithm, the
// full training config and the raw alpha/beta arrays.
void SaveCheckpoint(const MonotoneNetParams& params, const TrainConfig& config,
                    const std::filesystem::path& path);

// Throws LoadFailure on unreadable, malformed or version-mismatched files,
// and when `expected` is given and the stored shape differs from it.
Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const std::optional<NetShape>& expected = std::nullopt);

}  // namespace edgeauction
