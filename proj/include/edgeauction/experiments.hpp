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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgeauction/config.hpp"
#include "edgeauction/training.hpp"

namespace edgeauction {

// One CSV row of an experiment run.
struct ExperimentRecord {
  std::string experiment;  // fig3 | fig4 | fig5 | fig6 | custom
  std::size_t iteration = 0;
  std::string mechanism;   // dl | spa | fpa | myerson
  std::size_t n_bidders = 0;
  double worker_aoi = 0.0;
  double revenue_mean = 0.0;
  double revenue_stderr = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

using RecordSink = std::function<void(const ExperimentRecord&)>;

inline constexpr const char* kCsvHeader =
    "experiment,iteration,mechanism,n_bidders,worker_aoi,revenue_mean,"
    "revenue_stderr,samples,seed";

// Locale-independent, shortest round-trip formatting of doubles.
std::string FormatCsvRow(const ExperimentRecord& record);

// Header plus one line per record.
std::string FormatCsv(const std::vector<ExperimentRecord>& records);

// Seed for a figure cell, a function of the base seed and the cell's
// coordinates only, so the same (N, AoI) cell trains identically in every
// figure.
std::uint64_t CellSeed(std::uint64_t base_seed, std::size_t n_bidders,
                       double worker_aoi);

struct CellResult {
  std::uint64_t seed = 0;
  TrainConfig config;
  TrainResult result;

  const RevenueComparison& final_eval() const {
    return result.history.records.back().eval;
  }
};

// Trains the mechanism for one (N, AoI) cell of the base config.
CellResult RunCell(const TrainConfig& base, std::size_t n_bidders,
                   double worker_aoi);

// Each runner returns its records and also hands every record to `sink` as
// soon as it is produced. TrainingFailure propagates after the rows
// produced so far have been emitted.
std::vector<ExperimentRecord> RunFig3(const ExperimentConfig& config,
                                      const RecordSink& sink = {});
std::vector<ExperimentRecord> RunFig4(const ExperimentConfig& config,
                                      const RecordSink& sink = {});
std::vector<ExperimentRecord> RunFig5(const ExperimentConfig& config,
                                      const RecordSink& sink = {});
std::vector<ExperimentRecord> RunFig6(const ExperimentConfig& config,
                                      const RecordSink& sink = {});

}  // namespace edgeauction
