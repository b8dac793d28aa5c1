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

#include "edgeauction/experiments.hpp"

#include <bit>

#include <fmt/format.h>

#include "edgeauction/rng.hpp"

namespace edgeauction {
namespace {

ExperimentRecord MakeRecord(std::string_view experiment, std::size_t iteration,
                            std::string_view mechanism, const CellResult& cell,
                            const RevenueEstimate& revenue) {
  ExperimentRecord record;
  record.experiment = std::string(experiment);
  record.iteration = iteration;
  record.mechanism = std::string(mechanism);
  record.n_bidders = cell.config.market.n_bidders;
  record.worker_aoi = cell.config.market.worker_aoi;
  record.revenue_mean = revenue.mean;
  record.revenue_stderr = revenue.stderr_;
  record.samples = revenue.samples;
  record.seed = cell.seed;
  return record;
}

class Collector {
 public:
  explicit Collector(const RecordSink& sink) : sink_(sink) {}

  void Emit(ExperimentRecord record) {
    if (sink_) sink_(record);
    records_.push_back(std::move(record));
  }

  void EmitPair(std::string_view experiment, std::size_t iteration,
                const CellResult& cell, const RevenueComparison& eval) {
    Emit(MakeRecord(experiment, iteration, "dl", cell, eval.dl));
    Emit(MakeRecord(experiment, iteration, "spa", cell, eval.spa));
  }

  std::vector<ExperimentRecord> Take() { return std::move(records_); }

 private:
  const RecordSink& sink_;
  std::vector<ExperimentRecord> records_;
};

// Final-revenue rows for every (N, AoI) cell, in the given order.
std::vector<ExperimentRecord> RunGrid(
    std::string_view experiment, const TrainConfig& base,
    const std::vector<std::pair<std::size_t, double>>& cells,
    const RecordSink& sink) {
  Collector out(sink);
  for (const auto& [n, aoi] : cells) {
    const CellResult cell = RunCell(base, n, aoi);
    out.EmitPair(experiment, cell.result.history.records.back().iteration, cell,
                 cell.final_eval());
  }
  return out.Take();
}

}  // namespace

std::string FormatCsvRow(const ExperimentRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", r.experiment, r.iteration,
                     r.mechanism, r.n_bidders, r.worker_aoi, r.revenue_mean,
                     r.revenue_stderr, r.samples, r.seed);
}

std::string FormatCsv(const std::vector<ExperimentRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ExperimentRecord& record : records) {
    out += FormatCsvRow(record);
    out += '\n';
  }
  return out;
}

std::uint64_t CellSeed(std::uint64_t base_seed, std::size_t n_bidders,
                       double worker_aoi) {
  std::uint64_t h = Rng::SplitMix64(base_seed);
  h = Rng::SplitMix64(h ^ static_cast<std::uint64_t>(n_bidders));
  return Rng::SplitMix64(h ^ std::bit_cast<std::uint64_t>(worker_aoi));
}

CellResult RunCell(const TrainConfig& base, std::size_t n_bidders,
                   double worker_aoi) {
  CellResult cell;
  cell.config = base;
  cell.config.market.n_bidders = n_bidders;
  cell.config.market.worker_aoi = worker_aoi;
  cell.seed = CellSeed(base.seed, n_bidders, worker_aoi);
  cell.config.seed = cell.seed;
  cell.result = Train(cell.config);
  return cell;
}

std::vector<ExperimentRecord> RunFig3(const ExperimentConfig& config,
                                      const RecordSink& sink) {
  const TrainConfig& base = config.train;
  Collector out(sink);
  CellResult cell;
  cell.config = base;
  cell.seed = CellSeed(base.seed, base.market.n_bidders, base.market.worker_aoi);
  cell.config.seed = cell.seed;
  try {
    cell.result = Train(cell.config);
  } catch (const TrainingFailure& failure) {
    for (const HistoryRecord& h : failure.history().records) {
      out.EmitPair("fig3", h.iteration, cell, h.eval);
    }
    throw;
  }
  for (const HistoryRecord& h : cell.result.history.records) {
    out.EmitPair("fig3", h.iteration, cell, h.eval);
  }
  return out.Take();
}

std::vector<ExperimentRecord> RunFig4(const ExperimentConfig& config,
                                      const RecordSink& sink) {
  std::vector<std::pair<std::size_t, double>> cells;
  for (double aoi : config.figures.fig4_aoi) {
    cells.emplace_back(config.train.market.n_bidders, aoi);
  }
  return RunGrid("fig4", config.train, cells, sink);
}

std::vector<ExperimentRecord> RunFig5(const ExperimentConfig& config,
                                      const RecordSink& sink) {
  std::vector<std::pair<std::size_t, double>> cells;
  for (std::size_t n : config.figures.fig5_n) {
    cells.emplace_back(n, config.train.market.worker_aoi);
  }
  return RunGrid("fig5", config.train, cells, sink);
}

std::vector<ExperimentRecord> RunFig6(const ExperimentConfig& config,
                                      const RecordSink& sink) {
  std::vector<std::pair<std::size_t, double>> cells;
  for (std::size_t n : config.figures.fig6_n) {
    for (double aoi : config.figures.fig6_aoi) cells.emplace_back(n, aoi);
  }
  return RunGrid("fig6", config.train, cells, sink);
}

}  // namespace edgeauction
