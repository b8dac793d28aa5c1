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

#include "edgeauction/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "edgeauction/baselines.hpp"
#include "edgeauction/config.hpp"
#include "edgeauction/errors.hpp"
#include "edgeauction/experiments.hpp"
#include "edgeauction/training.hpp"

namespace edgeauction {
namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config = "default";
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

void AddCommon(CLI::App* app, CommonOptions& o, bool out_required) {
  app->add_option("--config", o.config,
                  "Config file, name in $EDGEAUCTION_CONFIG_DIR, or 'default'");
  auto* out = app->add_option("--out", o.out, "Output path");
  if (out_required) out->required();
  app->add_option("--seed", o.seed, "Overrides train.seed and market.seed");
  app->add_option("--samples", o.samples, "Overrides train.eval_samples");
}

ExperimentConfig ResolveConfig(const CommonOptions& o) {
  ExperimentConfig config = LoadConfig(o.config);
  if (o.seed) {
    config.train.seed = *o.seed;
    config.train.market.seed = *o.seed;
  }
  if (o.samples) {
    if (*o.samples == 0) throw ConfigError("--samples must be >= 1");
    config.train.eval_samples = *o.samples;
  }
  return config;
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create directory " + dir.string() + ": " + ec.message());
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoFailure("failed writing " + path.string());
}

// CSV written row by row so a failed run leaves the rows produced so far.
class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoFailure("cannot open " + path.string() + " for writing");
    out_ << kCsvHeader << '\n';
    Check();
  }

  void Write(const ExperimentRecord& record) {
    out_ << FormatCsvRow(record) << '\n';
    out_.flush();
    Check();
  }

 private:
  void Check() {
    if (!out_) throw IoFailure("failed writing " + path_.string());
  }

  fs::path path_;
  std::ofstream out_;
};

void EmitRecords(const std::string& out, const std::vector<ExperimentRecord>& records) {
  if (out.empty() || out == "-") {
    std::cout << FormatCsv(records);
    return;
  }
  const fs::path path(out);
  if (path.has_parent_path()) EnsureDirectory(path.parent_path());
  WriteText(path, FormatCsv(records));
}

ExperimentRecord Row(std::string_view mechanism, const AoIMarketParams& market,
                     const RevenueEstimate& revenue, std::uint64_t seed,
                     std::size_t iteration = 0) {
  ExperimentRecord r;
  r.experiment = "custom";
  r.iteration = iteration;
  r.mechanism = std::string(mechanism);
  r.n_bidders = market.n_bidders;
  r.worker_aoi = market.worker_aoi;
  r.revenue_mean = revenue.mean;
  r.revenue_stderr = revenue.stderr_;
  r.samples = revenue.samples;
  r.seed = seed;
  return r;
}

int RunTrain(const CommonOptions& o) {
  const ExperimentConfig config = ResolveConfig(o);
  const fs::path dir(o.out);
  EnsureDirectory(dir);
  WriteText(dir / "train.config", FormatConfig(config));
  CsvWriter history(dir / "history.csv");
  auto write_history = [&](const TrainHistory& h) {
    for (const HistoryRecord& rec : h.records) {
      history.Write(Row("dl", config.train.market, rec.eval.dl, config.train.seed,
                        rec.iteration));
      history.Write(Row("spa", config.train.market, rec.eval.spa, config.train.seed,
                        rec.iteration));
    }
  };
  try {
    const TrainResult result = Train(config.train);
    write_history(result.history);
    SaveCheckpoint(result.params, config.train, dir / "checkpoint.json");
    const auto& last = result.history.records.back().eval;
    std::cout << fmt::format("dl revenue {:.6f} +- {:.6f}, spa revenue {:.6f} +- {:.6f}\n",
                             last.dl.mean, last.dl.stderr_, last.spa.mean,
                             last.spa.stderr_);
  } catch (const TrainingFailure& failure) {
    write_history(failure.history());
    SaveCheckpoint(failure.last_good(), config.train, dir / "checkpoint.json");
    throw;
  }
  return kExitOk;
}

struct EvalOptions {
  std::string ckpt;
  std::optional<double> aoi;
  std::size_t ic_profiles = 1000;
  std::size_t ic_grid = 200;
};

int RunEval(const CommonOptions& o, const EvalOptions& e, bool config_given) {
  const Checkpoint checkpoint = LoadCheckpoint(e.ckpt);
  AoIMarketParams market = checkpoint.config.market;
  std::size_t samples = checkpoint.config.eval_samples;
  if (config_given) {
    const ExperimentConfig config = ResolveConfig(o);
    market = config.train.market;
    samples = config.train.eval_samples;
  }
  if (o.seed) market.seed = *o.seed;
  if (o.samples) samples = *o.samples;
  if (e.aoi) market.worker_aoi = *e.aoi;
  if (market.n_bidders != checkpoint.params.n_bidders()) {
    throw ConfigError(fmt::format("checkpoint was trained for {} bidders, market has {}",
                                  checkpoint.params.n_bidders(), market.n_bidders));
  }
  try {
    market.Validate();
  } catch (const InvalidInput& err) {
    throw ConfigError(err.what());
  }

  Rng rng(market.seed);
  const auto profiles = SampleProfiles(market, samples, rng);
  const RevenueComparison revenue = CompareWithSpa(checkpoint.params, profiles);

  std::size_t audited = 0;
  std::size_t ir_ok = 0;
  RunningStats regret;
  RunningStats value;
  const std::size_t ic_count = std::min(e.ic_profiles, profiles.size());
  for (std::size_t p = 0; p < ic_count; ++p) {
    const BidProfile& profile = profiles[p];
    ++audited;
    if (CheckIr(RunAuction(checkpoint.params, profile, HardMode{}), profile)) ++ir_ok;
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const auto grid = DeviationGrid(profile.bids[i], e.ic_grid);
      regret.Add(IcRegret(checkpoint.params, profile, i, grid));
      value.Add(profile.bids[i]);
    }
  }

  std::cout << fmt::format("dl_revenue {:.6f} +- {:.6f}\n", revenue.dl.mean,
                           revenue.dl.stderr_)
            << fmt::format("spa_revenue {:.6f} +- {:.6f}\n", revenue.spa.mean,
                           revenue.spa.stderr_)
            << fmt::format("ir_satisfied {}/{}\n", ir_ok, audited)
            << fmt::format("ic_regret_mean {:.3e} (mean valuation {:.6f})\n",
                           regret.mean(), value.mean());
  if (!o.out.empty()) {
    EmitRecords(o.out, {Row("dl", market, revenue.dl, market.seed),
                        Row("spa", market, revenue.spa, market.seed)});
  }
  return kExitOk;
}

int RunBaseline(const CommonOptions& o, const std::string& mechanism, double reserve) {
  const ExperimentConfig config = ResolveConfig(o);
  const AoIMarketParams& market = config.train.market;
  const std::size_t samples = config.train.eval_samples;
  Rng rng(market.seed);
  RevenueEstimate revenue;
  if (mechanism == "myerson") {
    revenue = MyersonUniformRevenue(market.n_bidders, samples, rng);
  } else {
    RunningStats stats;
    for (std::size_t s = 0; s < samples; ++s) {
      const BidProfile profile = SampleProfile(market, rng);
      stats.Add(mechanism == "spa" ? Spa(profile.bids, SpaConfig{reserve}).payment
                                   : Fpa(profile.bids).payment);
    }
    revenue = stats.Estimate();
  }
  EmitRecords(o.out, {Row(mechanism, market, revenue, market.seed)});
  return kExitOk;
}

int RunFigures(const CommonOptions& o, const std::string& which) {
  const ExperimentConfig config = ResolveConfig(o);
  const fs::path dir(o.out);
  EnsureDirectory(dir);
  std::vector<std::string> figures;
  if (which == "all") {
    figures = {"fig3", "fig4", "fig5", "fig6"};
  } else {
    figures = {which};
  }
  for (const std::string& fig : figures) {
    WriteText(dir / (fig + ".config"), FormatConfig(config));
    CsvWriter csv(dir / (fig + ".csv"));
    const RecordSink sink = [&csv](const ExperimentRecord& r) { csv.Write(r); };
    if (fig == "fig3") RunFig3(config, sink);
    if (fig == "fig4") RunFig4(config, sink);
    if (fig == "fig5") RunFig5(config, sink);
    if (fig == "fig6") RunFig6(config, sink);
  }
  return kExitOk;
}

}  // namespace

int CliMain(int argc, const char* const* argv) {
  CLI::App app{"Deep-learning optimal auction for pricing fresh data"};
  app.require_subcommand(1);

  CommonOptions train_opts;
  auto* train = app.add_subcommand("train", "Train a mechanism; writes checkpoint and history");
  AddCommon(train, train_opts, true);

  CommonOptions eval_opts;
  EvalOptions eval_extra;
  auto* eval = app.add_subcommand("eval", "Revenue, IR and IC report for a checkpoint");
  AddCommon(eval, eval_opts, false);
  eval->add_option("--ckpt", eval_extra.ckpt, "Checkpoint file")->required();
  eval->add_option("--aoi", eval_extra.aoi, "Overrides market.worker_aoi");
  eval->add_option("--ic-profiles", eval_extra.ic_profiles, "Profiles in the IC/IR audit");
  eval->add_option("--ic-grid", eval_extra.ic_grid, "Deviation grid points");

  CommonOptions base_opts;
  std::string mechanism;
  double reserve = 0.0;
  auto* baseline = app.add_subcommand("baseline", "Monte-Carlo revenue of a classical auction");
  AddCommon(baseline, base_opts, false);
  baseline->add_option("mechanism", mechanism, "spa | fpa | myerson")
      ->required()
      ->check(CLI::IsMember({"spa", "fpa", "myerson"}));
  baseline->add_option("--reserve", reserve, "SPA reserve price")
      ->check(CLI::NonNegativeNumber);

  CommonOptions fig_opts;
  std::string figure;
  auto* figures = app.add_subcommand("figures", "Reproduce evaluation figures as CSV");
  AddCommon(figures, fig_opts, true);
  figures->add_option("figure", figure, "fig3 | fig4 | fig5 | fig6 | all")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "edgeauction: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (train->parsed()) return RunTrain(train_opts);
    if (eval->parsed()) {
      return RunEval(eval_opts, eval_extra, eval->count("--config") > 0);
    }
    if (baseline->parsed()) return RunBaseline(base_opts, mechanism, reserve);
    if (figures->parsed()) return RunFigures(fig_opts, figure);
  } catch (const ConfigError& e) {
    std::cerr << "edgeauction: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LoadFailure& e) {
    std::cerr << "edgeauction: " << e.what() << '\n';
    return kExitLoad;
  } catch (const IoFailure& e) {
    std::cerr << "edgeauction: " << e.what() << '\n';
    return kExitIo;
  } catch (const TrainingFailure& e) {
    std::cerr << "edgeauction: training failed: " << e.what() << '\n';
    return kExitTraining;
  } catch (const InvalidInput& e) {
    std::cerr << "edgeauction: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace edgeauction
