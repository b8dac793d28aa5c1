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

#include "edgeauction/training.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "edgeauction/baselines.hpp"
#include "edgeauction/errors.hpp"

namespace edgeauction {
namespace {

// Stream identifiers for Rng::Derive.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBatchStream = 2;
constexpr std::uint64_t kEvalStream = 3;

// Profiles drawn to place the initial reserve.
constexpr std::size_t kInitProfiles = 1024;

// Soft-mode expected payment of one profile. When `gradient` is non-null,
// adds scale * d(payment)/d(alpha, beta) into it.
double ProfileRevenue(const MaterializedNet& net, const BidProfile& profile,
                      double temperature, ParamGradient* gradient,
                      double scale) {
  const MonotoneNetParams& params = net.params();
  const std::size_t n = profile.size();
  if (n != params.n_bidders()) {
    throw InvalidInput("profile size does not match the mechanism");
  }
  std::vector<double> z(n);
  std::vector<ActiveUnit> forward(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = net.Transform(i, profile.bids[i], forward[i]);
  }

  // Highest and runner-up transformed bids (lowest index on ties). The
  // strongest rival of i is `first` unless i is `first` itself.
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (z[i] > z[first]) first = i;
  }
  std::size_t second = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != first && (second == n || z[i] > z[second])) second = i;
  }

  std::vector<std::size_t> rival(n);
  std::vector<double> price(n);
  std::vector<ActiveUnit> inverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    rival[i] = i == first ? second : first;
    const double threshold = rival[i] < n ? std::max(0.0, z[rival[i]]) : 0.0;
    price[i] = net.InverseTransform(i, threshold, inverse[i]);
  }

  const std::vector<double> probs = AllocateSoft(z, temperature);
  double revenue = 0.0;
  for (std::size_t i = 0; i < n; ++i) revenue += probs[i] * price[i];
  if (gradient == nullptr) return revenue;

  // d revenue / d z through the softmax: kappa * p_k * (price_k - revenue).
  std::vector<double> dz(n);
  for (std::size_t k = 0; k < n; ++k) {
    dz[k] = temperature * probs[k] * (price[k] - revenue);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t t = params.TransformIndex(i);
    const std::size_t o = params.Offset(t, inverse[i].group, inverse[i].unit);
    const double inv_slope = net.inverse_slope(o);
    // price_i = exp(-alpha) * (threshold - beta)
    gradient->alpha[o] -= scale * probs[i] * price[i];
    gradient->beta[o] -= scale * probs[i] * inv_slope;
    if (rival[i] < n && z[rival[i]] > 0.0) {
      dz[rival[i]] += probs[i] * inv_slope;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t t = params.TransformIndex(k);
    const std::size_t o = params.Offset(t, forward[k].group, forward[k].unit);
    gradient->alpha[o] += scale * dz[k] * net.slope(o) * profile.bids[k];
    gradient->beta[o] += scale * dz[k];
  }
  return revenue;
}

// Shifts each transform's offsets so that phi crosses zero at a low
// quantile of the positive bids the market generates. With the crossing
// below the support (phi(0) > 0) the hard-mode revenue is flat in every
// offset and SGD has nothing to follow.
void ShiftToReserveQuantile(MonotoneNetParams& params, const TrainConfig& config,
                            Rng& rng) {
  std::vector<std::vector<double>> positive(params.n_transforms());
  for (std::size_t s = 0; s < kInitProfiles; ++s) {
    const BidProfile profile = SampleProfile(config.market, rng);
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (profile.bids[i] > 0.0) {
        positive[params.TransformIndex(i)].push_back(profile.bids[i]);
      }
    }
  }
  auto beta = params.beta();
  for (std::size_t t = 0; t < params.n_transforms(); ++t) {
    double anchor = 0.0;
    auto& bids = positive[t];
    if (!bids.empty()) {
      const auto rank = static_cast<std::size_t>(
          config.init_reserve_quantile * static_cast<double>(bids.size() - 1));
      std::nth_element(bids.begin(), bids.begin() + rank, bids.end());
      anchor = bids[rank];
    }
    const std::size_t bidder = params.shared_weights() ? 0 : t;
    const double shift = Transform(params, bidder, anchor);
    for (std::size_t g = 0; g < params.groups(); ++g) {
      for (std::size_t k = 0; k < params.units(); ++k) {
        beta[params.Offset(t, g, k)] -= shift;
      }
    }
  }
}

bool AllFinite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

void TrainConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidInput(std::string("train: ") + what);
  };
  require(batch_size >= 1, "batch_size must be >= 1");
  require(iterations >= 1, "iterations must be >= 1");
  require(eval_every >= 1, "eval_every must be >= 1");
  require(eval_samples >= 1, "eval_samples must be >= 1");
  require(learning_rate >= 0.0 && std::isfinite(learning_rate),
          "learning_rate must be finite and >= 0");
  require(temperature > 0.0 && std::isfinite(temperature),
          "temperature must be finite and > 0");
  require(net.groups >= 1 && net.units >= 1, "net groups and units must be >= 1");
  require(init_reserve_quantile >= 0.0 && init_reserve_quantile < 1.0,
          "init_reserve_quantile must be in [0, 1)");
  market.Validate();
}

double ExpectedSoftPayment(const MonotoneNetParams& params,
                           const BidProfile& profile, double temperature) {
  return ProfileRevenue(MaterializedNet(params), profile, temperature, nullptr,
                        0.0);
}

double RevenueLoss(const MonotoneNetParams& params,
                   std::span<const BidProfile> batch, double temperature) {
  if (batch.empty()) throw InvalidInput("loss needs a nonempty batch");
  const MaterializedNet net(params);
  double total = 0.0;
  for (const BidProfile& profile : batch) {
    total += ProfileRevenue(net, profile, temperature, nullptr, 0.0);
  }
  return -total / static_cast<double>(batch.size());
}

double LossAndGradient(const MonotoneNetParams& params,
                       std::span<const BidProfile> batch, double temperature,
                       ParamGradient& gradient) {
  if (batch.empty()) throw InvalidInput("gradient needs a nonempty batch");
  gradient.alpha.assign(params.alpha().size(), 0.0);
  gradient.beta.assign(params.beta().size(), 0.0);
  const double scale = -1.0 / static_cast<double>(batch.size());
  const MaterializedNet net(params);
  double total = 0.0;
  for (const BidProfile& profile : batch) {
    total += ProfileRevenue(net, profile, temperature, &gradient, scale);
  }
  return -total / static_cast<double>(batch.size());
}

ParamGradient Gradient(const MonotoneNetParams& params,
                       std::span<const BidProfile> batch, double temperature) {
  ParamGradient gradient;
  LossAndGradient(params, batch, temperature, gradient);
  return gradient;
}

RevenueComparison CompareWithSpa(const MonotoneNetParams& params,
                                 std::span<const BidProfile> profiles) {
  RunningStats dl;
  RunningStats spa;
  RunningStats gain;
  const MaterializedNet net(params);
  for (const BidProfile& profile : profiles) {
    const double learned = RunAuction(net, profile, HardMode{}).payment;
    const double second_price = Spa(profile.bids).payment;
    dl.Add(learned);
    spa.Add(second_price);
    gain.Add(learned - second_price);
  }
  return {dl.Estimate(), spa.Estimate(), gain.Estimate()};
}

MonotoneNetParams InitialParams(const TrainConfig& config) {
  if (config.init == InitKind::kIdentity) {
    return MonotoneNetParams::Identity(config.market.n_bidders, config.net);
  }
  Rng rng = Rng::Derive(config.seed, kInitStream);
  MonotoneNetParams params =
      MonotoneNetParams::RandomInit(config.market.n_bidders, config.net, rng);
  ShiftToReserveQuantile(params, config, rng);
  return params;
}

TrainResult Train(const TrainConfig& config) {
  config.Validate();
  TrainResult out;
  out.params = InitialParams(config);
  Rng batch_rng = Rng::Derive(config.seed, kBatchStream);
  Rng eval_rng = Rng::Derive(config.seed, kEvalStream);

  auto record = [&](std::size_t iteration, double train_revenue) {
    const auto profiles =
        SampleProfiles(config.market, config.eval_samples, eval_rng);
    out.history.records.push_back(
        {iteration, train_revenue, CompareWithSpa(out.params, profiles)});
  };

  {
    const auto batch = SampleProfiles(config.market, config.batch_size, batch_rng);
    record(0, -RevenueLoss(out.params, batch, config.temperature));
  }

  // Parameters of the latest iteration whose loss was finite.
  MonotoneNetParams last_good = out.params;
  ParamGradient gradient;
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    const auto batch = SampleProfiles(config.market, config.batch_size, batch_rng);
    const double loss =
        LossAndGradient(out.params, batch, config.temperature, gradient);
    if (!std::isfinite(loss) || !AllFinite(gradient.alpha) ||
        !AllFinite(gradient.beta)) {
      throw TrainingFailure("non-finite loss at iteration " + std::to_string(it),
                            it, std::move(last_good), std::move(out.history));
    }
    last_good = out.params;
    MonotoneNetParams next = out.params;
    auto alpha = next.alpha();
    auto beta = next.beta();
    for (std::size_t p = 0; p < alpha.size(); ++p) {
      alpha[p] -= config.learning_rate * gradient.alpha[p];
      beta[p] -= config.learning_rate * gradient.beta[p];
    }
    if (!AllFinite(next.alpha()) || !AllFinite(next.beta())) {
      throw TrainingFailure("parameters diverged at iteration " + std::to_string(it),
                            it, std::move(last_good), std::move(out.history));
    }
    out.params = std::move(next);
    if (it % config.eval_every == 0 || it == config.iterations) {
      record(it, -loss);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

using nlohmann::json;

constexpr const char* kCheckpointFormat = "edgeauction-checkpoint";

json MarketToJson(const AoIMarketParams& m) {
  return {{"n_bidders", m.n_bidders}, {"worker_aoi", m.worker_aoi},
          {"pref_lo", m.pref.lo},     {"pref_hi", m.pref.hi},
          {"req_lo", m.req.lo},       {"req_hi", m.req.hi},
          {"value_floor", m.value_floor}, {"seed", m.seed}};
}

AoIMarketParams MarketFromJson(const json& j) {
  AoIMarketParams m;
  m.n_bidders = j.at("n_bidders").get<std::size_t>();
  m.worker_aoi = j.at("worker_aoi").get<double>();
  m.pref = {j.at("pref_lo").get<double>(), j.at("pref_hi").get<double>()};
  m.req = {j.at("req_lo").get<double>(), j.at("req_hi").get<double>()};
  m.value_floor = j.at("value_floor").get<double>();
  m.seed = j.at("seed").get<std::uint64_t>();
  return m;
}

json Blocks(const MonotoneNetParams& params, std::span<const double> flat) {
  json transforms = json::array();
  for (std::size_t t = 0; t < params.n_transforms(); ++t) {
    json groups = json::array();
    for (std::size_t g = 0; g < params.groups(); ++g) {
      json units = json::array();
      for (std::size_t k = 0; k < params.units(); ++k) {
        units.push_back(flat[params.Offset(t, g, k)]);
      }
      groups.push_back(std::move(units));
    }
    transforms.push_back(std::move(groups));
  }
  return transforms;
}

void ReadBlocks(const json& j, const MonotoneNetParams& params,
                std::span<double> flat, const char* name) {
  auto mismatch = [name]() {
    return LoadFailure(std::string("checkpoint: shape mismatch in ") + name);
  };
  if (!j.is_array() || j.size() != params.n_transforms()) throw mismatch();
  for (std::size_t t = 0; t < params.n_transforms(); ++t) {
    const json& groups = j[t];
    if (!groups.is_array() || groups.size() != params.groups()) throw mismatch();
    for (std::size_t g = 0; g < params.groups(); ++g) {
      const json& units = groups[g];
      if (!units.is_array() || units.size() != params.units()) throw mismatch();
      for (std::size_t k = 0; k < params.units(); ++k) {
        flat[params.Offset(t, g, k)] = units[k].get<double>();
      }
    }
  }
}

}  // namespace

void SaveCheckpoint(const MonotoneNetParams& params, const TrainConfig& config,
                    const std::filesystem::path& path) {
  json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["rng"] = std::string(Rng::kAlgorithm);
  j["shape"] = {{"n_bidders", params.n_bidders()},
                {"groups", params.groups()},
                {"units", params.units()},
                {"shared_weights", params.shared_weights()}};
  j["config"] = {
      {"batch_size", config.batch_size},
      {"iterations", config.iterations},
      {"learning_rate", config.learning_rate},
      {"temperature", config.temperature},
      {"seed", config.seed},
      {"init", config.init == InitKind::kIdentity ? "identity" : "random"},
      {"init_reserve_quantile", config.init_reserve_quantile},
      {"eval_every", config.eval_every},
      {"eval_samples", config.eval_samples},
      {"market", MarketToJson(config.market)}};
  j["alpha"] = Blocks(params, params.alpha());
  j["beta"] = Blocks(params, params.beta());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw IoFailure("failed writing " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path,
                          const std::optional<NetShape>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadFailure("cannot open checkpoint " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  try {
    const json j = json::parse(buffer.str());
    if (j.at("format").get<std::string>() != kCheckpointFormat) {
      throw LoadFailure("checkpoint: unrecognised format tag");
    }
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw LoadFailure("checkpoint: version " + std::to_string(version) +
                        " is not supported (expected " +
                        std::to_string(kCheckpointVersion) + ")");
    }
    const json& shape_json = j.at("shape");
    NetShape shape;
    shape.groups = shape_json.at("groups").get<std::size_t>();
    shape.units = shape_json.at("units").get<std::size_t>();
    shape.shared_weights = shape_json.at("shared_weights").get<bool>();
    const auto n_bidders = shape_json.at("n_bidders").get<std::size_t>();
    if (expected && !(*expected == shape)) {
      throw LoadFailure(
          "checkpoint: shape mismatch (file has G=" + std::to_string(shape.groups) +
          " K=" + std::to_string(shape.units) + ", expected G=" +
          std::to_string(expected->groups) + " K=" + std::to_string(expected->units) +
          ")");
    }

    Checkpoint checkpoint;
    const json& c = j.at("config");
    TrainConfig& config = checkpoint.config;
    config.batch_size = c.at("batch_size").get<std::size_t>();
    config.iterations = c.at("iterations").get<std::size_t>();
    config.learning_rate = c.at("learning_rate").get<double>();
    config.temperature = c.at("temperature").get<double>();
    config.seed = c.at("seed").get<std::uint64_t>();
    config.init = c.at("init").get<std::string>() == "identity" ? InitKind::kIdentity
                                                                : InitKind::kRandom;
    config.init_reserve_quantile = c.at("init_reserve_quantile").get<double>();
    config.eval_every = c.at("eval_every").get<std::size_t>();
    config.eval_samples = c.at("eval_samples").get<std::size_t>();
    config.market = MarketFromJson(c.at("market"));
    config.net = shape;

    MonotoneNetParams params(n_bidders, shape);
    ReadBlocks(j.at("alpha"), params, params.alpha(), "alpha");
    ReadBlocks(j.at("beta"), params, params.beta(), "beta");
    checkpoint.params = std::move(params);
    return checkpoint;
  } catch (const json::exception& e) {
    throw LoadFailure("checkpoint " + path.string() + " is malformed: " + e.what());
  } catch (const InvalidInput& e) {
    throw LoadFailure("checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace edgeauction
