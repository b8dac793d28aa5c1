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

#include "edgeauction/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace edgeauction {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("config: cannot parse '{}' for key {}", text, key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(fmt::format("config: expected true/false for key {}", key));
}

template <typename T>
std::vector<T> ParseList(std::string_view key, std::string_view text) {
  std::vector<T> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    values.push_back(ParseNumber<T>(key, Trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (values.empty()) throw ConfigError(fmt::format("config: empty list for {}", key));
  return values;
}

InitKind ParseInit(std::string_view key, std::string_view text) {
  if (text == "random") return InitKind::kRandom;
  if (text == "identity") return InitKind::kIdentity;
  throw ConfigError(fmt::format("config: {} must be random or identity", key));
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key,
                                  std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const std::map<std::string, Setter, std::less<>> setters = [] {
    std::map<std::string, Setter, std::less<>> m;
#define EA_NUMBER(KEY, FIELD, TYPE)                                         \
  m[KEY] = [](ExperimentConfig& c, std::string_view k, std::string_view v) { \
    c.FIELD = ParseNumber<TYPE>(k, v);                                      \
  }
    EA_NUMBER("market.n_bidders", train.market.n_bidders, std::size_t);
    EA_NUMBER("market.worker_aoi", train.market.worker_aoi, double);
    EA_NUMBER("market.pref_lo", train.market.pref.lo, double);
    EA_NUMBER("market.pref_hi", train.market.pref.hi, double);
    EA_NUMBER("market.req_lo", train.market.req.lo, double);
    EA_NUMBER("market.req_hi", train.market.req.hi, double);
    EA_NUMBER("market.value_floor", train.market.value_floor, double);
    EA_NUMBER("market.seed", train.market.seed, std::uint64_t);
    EA_NUMBER("net.groups", train.net.groups, std::size_t);
    EA_NUMBER("net.units", train.net.units, std::size_t);
    EA_NUMBER("net.init_reserve_quantile", train.init_reserve_quantile, double);
    EA_NUMBER("train.batch_size", train.batch_size, std::size_t);
    EA_NUMBER("train.iterations", train.iterations, std::size_t);
    EA_NUMBER("train.learning_rate", train.learning_rate, double);
    EA_NUMBER("train.temperature", train.temperature, double);
    EA_NUMBER("train.seed", train.seed, std::uint64_t);
    EA_NUMBER("train.eval_every", train.eval_every, std::size_t);
    EA_NUMBER("train.eval_samples", train.eval_samples, std::size_t);
#undef EA_NUMBER
    m["net.shared_weights"] = [](ExperimentConfig& c, std::string_view k,
                                 std::string_view v) {
      c.train.net.shared_weights = ParseBool(k, v);
    };
    m["net.init"] = [](ExperimentConfig& c, std::string_view k, std::string_view v) {
      c.train.init = ParseInit(k, v);
    };
    m["figures.fig4_aoi"] = [](ExperimentConfig& c, std::string_view k,
                               std::string_view v) {
      c.figures.fig4_aoi = ParseList<double>(k, v);
    };
    m["figures.fig5_n"] = [](ExperimentConfig& c, std::string_view k,
                             std::string_view v) {
      c.figures.fig5_n = ParseList<std::size_t>(k, v);
    };
    m["figures.fig6_aoi"] = [](ExperimentConfig& c, std::string_view k,
                               std::string_view v) {
      c.figures.fig6_aoi = ParseList<double>(k, v);
    };
    m["figures.fig6_n"] = [](ExperimentConfig& c, std::string_view k,
                             std::string_view v) {
      c.figures.fig6_n = ParseList<std::size_t>(k, v);
    };
    return m;
  }();
  return setters;
}

template <typename T>
std::string JoinList(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt::format("{}", values[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig ParseConfig(std::string_view text, const ExperimentConfig& base) {
  ExperimentConfig config = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    const auto& setters = Setters();
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
    it->second(config, key, value);
  }
  try {
    config.train.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& name) {
  if (name == "default") return ParseConfig("");
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates{fs::path(name)};
  if (const char* dir = std::getenv(kConfigDirEnv); dir != nullptr && *dir != '\0') {
    candidates.push_back(fs::path(dir) / name);
    candidates.push_back(fs::path(dir) / (name + ".conf"));
  }
  for (const fs::path& candidate : candidates) {
    std::error_code ec;
    if (!fs::is_regular_file(candidate, ec)) continue;
    std::ifstream in(candidate, std::ios::binary);
    if (!in) break;
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ParseConfig(buffer.str());
  }
  throw ConfigError("config: cannot read '" + name + "'");
}

std::string FormatConfig(const ExperimentConfig& config) {
  const TrainConfig& t = config.train;
  const AoIMarketParams& m = t.market;
  std::string out;
  auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  line("market.n_bidders", m.n_bidders);
  line("market.worker_aoi", m.worker_aoi);
  line("market.pref_lo", m.pref.lo);
  line("market.pref_hi", m.pref.hi);
  line("market.req_lo", m.req.lo);
  line("market.req_hi", m.req.hi);
  line("market.value_floor", m.value_floor);
  line("market.seed", m.seed);
  line("net.groups", t.net.groups);
  line("net.units", t.net.units);
  line("net.shared_weights", t.net.shared_weights ? "true" : "false");
  line("net.init", t.init == InitKind::kIdentity ? "identity" : "random");
  line("net.init_reserve_quantile", t.init_reserve_quantile);
  line("train.batch_size", t.batch_size);
  line("train.iterations", t.iterations);
  line("train.learning_rate", t.learning_rate);
  line("train.temperature", t.temperature);
  line("train.seed", t.seed);
  line("train.eval_every", t.eval_every);
  line("train.eval_samples", t.eval_samples);
  line("figures.fig4_aoi", JoinList(config.figures.fig4_aoi));
  line("figures.fig5_n", JoinList(config.figures.fig5_n));
  line("figures.fig6_aoi", JoinList(config.figures.fig6_aoi));
  line("figures.fig6_n", JoinList(config.figures.fig6_n));
  return out;
}

}  // namespace edgeauction
