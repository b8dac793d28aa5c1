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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edgeauction/training.hpp"

namespace edgeauction {

// Environment variable naming a directory searched for `--config NAME`
// when NAME is not an existing path.
inline constexpr const char* kConfigDirEnv = "EDGEAUCTION_CONFIG_DIR";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FigureGrid {
  std::vector<double> fig4_aoi{0.3, 0.8};
  std::vector<std::size_t> fig5_n{10, 15, 20};
  std::vector<double> fig6_aoi{0.2, 0.4, 0.6, 0.8};
  std::vector<std::size_t> fig6_n{10, 15, 20};
};

struct ExperimentConfig {
  TrainConfig train;
  FigureGrid figures;
};

// Parses `key = value` lines with dotted keys (market.*, net.*, train.*,
// figures.*). Blank lines and `#` comments are ignored; later keys override
// earlier ones and anything absent keeps the value from `base`. Unknown keys
// and unparsable values raise ConfigError.
ExperimentConfig ParseConfig(std::string_view text,
                             const ExperimentConfig& base = {});

// `name` is "default" (built-in values), a file path, or a file name looked
// up in $EDGEAUCTION_CONFIG_DIR (with or without a .conf suffix).
ExperimentConfig LoadConfig(const std::string& name);

// Every key with its resolved value, in the format ParseConfig reads.
std::string FormatConfig(const ExperimentConfig& config);

}  // namespace edgeauction
