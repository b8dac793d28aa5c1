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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "edgeauction/cli.hpp"

using namespace edgeauction;
namespace fs = std::filesystem;

namespace {

int Run(std::vector<std::string> args) {
  args.insert(args.begin(), "edgeauction");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return CliMain(static_cast<int>(argv.size()), argv.data());
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t CountLines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

struct Workspace {
  fs::path dir;
  fs::path config;

  Workspace() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("edgeauction_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
    config = dir / "quick.conf";
    std::ofstream(config) << "net.groups = 2\nnet.units = 3\ntrain.iterations = 30\n"
                             "train.batch_size = 16\ntrain.eval_every = 15\n"
                             "train.eval_samples = 300\n";
  }
  ~Workspace() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("usage errors") {
  CHECK(Run({}) == kExitUsage);
  CHECK(Run({"bogus"}) == kExitUsage);
  CHECK(Run({"figures", "fig9", "--out", "x"}) == kExitUsage);
  CHECK(Run({"baseline", "vcg"}) == kExitUsage);
  CHECK(Run({"figures", "fig5", "--config", "/no/such/file", "--out", "x"}) == kExitUsage);
  CHECK(Run({"--help"}) == kExitOk);
}

TEST_CASE("figures fig5 writes three rows per mechanism and a config sidecar") {
  Workspace ws;
  const fs::path out = ws.dir / "results";
  REQUIRE(Run({"figures", "fig5", "--config", ws.config.string(), "--out", out.string()}) ==
          kExitOk);
  const std::string csv = Slurp(out / "fig5.csv");
  CHECK(CountLines(csv) == 7);
  CHECK(csv.rfind("experiment,iteration,mechanism", 0) == 0);
  std::size_t dl = 0;
  std::size_t spa = 0;
  std::istringstream lines(csv);
  for (std::string line; std::getline(lines, line);) {
    dl += line.find(",dl,") != std::string::npos;
    spa += line.find(",spa,") != std::string::npos;
  }
  CHECK(dl == 3);
  CHECK(spa == 3);
  CHECK(Slurp(out / "fig5.config").find("train.iterations = 30") != std::string::npos);
}

TEST_CASE("figures are byte-identical for a repeated seed") {
  Workspace ws;
  const auto a = ws.dir / "a";
  const auto b = ws.dir / "b";
  for (const auto& dir : {a, b}) {
    REQUIRE(Run({"figures", "fig4", "--config", ws.config.string(), "--out", dir.string(),
                 "--seed", "7"}) == kExitOk);
  }
  CHECK(Slurp(a / "fig4.csv") == Slurp(b / "fig4.csv"));
  REQUIRE(Run({"figures", "fig4", "--config", ws.config.string(), "--out",
               (ws.dir / "c").string(), "--seed", "8"}) == kExitOk);
  CHECK(Slurp(a / "fig4.csv") != Slurp(ws.dir / "c" / "fig4.csv"));
}

TEST_CASE("train then eval") {
  Workspace ws;
  const auto run = ws.dir / "run";
  REQUIRE(Run({"train", "--config", ws.config.string(), "--out", run.string()}) == kExitOk);
  CHECK(fs::exists(run / "checkpoint.json"));
  CHECK(fs::exists(run / "train.config"));
  CHECK(CountLines(Slurp(run / "history.csv")) == 1 + 2 * 3);

  const auto report = ws.dir / "eval.csv";
  CHECK(Run({"eval", "--ckpt", (run / "checkpoint.json").string(), "--out", report.string(),
             "--samples", "500", "--aoi", "0.4", "--ic-profiles", "20"}) == kExitOk);
  const std::string csv = Slurp(report);
  CHECK(CountLines(csv) == 3);
  CHECK(csv.find("custom,0,dl,3,0.4,") != std::string::npos);
}

TEST_CASE("eval with a missing checkpoint writes nothing") {
  Workspace ws;
  const auto report = ws.dir / "eval.csv";
  CHECK(Run({"eval", "--ckpt", (ws.dir / "missing.file").string(), "--out",
             report.string()}) == kExitLoad);
  CHECK_FALSE(fs::exists(report));
}

TEST_CASE("baselines") {
  Workspace ws;
  for (const std::string mech : {"spa", "fpa", "myerson"}) {
    const auto out = ws.dir / (mech + ".csv");
    REQUIRE(Run({"baseline", mech, "--samples", "1000", "--out", out.string()}) == kExitOk);
    const std::string csv = Slurp(out);
    CHECK(CountLines(csv) == 2);
    CHECK(csv.find("custom,0," + mech + ",") != std::string::npos);
  }
}

TEST_CASE("unwritable output is an IO failure") {
  Workspace ws;
  const auto blocker = ws.dir / "file";
  std::ofstream(blocker) << "x";
  CHECK(Run({"figures", "fig5", "--config", ws.config.string(), "--out",
             (blocker / "sub").string()}) == kExitIo);
}
