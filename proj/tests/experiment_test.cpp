// Copyright 2026 The npg-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "npg/config.h"
#include "npg/dynamics.h"
#include "npg/format.h"
#include "npg/experiment.h"
#include "npg/game_io.h"
#include "npg/markov.h"
#include "npg/trace.h"

namespace npg {
namespace {

namespace fs = std::filesystem;

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("npg_experiment_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig SmallStatic() {
  return ParseConfig(nlohmann::json::parse(R"({
    "version": 1,
    "game": {"kind": "random_static", "action_sizes": [2, 3, 2], "seed": 3},
    "tau_values": [0, 0.5, 40],
    "eta": [0.5, 1, "auto"],
    "max_iters": 300,
    "initial_policy": {"random": 3},
    "emit_svg": true
  })"));
}

int RunCli(const std::string& args) {
  const std::string cmd = std::string(NPG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CmdGenerateTest, WritesLoadableGame) {
  const fs::path dir = FreshDir("generate");
  const ExperimentConfig c = SmallStatic();
  const auto written = CmdGenerate(c, dir.string());
  ASSERT_EQ(written.size(), 1u);
  const GameFile back = LoadGame(written[0]);
  ASSERT_TRUE(back.static_game);
  EXPECT_EQ(back.static_game->dense_rewards(),
            ConfigGame(c).static_game->dense_rewards());
}

TEST(CmdRunTest, OneTracePerTauPlusPlots) {
  const fs::path dir = FreshDir("run");
  const auto written = CmdRun(SmallStatic(), dir.string());
  ASSERT_EQ(written.size(), 5u);
  EXPECT_TRUE(fs::exists(dir / "trace_tau_0.csv"));
  EXPECT_TRUE(fs::exists(dir / "trace_tau_0.5.csv"));
  EXPECT_TRUE(fs::exists(dir / "trace_tau_40.csv"));
  EXPECT_TRUE(fs::exists(dir / "qre_gap.svg"));
  EXPECT_TRUE(fs::exists(dir / "ne_gap.svg"));
  const Trace t = LoadTrace((dir / "trace_tau_40.csv").string());
  EXPECT_EQ(t.columns, StaticTraceColumns());
  EXPECT_EQ(t.Meta("eta"),
            FormatDouble(DefaultLearningRate(*ConfigGame(SmallStatic()).static_game, 40.0)));
  EXPECT_EQ(t.Meta("eta_source"), "auto");
  EXPECT_EQ(t.Meta("convergence_hypotheses"), "hold");
  EXPECT_EQ(t.Meta("reward_range"), "[0, 1]");
  EXPECT_EQ(t.Meta("config_hash").size(), 16u);
  EXPECT_EQ(t.Meta("initial_policy"), "random(3)");
  const Trace zero = LoadTrace((dir / "trace_tau_0.csv").string());
  EXPECT_EQ(zero.rows.size(), 301u);
  EXPECT_EQ(zero.Column("qre_gap"), zero.Column("ne_gap"));
}

TEST(CmdRunTest, ByteIdenticalAcrossRuns) {
  const fs::path a = FreshDir("det_a"), b = FreshDir("det_b");
  const auto wa = CmdRun(SmallStatic(), a.string());
  const auto wb = CmdRun(SmallStatic(), b.string());
  ASSERT_EQ(wa.size(), wb.size());
  for (std::size_t k = 0; k < wa.size(); ++k) {
    EXPECT_EQ(StripWallTime(Slurp(wa[k])), StripWallTime(Slurp(wb[k]))) << wa[k];
  }
  EXPECT_EQ(Slurp(a / "qre_gap.svg"), Slurp(b / "qre_gap.svg"));
}

TEST(CmdRunTest, AutoEtaBelowThresholdFailsBeforeWriting) {
  const fs::path dir = FreshDir("auto");
  nlohmann::json j = SmallStatic().effective;
  j["eta"] = "auto";
  EXPECT_THROW(CmdRun(ParseConfig(j), dir.string()), ParameterError);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(CmdRunTest, RejectsMarkovGame) {
  nlohmann::json j = SmallStatic().effective;
  j["game"]["kind"] = "random_markov";
  EXPECT_THROW(CmdRun(ParseConfig(j), FreshDir("kind").string()), ParameterError);
}

TEST(CmdRunMarkovTest, SingleStateMatchesStaticRun) {
  const fs::path dir = FreshDir("reduction");
  fs::create_directories(dir);
  GameSpec spec;
  spec.action_sizes = {3, 4, 2};
  spec.seed = 5;
  const GameFile stat = GenerateGame(spec);
  GameFile embedded;
  embedded.spec = spec;
  embedded.spec.kind = GameKind::kRandomMarkov;
  embedded.markov_game = EmbedStaticGame(*stat.static_game, 0.0);
  SaveGame((dir / "static.txt").string(), stat);
  SaveGame((dir / "markov.txt").string(), embedded);

  nlohmann::json j = nlohmann::json::parse(R"({
    "version": 1, "tau_values": [0.5, 2], "eta": [0.4, 0.25],
    "max_iters": 200, "stop_gap": 0})");
  j["game_file"] = (dir / "static.txt").string();
  CmdRun(ParseConfig(j), (dir / "s").string());
  j["game_file"] = (dir / "markov.txt").string();
  CmdRunMarkov(ParseConfig(j), (dir / "m").string());
  for (const char* tau : {"0.5", "2"}) {
    const Trace s = LoadTrace((dir / "s" / ("trace_tau_" + std::string(tau) + ".csv")).string());
    const Trace m = LoadTrace(
        (dir / "m" / ("markov_trace_tau_" + std::string(tau) + ".csv")).string());
    const auto a = s.Column("qre_gap");
    const auto b = m.Column("markov_qre_gap");
    ASSERT_EQ(a.size(), 201u);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-10);
    EXPECT_EQ(m.Meta("evaluation_distribution"), "uniform");
    EXPECT_EQ(m.Meta("gamma"), "0");
  }
}

TEST(CmdRunMarkovTest, DeterministicAndRejectsAutoEta) {
  nlohmann::json j = nlohmann::json::parse(R"({
    "version": 1,
    "game": {"kind": "random_markov", "action_sizes": [2, 3], "num_states": 3,
             "seed": 2},
    "tau_values": [0.5], "eta": [0.02], "max_iters": 40, "emit_svg": true})");
  const fs::path a = FreshDir("markov_a"), b = FreshDir("markov_b");
  const auto wa = CmdRunMarkov(ParseConfig(j), a.string());
  const auto wb = CmdRunMarkov(ParseConfig(j), b.string());
  ASSERT_EQ(wa.size(), 2u);
  for (std::size_t k = 0; k < wa.size(); ++k) {
    EXPECT_EQ(StripWallTime(Slurp(wa[k])), StripWallTime(Slurp(wb[k])));
  }
  j["eta"] = "auto";
  EXPECT_THROW(CmdRunMarkov(ParseConfig(j), FreshDir("markov_c").string()),
               ParameterError);
}

TEST(CmdPlotTest, RendersExistingTraces) {
  const fs::path dir = FreshDir("plot");
  const auto written = CmdRun(SmallStatic(), dir.string());
  const std::string out = (dir / "replot" / "ne.svg").string();
  CmdPlot({written[0], written[1]}, out, "ne_gap");
  const std::string svg = Slurp(out);
  EXPECT_NE(svg.find("tau = 0.5"), std::string::npos);
  EXPECT_EQ(svg, [&] {
    CmdPlot({written[0], written[1]}, out, "ne_gap");
    return Slurp(out);
  }());
  EXPECT_THROW(CmdPlot({}, out), ParameterError);
  EXPECT_THROW(CmdPlot({written[0]}, out, "nope"), ParameterError);
}

TEST(CmdVerifyTest, SmallRunPassesAndReportsCounts) {
  const fs::path dir = FreshDir("verify");
  const VerifyReport r = CmdVerify(10, dir.string());
  EXPECT_TRUE(r.ok());
  const nlohmann::json j = nlohmann::json::parse(Slurp(dir / "verify_report.json"));
  EXPECT_TRUE(j["ok"].get<bool>());
  ASSERT_EQ(j["suites"].size(), 6u);
  for (const auto& s : j["suites"]) {
    EXPECT_EQ(s["instances"].get<int>(), 10);
    EXPECT_GT(s["checks"].get<long>(), 0);
    EXPECT_EQ(s["failures"].get<long>(), 0);
  }
}

TEST(OutputDirTest, ConfigThenEnvironmentThenDefault) {
  ExperimentConfig c;
  unsetenv(kOutDirEnv);
  EXPECT_EQ(ResolveOutputDir(c), "out");
  setenv(kOutDirEnv, "/tmp/from_env", 1);
  EXPECT_EQ(ResolveOutputDir(c), "/tmp/from_env");
  c.output_dir = "mine";
  EXPECT_EQ(ResolveOutputDir(c), "mine");
  unsetenv(kOutDirEnv);
}

TEST(CliTest, ExitCodes) {
  const fs::path dir = FreshDir("cli");
  fs::create_directories(dir);
  EXPECT_EQ(RunCli("verify --seeds 3 --out " + (dir / "v").string()), 0);
  EXPECT_EQ(RunCli("frobnicate"), 1);
  EXPECT_EQ(RunCli("run --config /nonexistent.json"), 1);

  // Sub-threshold tau with "auto" eta is a configuration error.
  std::ofstream(dir / "auto.json") << R"({"version": 1,
    "game": {"kind": "random_static", "action_sizes": [2, 2], "seed": 1},
    "tau_values": [1], "eta": "auto"})";
  EXPECT_EQ(RunCli("run --config " + (dir / "auto.json").string() + " --out " +
                   (dir / "o").string()),
            1);

  // Rewards near the largest double overflow the log-policy update.
  GameFile huge;
  huge.spec.action_sizes = {2};
  huge.static_game = StaticGame::Dense({2}, {{0.0, 1e308}}, {0.0, 1e308});
  SaveGame((dir / "huge.txt").string(), huge);
  std::ofstream(dir / "huge.json")
      << R"({"version": 1, "game_file": ")" << (dir / "huge.txt").string()
      << R"(", "tau_values": [0], "eta": 10, "max_iters": 5})";
  EXPECT_EQ(RunCli("run --config " + (dir / "huge.json").string() + " --out " +
                   (dir / "h").string()),
            2);
}

}  // namespace
}  // namespace npg
