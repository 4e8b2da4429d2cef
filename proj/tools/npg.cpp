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

// npg: generate games, run NPG sweeps, verify properties, plot traces.
//
//   npg generate   --config c.json [--out dir] [--seed s]
//   npg run        --config c.json [--out dir] [--seed s] [--tau 0,0.1]
//                  [--eta auto|x] [--iters n] [--svg]
//   npg run-markov (same flags as run)
//   npg verify     [--seeds n] [--out dir]
//   npg plot       trace.csv... --out plot.svg [--column qre_gap]
//
// Exit codes: 0 success, 1 usage/config/IO, 2 numeric failure,
// 3 verification failure. $NPG_OUT_DIR sets the default output directory.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "npg/config.h"
#include "npg/experiment.h"

namespace {

struct ConfigFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<double> tau;
  std::string eta;
  std::optional<int> iters;
  bool svg = false;
};

void AddConfigFlags(CLI::App* cmd, ConfigFlags* f, bool sweep) {
  cmd->add_option("--config", f->config, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", f->out, "output directory");
  cmd->add_option("--seed", f->seed, "override the game seed");
  if (!sweep) return;
  cmd->add_option("--tau", f->tau, "comma-separated tau values")
      ->delimiter(',');
  cmd->add_option("--eta", f->eta, "learning rate, a number or 'auto'");
  cmd->add_option("--iters", f->iters, "maximum iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--svg", f->svg, "also write SVG plots");
}

npg::ExperimentConfig LoadConfig(const ConfigFlags& f) {
  npg::ConfigOverrides o;
  if (!f.out.empty()) o.output_dir = f.out;
  o.seed = f.seed;
  if (!f.tau.empty()) o.tau_values = f.tau;
  if (!f.eta.empty()) o.eta = f.eta;
  o.max_iters = f.iters;
  o.emit_svg = f.svg;
  return npg::ParseConfig(npg::ApplyOverrides(npg::ReadJsonFile(f.config), o));
}

void PrintWritten(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) std::cout << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-regularized independent NPG in multi-agent games"};
  app.require_subcommand(1);

  ConfigFlags gen_flags, run_flags, markov_flags;
  CLI::App* generate = app.add_subcommand("generate", "write a game file");
  AddConfigFlags(generate, &gen_flags, false);
  CLI::App* run = app.add_subcommand("run", "static-game tau sweep");
  AddConfigFlags(run, &run_flags, true);
  CLI::App* run_markov =
      app.add_subcommand("run-markov", "Markov-game tau sweep");
  AddConfigFlags(run_markov, &markov_flags, true);

  int seeds = npg::kDefaultVerifySeeds;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--seeds", seeds, "instances per suite")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_out, "directory for verify_report.json");

  std::vector<std::string> plot_inputs;
  std::string plot_out, plot_column;
  CLI::App* plot = app.add_subcommand("plot", "render traces as SVG");
  plot->add_option("traces", plot_inputs, "trace CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "output SVG path")->required();
  plot->add_option("--column", plot_column, "column to plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return npg::kExitUsage;
  }

  try {
    if (*generate) {
      const npg::ExperimentConfig c = LoadConfig(gen_flags);
      PrintWritten(npg::CmdGenerate(c, npg::ResolveOutputDir(c)));
    } else if (*run) {
      const npg::ExperimentConfig c = LoadConfig(run_flags);
      PrintWritten(npg::CmdRun(c, npg::ResolveOutputDir(c)));
    } else if (*run_markov) {
      const npg::ExperimentConfig c = LoadConfig(markov_flags);
      PrintWritten(npg::CmdRunMarkov(c, npg::ResolveOutputDir(c)));
    } else if (*verify) {
      npg::ExperimentConfig defaults;
      if (!verify_out.empty()) defaults.output_dir = verify_out;
      std::vector<std::string> written;
      const npg::VerifyReport report = npg::CmdVerify(
          seeds, npg::ResolveOutputDir(defaults), &written);
      for (const npg::SuiteResult& s : report.suites) {
        std::cout << (s.ok() ? "ok   " : "FAIL ") << s.name << ": "
                  << s.instances << " instances, " << s.checks << " checks, "
                  << s.failures << " failures\n";
        for (const std::string& m : s.messages) std::cout << "     " << m << '\n';
      }
      PrintWritten(written);
      if (!report.ok()) return npg::kExitVerifyFailed;
    } else if (*plot) {
      PrintWritten(npg::CmdPlot(plot_inputs, plot_out, plot_column));
    }
  } catch (const std::exception& e) {
    std::cerr << "npg: " << e.what() << '\n';
    return npg::ExitCodeFor(e);
  }
  return npg::kExitOk;
}
