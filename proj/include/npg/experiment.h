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

#ifndef NPG_EXPERIMENT_H_
#define NPG_EXPERIMENT_H_

// The commands behind the `npg` tool. Each takes a parsed config and an
// output directory and returns the paths it wrote; exceptions carry the
// error class that maps to the process exit code (see ExitCodeFor).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "npg/config.h"
#include "npg/dynamics.h"
#include "npg/errors.h"
#include "npg/format.h"
#include "npg/game_io.h"
#include "npg/markov.h"
#include "npg/svg.h"
#include "npg/trace.h"
#include "npg/verify.h"

namespace npg {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumeric = 2,
  kExitVerifyFailed = 3,
};

inline constexpr char kOutDirEnv[] = "NPG_OUT_DIR";
inline constexpr int kDefaultMarkovMaxIters = 2000;
inline constexpr int kDefaultVerifySeeds = 200;

// Config value, then $NPG_OUT_DIR, then "out".
inline std::string ResolveOutputDir(const ExperimentConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "out";
}

inline std::string TauLabel(double tau) { return FormatDouble(tau); }

inline GameFile ConfigGame(const ExperimentConfig& config) {
  return config.game ? GenerateGame(*config.game) : LoadGame(config.game_file);
}

namespace experiment_internal {

inline std::string JoinSizes(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    s += (k ? "," : "") + std::to_string(sizes[k]);
  }
  return s;
}

inline std::string RangeText(const RewardRange& r) {
  return "[" + FormatDouble(r.lo) + ", " + FormatDouble(r.hi) + "]";
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::filesystem::path PrepareDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  return dir;
}

inline TraceMetadata CommonMetadata(const ExperimentConfig& config,
                                    const GameFile& file,
                                    const std::string& command) {
  const GameSpec& spec = file.spec;
  TraceMetadata m = {
      {"command", command},
      {"config_version", std::to_string(kConfigVersion)},
      {"config_hash", HexU64(config.Hash())},
      {"game_kind", GameKindName(spec.kind)},
      {"game_seed", std::to_string(spec.seed)},
      {"action_sizes", JoinSizes(spec.action_sizes)},
  };
  if (spec.kind == GameKind::kPolymatrixZeroSum) {
    std::string edges;
    for (auto [i, j] : spec.EffectiveEdges()) {
      edges += (edges.empty() ? "" : " ") + std::to_string(i) + "-" +
               std::to_string(j);
    }
    m.emplace_back("edges", edges);
    m.emplace_back("edge_half_width", FormatDouble(spec.edge_half_width));
  }
  m.emplace_back("initial_policy", config.initial_policy.Describe());
  m.emplace_back("stop_gap", FormatDouble(config.stop_gap));
  m.emplace_back("summation_order", "left-to-right over declared indices");
  return m;
}

inline std::string StaticTraceText(const ExperimentConfig& config,
                                   const GameFile& file, const StaticGame& game,
                                   const PolicyProfile& initial, double tau,
                                   const EtaChoice& choice) {
  const double eta =
      choice.automatic ? DefaultLearningRate(game, tau) : choice.value;
  const DynamicsParams params(tau, eta,
                              config.max_iters.value_or(kDefaultMaxIters),
                              config.stop_gap);
  TraceMetadata meta = CommonMetadata(config, file, "run");
  meta.emplace_back("reward_range", RangeText(game.reward_range()));
  meta.emplace_back("tau", FormatDouble(tau));
  meta.emplace_back("eta", FormatDouble(eta));
  meta.emplace_back("eta_source", choice.automatic ? "auto" : "explicit");
  meta.emplace_back("max_iters", std::to_string(params.max_iters()));
  meta.emplace_back("contraction_factor",
                    FormatDouble(ContractionFactor(game, params)));
  meta.emplace_back("convergence_hypotheses",
                    ConvergenceHypothesesHold(game, params) ? "hold" : "fail");
  meta.emplace_back("qre_gap",
                    tau > 0.0 ? "max_i tau * KL(pi_i || softmax(r_bar_i / tau))"
                              : "equals ne_gap at tau = 0");
  meta.emplace_back("ne_gap", "max_i (max_a r_bar_i(a) - <pi_i, r_bar_i>)");
  std::ostringstream out;
  try {
    WriteStaticTrace(out, meta, Run(game, initial, params).records);
  } catch (const NumericError& e) {
    throw NumericError("tau " + FormatDouble(tau) + ": " + e.what());
  }
  return out.str();
}

inline std::string MarkovTraceText(const ExperimentConfig& config,
                                   const GameFile& file, const MarkovGame& game,
                                   const StatePolicyProfile& initial,
                                   double tau, const EtaChoice& choice) {
  if (choice.automatic) {
    throw ParameterError(
        "eta \"auto\" is defined for static games only; give a number for "
        "tau " + FormatDouble(tau));
  }
  const DynamicsParams params(tau, choice.value,
                              config.max_iters.value_or(kDefaultMarkovMaxIters),
                              config.stop_gap);
  TraceMetadata meta = CommonMetadata(config, file, "run-markov");
  meta.emplace_back("num_states", std::to_string(game.num_states()));
  meta.emplace_back("gamma", FormatDouble(game.gamma()));
  meta.emplace_back("reward_range", RangeText(game.reward_range()));
  meta.emplace_back("evaluation_distribution", "uniform");
  meta.emplace_back("markov_update", MarkovUpdateRuleName(config.markov_update));
  meta.emplace_back("tau", FormatDouble(tau));
  meta.emplace_back("eta", FormatDouble(choice.value));
  meta.emplace_back("eta_source", "explicit");
  meta.emplace_back("max_iters", std::to_string(params.max_iters()));
  meta.emplace_back(
      "markov_qre_gap",
      "max_i sum_s rho(s) (V_i^br(s) - V_i^pi(s)); V^br by soft value "
      "iteration on the MDP induced by pi_-i (hard max at tau = 0), "
      "tolerance 1e-12; this gap definition is specific to this tool");
  std::ostringstream out;
  try {
    WriteMarkovTrace(out, meta,
                     RunMarkov(game, initial, params, config.markov_update)
                         .records);
  } catch (const NumericError& e) {
    throw NumericError("tau " + FormatDouble(tau) + ": " + e.what());
  }
  return out.str();
}

// Runs fn(k) for every tau concurrently, returning results in tau order.
template <typename Fn>
std::vector<std::string> SweepTaus(const ExperimentConfig& config, Fn fn) {
  std::vector<std::future<std::string>> pending;
  for (std::size_t k = 0; k < config.tau_values.size(); ++k) {
    pending.push_back(std::async(std::launch::async, fn, k));
  }
  std::vector<std::string> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

inline SvgSeries SeriesFromTrace(const Trace& trace, const std::string& column) {
  SvgSeries s;
  s.label = "tau = " + trace.Meta("tau");
  s.x = trace.Column("iter");
  s.y = trace.Column(column);
  return s;
}

}  // namespace experiment_internal

// Writes <out>/game.txt.
inline std::vector<std::string> CmdGenerate(const ExperimentConfig& config,
                                            const std::string& out_dir) {
  const auto dir = experiment_internal::PrepareDir(out_dir);
  std::ostringstream text;
  WriteGame(text, ConfigGame(config));
  const auto path = dir / "game.txt";
  experiment_internal::WriteFile(path, text.str());
  return {path.string()};
}

// One trace_tau_<tau>.csv per tau; qre_gap.svg and ne_gap.svg on request.
inline std::vector<std::string> CmdRun(const ExperimentConfig& config,
                                       const std::string& out_dir) {
  namespace ei = experiment_internal;
  const GameFile file = ConfigGame(config);
  if (!file.static_game) {
    throw ParameterError("run needs a static game; use run-markov");
  }
  const StaticGame& game = *file.static_game;
  const PolicyProfile initial =
      config.initial_policy.random
          ? RandomProfile(game.action_sizes(), config.initial_policy.seed)
          : PolicyProfile::Uniform(game.action_sizes());
  // Resolve every eta up front so a bad "auto" fails before any work.
  for (std::size_t k = 0; k < config.tau_values.size(); ++k) {
    if (config.eta[k].automatic) {
      DefaultLearningRate(game, config.tau_values[k]);
    }
  }
  const auto dir = ei::PrepareDir(out_dir);
  const std::vector<std::string> texts =
      ei::SweepTaus(config, [&](std::size_t k) {
        return ei::StaticTraceText(config, file, game, initial,
                                   config.tau_values[k], config.eta[k]);
      });
  std::vector<std::string> written;
  std::vector<Trace> traces;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    const auto path =
        dir / ("trace_tau_" + TauLabel(config.tau_values[k]) + ".csv");
    ei::WriteFile(path, texts[k]);
    written.push_back(path.string());
    std::istringstream in(texts[k]);
    traces.push_back(ReadTrace(in));
  }
  if (config.emit_svg) {
    for (const char* column : {"qre_gap", "ne_gap"}) {
      std::vector<SvgSeries> series;
      for (const Trace& t : traces) {
        series.push_back(ei::SeriesFromTrace(t, column));
      }
      SvgOptions opt;
      opt.title = GameKindName(file.spec.kind) + " (" +
                  ei::JoinSizes(file.spec.action_sizes) + "), seed " +
                  std::to_string(file.spec.seed);
      opt.y_label = column;
      const auto path = dir / (std::string(column) + ".svg");
      ei::WriteFile(path, RenderSvg(series, opt));
      written.push_back(path.string());
    }
  }
  return written;
}

// One markov_trace_tau_<tau>.csv per tau; markov_qre_gap.svg on request.
inline std::vector<std::string> CmdRunMarkov(const ExperimentConfig& config,
                                             const std::string& out_dir) {
  namespace ei = experiment_internal;
  const GameFile file = ConfigGame(config);
  if (!file.markov_game) {
    throw ParameterError("run-markov needs a random_markov game");
  }
  const MarkovGame& game = *file.markov_game;
  const StatePolicyProfile initial =
      config.initial_policy.random
          ? RandomStateProfile(game.num_states(), game.action_sizes(),
                               config.initial_policy.seed)
          : StatePolicyProfile::Uniform(game.num_states(),
                                        game.action_sizes());
  for (const EtaChoice& e : config.eta) {
    if (e.automatic) {
      throw ParameterError(
          "eta \"auto\" is defined for static games only; give numbers");
    }
  }
  const auto dir = ei::PrepareDir(out_dir);
  const std::vector<std::string> texts =
      ei::SweepTaus(config, [&](std::size_t k) {
        return ei::MarkovTraceText(config, file, game, initial,
                                   config.tau_values[k], config.eta[k]);
      });
  std::vector<std::string> written;
  std::vector<SvgSeries> series;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    const auto path =
        dir / ("markov_trace_tau_" + TauLabel(config.tau_values[k]) + ".csv");
    ei::WriteFile(path, texts[k]);
    written.push_back(path.string());
    std::istringstream in(texts[k]);
    series.push_back(ei::SeriesFromTrace(ReadTrace(in), "markov_qre_gap"));
  }
  if (config.emit_svg) {
    SvgOptions opt;
    opt.title = "Markov game (" + ei::JoinSizes(file.spec.action_sizes) +
                "), " + std::to_string(game.num_states()) + " states, seed " +
                std::to_string(file.spec.seed);
    opt.y_label = "markov_qre_gap";
    const auto path = dir / "markov_qre_gap.svg";
    ei::WriteFile(path, RenderSvg(series, opt));
    written.push_back(path.string());
  }
  return written;
}

// Re-renders one column of existing traces. An empty column picks the
// first gap column of the first trace.
inline std::vector<std::string> CmdPlot(const std::vector<std::string>& csvs,
                                        const std::string& out_path,
                                        std::string column = {}) {
  if (csvs.empty()) throw ParameterError("plot needs at least one trace");
  std::vector<SvgSeries> series;
  for (const std::string& path : csvs) {
    const Trace t = LoadTrace(path);
    if (column.empty()) {
      if (t.columns.size() < 2) throw ParameterError(path + " has no gap column");
      column = t.columns[1];
    }
    series.push_back(experiment_internal::SeriesFromTrace(t, column));
  }
  SvgOptions opt;
  opt.title = column;
  opt.y_label = column;
  const std::filesystem::path out(out_path);
  if (out.has_parent_path()) {
    experiment_internal::PrepareDir(out.parent_path().string());
  }
  experiment_internal::WriteFile(out, RenderSvg(series, opt));
  return {out_path};
}

inline nlohmann::json VerifyReportJson(const VerifyReport& report,
                                       int seed_count) {
  nlohmann::json j;
  j["version"] = 1;
  j["seed_count"] = seed_count;
  j["ok"] = report.ok();
  j["suites"] = nlohmann::json::array();
  for (const SuiteResult& s : report.suites) {
    j["suites"].push_back({{"name", s.name},
                           {"instances", s.instances},
                           {"checks", s.checks},
                           {"failures", s.failures},
                           {"messages", s.messages}});
  }
  return j;
}

// Runs all suites and writes <out>/verify_report.json.
inline VerifyReport CmdVerify(int seed_count, const std::string& out_dir,
                              std::vector<std::string>* written = nullptr) {
  const VerifyReport report = RunVerify(seed_count);
  const auto dir = experiment_internal::PrepareDir(out_dir);
  const auto path = dir / "verify_report.json";
  experiment_internal::WriteFile(
      path, VerifyReportJson(report, seed_count).dump(2) + "\n");
  if (written) written->push_back(path.string());
  return report;
}

// Exit code for an exception escaping a command.
inline int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const NumericError*>(&e)) return kExitNumeric;
  return kExitUsage;
}

}  // namespace npg

#endif  // NPG_EXPERIMENT_H_
