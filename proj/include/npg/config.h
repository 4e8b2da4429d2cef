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

#ifndef NPG_CONFIG_H_
#define NPG_CONFIG_H_

// Experiment configuration, a JSON document:
//
//   {
//     "version": 1,
//     "game": {"kind": "random_static", "action_sizes": [3, 4, 5],
//              "seed": 7, "num_states": 5, "gamma": 0.95,
//              "edges": [[0, 1], [1, 2]], "edge_half_width": 0.5},
//     "game_file": "path/to/game.txt",       (instead of "game")
//     "tau_values": [0, 0.1, 48],
//     "eta": "auto" | 0.1 | [1, 1, "auto"],   (one entry per tau)
//     "max_iters": 10000,
//     "stop_gap": 1e-12,
//     "initial_policy": "uniform" | {"random": 7},
//     "output_dir": "out",
//     "emit_svg": true,
//     "markov_update": "discounted_exponent"
//   }
//
// Only "version", one of "game"/"game_file" and "tau_values" are required.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "npg/errors.h"
#include "npg/format.h"
#include "npg/generators.h"
#include "npg/markov.h"
#include "npg/rng.h"

namespace npg {

inline constexpr int kConfigVersion = 1;

struct EtaChoice {
  bool automatic = true;
  double value = 0.0;
};

struct InitialPolicy {
  bool random = false;
  std::uint64_t seed = 0;

  std::string Describe() const {
    return random ? "random(" + std::to_string(seed) + ")" : "uniform";
  }
};

struct ExperimentConfig {
  std::optional<GameSpec> game;
  std::string game_file;
  std::vector<double> tau_values;
  std::vector<EtaChoice> eta;  // same length as tau_values
  std::optional<int> max_iters;
  double stop_gap = 1e-12;
  InitialPolicy initial_policy;
  std::string output_dir;
  bool emit_svg = false;
  MarkovUpdateRule markov_update = MarkovUpdateRule::kDiscountedExponent;
  nlohmann::json effective;  // the parsed document, overrides applied

  // FNV-1a of the canonical JSON dump of `effective` minus "output_dir".
  std::uint64_t Hash() const {
    nlohmann::json copy = effective;
    copy.erase("output_dir");
    return Fnv1a64(copy.dump());
  }
};

inline GameSpec ParseGameSpec(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("config: game must be an object");
  GameSpec spec;
  spec.kind = ParseGameKind(j.at("kind").get<std::string>());
  spec.action_sizes = j.at("action_sizes").get<std::vector<int>>();
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.num_states = j.value("num_states", 1);
  spec.gamma = j.value("gamma", 0.95);
  spec.edge_half_width = j.value("edge_half_width", 0.5);
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ParameterError("config: edges must be [i, j] pairs");
      }
      spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  spec.Validate();
  return spec;
}

inline EtaChoice ParseEta(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto") {
      throw ParameterError("config: eta must be a number or \"auto\"");
    }
    return {true, 0.0};
  }
  if (!j.is_number()) throw ParameterError("config: eta must be numeric");
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ParameterError("config: eta must be positive");
  return {false, v};
}

inline ExperimentConfig ParseConfig(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    if (j.value("version", 0) != kConfigVersion) {
      throw ParameterError("config: unsupported or missing version");
    }
    ExperimentConfig c;
    c.effective = j;
    if (j.contains("game") == j.contains("game_file")) {
      throw ParameterError("config: give exactly one of game / game_file");
    }
    if (j.contains("game")) c.game = ParseGameSpec(j.at("game"));
    if (j.contains("game_file")) {
      c.game_file = j.at("game_file").get<std::string>();
    }
    c.tau_values = j.at("tau_values").get<std::vector<double>>();
    if (c.tau_values.empty()) throw ParameterError("config: no tau values");
    for (double t : c.tau_values) {
      if (!(t >= 0.0)) throw ParameterError("config: tau must be >= 0");
    }
    const nlohmann::json eta = j.value("eta", nlohmann::json("auto"));
    if (eta.is_array()) {
      if (eta.size() != c.tau_values.size()) {
        throw ParameterError("config: eta list must match tau_values");
      }
      for (const auto& e : eta) c.eta.push_back(ParseEta(e));
    } else {
      c.eta.assign(c.tau_values.size(), ParseEta(eta));
    }
    if (j.contains("max_iters")) {
      c.max_iters = j.at("max_iters").get<int>();
      if (*c.max_iters < 1) throw ParameterError("config: max_iters < 1");
    }
    c.stop_gap = j.value("stop_gap", 1e-12);
    if (!(c.stop_gap >= 0.0)) throw ParameterError("config: stop_gap < 0");
    if (j.contains("initial_policy")) {
      const auto& ip = j.at("initial_policy");
      if (ip.is_string() && ip.get<std::string>() == "uniform") {
        c.initial_policy = {false, 0};
      } else if (ip.is_object() && ip.contains("random")) {
        c.initial_policy = {true, ip.at("random").get<std::uint64_t>()};
      } else {
        throw ParameterError(
            "config: initial_policy must be \"uniform\" or {\"random\": seed}");
      }
    }
    c.output_dir = j.value("output_dir", std::string());
    c.emit_svg = j.value("emit_svg", false);
    c.markov_update = ParseMarkovUpdateRule(
        j.value("markov_update", std::string("discounted_exponent")));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
}

inline nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config " + path + ": " + e.what());
  }
}

// Command-line overrides applied on top of a config document.
struct ConfigOverrides {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> tau_values;
  std::optional<std::string> eta;  // number or "auto"
  std::optional<int> max_iters;
  bool emit_svg = false;
};

inline nlohmann::json ApplyOverrides(nlohmann::json j,
                                     const ConfigOverrides& o) {
  if (o.output_dir) j["output_dir"] = *o.output_dir;
  if (o.seed) {
    if (!j.contains("game")) {
      throw ParameterError("--seed needs a config with a game spec");
    }
    j["game"]["seed"] = *o.seed;
  }
  if (o.tau_values) j["tau_values"] = *o.tau_values;
  if (o.eta) {
    if (*o.eta == "auto") {
      j["eta"] = "auto";
    } else {
      j["eta"] = ParseDouble(*o.eta);
    }
  } else if (o.tau_values && j.contains("eta") && j["eta"].is_array() &&
             j["eta"].size() != o.tau_values->size()) {
    throw ParameterError("--tau changes the sweep length; pass --eta too");
  }
  if (o.max_iters) j["max_iters"] = *o.max_iters;
  if (o.emit_svg) j["emit_svg"] = true;
  return j;
}

}  // namespace npg

#endif  // NPG_CONFIG_H_
