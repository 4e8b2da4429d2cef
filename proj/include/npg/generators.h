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

#ifndef NPG_GENERATORS_H_
#define NPG_GENERATORS_H_

// Seeded game families. All draws come from npg::Stream with these tags:
//
//   "reward"        index i        agent i's dense tensor, row-major
//   "edge"          index e        payoff of the e-th listed edge, row-major
//   "markov_reward" index i*S + s  agent i's tensor in state s
//   "kernel"        index s        rows P(.|s, a) for joint actions a in order
//   "policy"        index i        agent i's random initial policy
//   "state_policy"  index s*n + i  agent i's random policy in state s

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "npg/errors.h"
#include "npg/game.h"
#include "npg/markov.h"
#include "npg/rng.h"

namespace npg {

enum class GameKind { kRandomStatic, kPolymatrixZeroSum, kRandomMarkov };

inline std::string GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kRandomStatic:
      return "random_static";
    case GameKind::kPolymatrixZeroSum:
      return "polymatrix_zero_sum";
    case GameKind::kRandomMarkov:
      return "random_markov";
  }
  return "random_static";
}

inline GameKind ParseGameKind(const std::string& name) {
  if (name == "random_static") return GameKind::kRandomStatic;
  if (name == "polymatrix_zero_sum") return GameKind::kPolymatrixZeroSum;
  if (name == "random_markov") return GameKind::kRandomMarkov;
  throw ParameterError("unknown game kind '" + name + "'");
}

inline std::vector<std::pair<int, int>> RingEdges(int n) {
  if (n < 2) return {};
  if (n == 2) return {{0, 1}};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return edges;
}

struct GameSpec {
  GameKind kind = GameKind::kRandomStatic;
  std::vector<int> action_sizes;
  int num_states = 1;                      // Markov only
  std::vector<std::pair<int, int>> edges;  // polymatrix only; empty = ring
  std::uint64_t seed = 0;
  double edge_half_width = 0.5;  // edge entries ~ U[-w, w]
  double gamma = 0.95;           // Markov only

  int num_agents() const { return static_cast<int>(action_sizes.size()); }

  // Edges actually used: the listed ones, or a ring when none are listed.
  std::vector<std::pair<int, int>> EffectiveEdges() const {
    return edges.empty() ? RingEdges(num_agents()) : edges;
  }

  void Validate() const {
    if (action_sizes.empty()) throw ParameterError("spec has no agents");
    for (int m : action_sizes) {
      if (m < 2) throw ParameterError("every agent needs at least 2 actions");
    }
    if (kind == GameKind::kRandomMarkov) {
      if (num_states < 1) throw ParameterError("need at least one state");
      if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw ParameterError("discount must lie in [0, 1)");
      }
    }
    if (kind == GameKind::kPolymatrixZeroSum) {
      if (!(edge_half_width > 0.0)) {
        throw ParameterError("edge_half_width must be positive");
      }
      std::set<std::pair<int, int>> seen;
      for (auto [i, j] : EffectiveEdges()) {
        if (i < 0 || j < 0 || i >= num_agents() || j >= num_agents()) {
          throw ParameterError("edge references a missing agent");
        }
        if (i == j) throw ParameterError("self-loop edge");
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
          throw ParameterError("duplicate edge");
        }
      }
    }
  }
};

// Rewards i.i.d. U[0, 1].
inline StaticGame RandomGame(const GameSpec& spec) {
  if (spec.kind != GameKind::kRandomStatic) {
    throw ParameterError("spec is not random_static");
  }
  spec.Validate();
  const std::size_t joint = NumJointActions(spec.action_sizes);
  std::vector<Vec> rewards;
  for (int i = 0; i < spec.num_agents(); ++i) {
    Stream rng(spec.seed, "reward", static_cast<std::uint64_t>(i));
    Vec r(joint);
    for (double& x : r) x = rng.Uniform();
    rewards.push_back(std::move(r));
  }
  return StaticGame::Dense(spec.action_sizes, std::move(rewards), {0.0, 1.0});
}

// Zero-sum polymatrix network. Each edge (i, j) carries M with entries
// U[-w, w]; agent i gets M[a_i, a_j], agent j gets -M[a_i, a_j]. Rewards are
// divided by the maximum degree so that |r_i| <= 2w.
inline StaticGame PolymatrixNetwork(const GameSpec& spec) {
  if (spec.kind != GameKind::kPolymatrixZeroSum) {
    throw ParameterError("spec is not polymatrix_zero_sum");
  }
  spec.Validate();
  const auto edges = spec.EffectiveEdges();
  std::vector<int> degree(spec.num_agents(), 0);
  std::vector<PolymatrixEdge> payoffs;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [i, j] = edges[e];
    ++degree[i];
    ++degree[j];
    Stream rng(spec.seed, "edge", e);
    PolymatrixEdge edge{i, j, Vec(static_cast<std::size_t>(
                                 spec.action_sizes[i] * spec.action_sizes[j]))};
    for (double& x : edge.payoff) {
      x = rng.Uniform(-spec.edge_half_width, spec.edge_half_width);
    }
    payoffs.push_back(std::move(edge));
  }
  const int max_degree = *std::max_element(degree.begin(), degree.end());
  const double scale = max_degree > 0 ? 1.0 / max_degree : 1.0;
  const double bound = 2.0 * spec.edge_half_width;
  return StaticGame::Polymatrix(spec.action_sizes, std::move(payoffs), scale,
                                {-bound, bound});
}

// Rewards i.i.d. U[0, 1] per state; kernel rows are normalized U(0, 1]
// vectors; initial distribution uniform.
inline MarkovGame RandomMarkovGame(const GameSpec& spec) {
  if (spec.kind != GameKind::kRandomMarkov) {
    throw ParameterError("spec is not random_markov");
  }
  spec.Validate();
  const std::size_t joint = NumJointActions(spec.action_sizes);
  const int states = spec.num_states;
  std::vector<std::vector<Vec>> rewards(spec.num_agents());
  for (int i = 0; i < spec.num_agents(); ++i) {
    for (int s = 0; s < states; ++s) {
      Stream rng(spec.seed, "markov_reward",
                 static_cast<std::uint64_t>(i) * states + s);
      Vec r(joint);
      for (double& x : r) x = rng.Uniform();
      rewards[i].push_back(std::move(r));
    }
  }
  std::vector<Vec> kernel;
  for (int s = 0; s < states; ++s) {
    Stream rng(spec.seed, "kernel", static_cast<std::uint64_t>(s));
    Vec rows(joint * static_cast<std::size_t>(states));
    for (std::size_t a = 0; a < joint; ++a) {
      double total = 0.0;
      for (int t = 0; t < states; ++t) {
        rows[a * states + t] = rng.UniformPositive();
        total += rows[a * states + t];
      }
      for (int t = 0; t < states; ++t) rows[a * states + t] /= total;
    }
    kernel.push_back(std::move(rows));
  }
  return MarkovGame(states, spec.action_sizes, std::move(rewards),
                    std::move(kernel), spec.gamma,
                    Vec(states, 1.0 / states), {0.0, 1.0});
}

// Normalized U(0, 1] vectors; strictly positive by construction.
inline PolicyProfile RandomProfile(std::span<const int> sizes,
                                   std::uint64_t seed) {
  std::vector<Vec> policies;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Stream rng(seed, "policy", i);
    Vec p(sizes[i]);
    for (double& x : p) x = rng.UniformPositive();
    policies.push_back(std::move(p));
  }
  return PolicyProfile(std::move(policies));
}

inline StatePolicyProfile RandomStateProfile(int num_states,
                                             std::span<const int> sizes,
                                             std::uint64_t seed) {
  std::vector<PolicyProfile> by_state;
  for (int s = 0; s < num_states; ++s) {
    std::vector<Vec> policies;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      Stream rng(seed, "state_policy", s * sizes.size() + i);
      Vec p(sizes[i]);
      for (double& x : p) x = rng.UniformPositive();
      policies.push_back(std::move(p));
    }
    by_state.emplace_back(std::move(policies));
  }
  return StatePolicyProfile(std::move(by_state));
}

}  // namespace npg

#endif  // NPG_GENERATORS_H_
