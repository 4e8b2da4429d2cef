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

#ifndef NPG_GAME_H_
#define NPG_GAME_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "npg/errors.h"

namespace npg {

using Vec = std::vector<double>;

// Probabilities are floored here before any logarithm is taken and after
// every multiplicative update, so profiles always stay in the interior.
inline constexpr double kProbFloor = 1e-300;

inline double SafeLog(double p) { return std::log(std::max(p, kProbFloor)); }

// Declared range of reward entries. Theory-facing bounds assume
// max(|lo|, |hi|) <= 1.
struct RewardRange {
  double lo = 0.0;
  double hi = 1.0;

  bool Contains(double r) const { return r >= lo && r <= hi; }
  bool TheoryScaled() const {
    return std::max(std::abs(lo), std::abs(hi)) <= 1.0;
  }
};

// Number of joint actions of a product action space. Throws on an empty or
// non-positive size list.
inline std::size_t NumJointActions(std::span<const int> sizes) {
  if (sizes.empty()) throw ParameterError("game needs at least one agent");
  std::size_t total = 1;
  for (int m : sizes) {
    if (m < 1) throw ParameterError("action sizes must be positive");
    total *= static_cast<std::size_t>(m);
  }
  return total;
}

// Row-major odometer over joint actions (last agent varies fastest).
// Returns false after wrapping past the last joint action.
inline bool NextJointAction(std::span<const int> sizes, std::span<int> joint) {
  for (std::size_t k = sizes.size(); k-- > 0;) {
    if (++joint[k] < sizes[k]) return true;
    joint[k] = 0;
  }
  return false;
}

inline std::size_t FlatIndex(std::span<const int> sizes,
                             std::span<const int> joint) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    flat = flat * static_cast<std::size_t>(sizes[k]) +
           static_cast<std::size_t>(joint[k]);
  }
  return flat;
}

// Zero-sum bilinear game on an edge of a polymatrix network. Agent `row`
// receives payoff[a_row * |A_col| + a_col]; agent `col` receives the negation.
struct PolymatrixEdge {
  int row = 0;
  int col = 0;
  Vec payoff;
};

// A normal-form game with n agents. Rewards are either dense tensors (one per
// agent, row-major over joint actions) or a polymatrix network of zero-sum
// edge games, whose agent-i reward is scale * sum of incident edge payoffs.
class StaticGame {
 public:
  static StaticGame Dense(std::vector<int> action_sizes,
                          std::vector<Vec> rewards,
                          RewardRange range = {}) {
    StaticGame g(std::move(action_sizes), range);
    const std::size_t joint = NumJointActions(g.action_sizes_);
    if (rewards.size() != g.action_sizes_.size()) {
      throw DimensionError("need one reward tensor per agent");
    }
    for (const Vec& r : rewards) {
      if (r.size() != joint) {
        throw DimensionError("reward tensor has " + std::to_string(r.size()) +
                             " entries, expected " + std::to_string(joint));
      }
      for (double x : r) {
        if (!std::isfinite(x) || !range.Contains(x)) {
          throw ParameterError("reward entry outside declared range");
        }
      }
    }
    g.dense_ = std::move(rewards);
    return g;
  }

  static StaticGame Polymatrix(std::vector<int> action_sizes,
                               std::vector<PolymatrixEdge> edges, double scale,
                               RewardRange range = {-1.0, 1.0}) {
    StaticGame g(std::move(action_sizes), range);
    NumJointActions(g.action_sizes_);
    const int n = g.num_agents();
    for (const PolymatrixEdge& e : edges) {
      if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n ||
          e.row == e.col) {
        throw ParameterError("polymatrix edge references invalid agents");
      }
      const std::size_t cells =
          static_cast<std::size_t>(g.action_sizes_[e.row]) *
          static_cast<std::size_t>(g.action_sizes_[e.col]);
      if (e.payoff.size() != cells) {
        throw DimensionError("edge payoff matrix has wrong shape");
      }
    }
    g.polymatrix_ = true;
    g.edges_ = std::move(edges);
    g.scale_ = scale;
    return g;
  }

  int num_agents() const { return static_cast<int>(action_sizes_.size()); }
  const std::vector<int>& action_sizes() const { return action_sizes_; }
  int action_size(int agent) const { return action_sizes_.at(agent); }
  int sum_of_action_sizes() const {
    return std::accumulate(action_sizes_.begin(), action_sizes_.end(), 0);
  }
  std::size_t num_joint_actions() const {
    return NumJointActions(action_sizes_);
  }
  const RewardRange& reward_range() const { return range_; }

  bool is_polymatrix() const { return polymatrix_; }
  const std::vector<PolymatrixEdge>& edges() const { return edges_; }
  double edge_scale() const { return scale_; }

  // Dense reward tensors; only valid for dense games.
  const std::vector<Vec>& dense_rewards() const {
    if (polymatrix_) throw ParameterError("polymatrix game has no dense form");
    return dense_;
  }

  double Reward(int agent, std::span<const int> joint) const {
    CheckAgent(agent);
    if (joint.size() != action_sizes_.size()) {
      throw DimensionError("joint action has wrong arity");
    }
    if (!polymatrix_) return dense_[agent][FlatIndex(action_sizes_, joint)];
    double r = 0.0;
    for (const PolymatrixEdge& e : edges_) {
      const int cols = action_sizes_[e.col];
      if (e.row == agent) {
        r += e.payoff[joint[e.row] * cols + joint[e.col]];
      } else if (e.col == agent) {
        r -= e.payoff[joint[e.row] * cols + joint[e.col]];
      }
    }
    return scale_ * r;
  }

  // Dense copy of this game, evaluating polymatrix payoffs entry by entry.
  StaticGame Materialize() const {
    if (!polymatrix_) return *this;
    const std::size_t joint_count = num_joint_actions();
    std::vector<Vec> rewards(num_agents(), Vec(joint_count));
    std::vector<int> joint(action_sizes_.size(), 0);
    std::size_t flat = 0;
    do {
      for (int i = 0; i < num_agents(); ++i) rewards[i][flat] = Reward(i, joint);
      ++flat;
    } while (NextJointAction(action_sizes_, joint));
    return Dense(action_sizes_, std::move(rewards), range_);
  }

  void CheckAgent(int agent) const {
    if (agent < 0 || agent >= num_agents()) {
      throw DimensionError("agent index " + std::to_string(agent) +
                           " out of range");
    }
  }

 private:
  StaticGame(std::vector<int> sizes, RewardRange range)
      : action_sizes_(std::move(sizes)), range_(range) {}

  std::vector<int> action_sizes_;
  RewardRange range_;
  std::vector<Vec> dense_;
  bool polymatrix_ = false;
  std::vector<PolymatrixEdge> edges_;
  double scale_ = 1.0;
};

// Decentralized mixed strategy: one probability vector per agent. Entries are
// strictly positive and each vector is renormalized to sum to one.
class PolicyProfile {
 public:
  explicit PolicyProfile(std::vector<Vec> policies)
      : policies_(std::move(policies)) {
    if (policies_.empty()) throw DimensionError("empty policy profile");
    for (std::size_t i = 0; i < policies_.size(); ++i) {
      Vec& p = policies_[i];
      if (p.empty()) throw DimensionError("empty policy vector");
      double total = 0.0;
      for (double x : p) {
        if (!std::isfinite(x) || !(x > 0.0)) {
          throw ParameterError("policy of agent " + std::to_string(i) +
                               " must be finite and strictly positive");
        }
        total += x;
      }
      for (double& x : p) x /= total;
    }
  }

  static PolicyProfile Uniform(std::span<const int> sizes) {
    std::vector<Vec> policies;
    for (int m : sizes) {
      if (m < 1) throw ParameterError("action sizes must be positive");
      policies.emplace_back(m, 1.0 / m);
    }
    return PolicyProfile(std::move(policies));
  }

  int num_agents() const { return static_cast<int>(policies_.size()); }
  const Vec& policy(int agent) const { return policies_.at(agent); }
  const std::vector<Vec>& policies() const { return policies_; }

  std::vector<int> sizes() const {
    std::vector<int> s;
    for (const Vec& p : policies_) s.push_back(static_cast<int>(p.size()));
    return s;
  }

  // Throws DimensionError unless shapes agree with `sizes`.
  void CheckShape(std::span<const int> sizes) const {
    if (sizes.size() != policies_.size()) {
      throw DimensionError("profile has " + std::to_string(policies_.size()) +
                           " agents, game has " + std::to_string(sizes.size()));
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (static_cast<int>(policies_[i].size()) != sizes[i]) {
        throw DimensionError("policy of agent " + std::to_string(i) +
                             " has wrong length");
      }
    }
  }

 private:
  std::vector<Vec> policies_;
};

inline double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot of unequal lengths");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("unequal lengths");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, std::abs(a[k] - b[k]));
  }
  return m;
}

// log(sum(exp(x))) with max subtraction.
inline double LogSumExp(std::span<const double> x) {
  if (x.empty()) throw DimensionError("log-sum-exp of empty vector");
  const double m = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

// Expectation of a dense tensor over every agent except `agent`, which is
// left free: out[a_agent] = sum_{a_-agent} prod_{j != agent} pi_j(a_j) T[a].
// Summation runs left to right over row-major joint order.
inline Vec ContractExceptAgent(std::span<const double> tensor,
                               std::span<const int> sizes,
                               const std::vector<Vec>& policies, int agent) {
  const std::size_t n = sizes.size();
  Vec out(sizes[agent], 0.0);
  std::vector<int> joint(n, 0);
  std::size_t flat = 0;
  do {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(j) != agent) w *= policies[j][joint[j]];
    }
    out[joint[agent]] += w * tensor[flat];
    ++flat;
  } while (NextJointAction(sizes, joint));
  return out;
}

// Joint distribution prod_i pi_i(a_i) as a row-major vector.
inline Vec JointDistribution(const PolicyProfile& profile) {
  const std::vector<int> sizes = profile.sizes();
  Vec joint_probs(NumJointActions(sizes));
  std::vector<int> joint(sizes.size(), 0);
  std::size_t flat = 0;
  do {
    double w = 1.0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      w *= profile.policy(static_cast<int>(j))[joint[j]];
    }
    joint_probs[flat++] = w;
  } while (NextJointAction(sizes, joint));
  return joint_probs;
}

}  // namespace npg

#endif  // NPG_GAME_H_
