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

#ifndef NPG_MARKOV_H_
#define NPG_MARKOV_H_

// Tabular Markov games with exact policy evaluation.
//
// Values include the agent's own entropy bonus tau * H(pi_i(.|s)) in the
// per-state reward. The marginalized advantage is centered on the
// marginalized Q without an entropy term, so with one state and gamma = 0
// every operation reduces to its static counterpart.
//
// The Markov QRE gap of agent i is V_i^br(rho) - V_i^pi(rho), where V_i^br
// is the optimal soft value of the single-agent MDP obtained by freezing the
// other agents, and rho is the game's initial distribution.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "npg/dynamics.h"
#include "npg/equilibrium.h"
#include "npg/errors.h"
#include "npg/game.h"

namespace npg {

inline constexpr double kStochasticTolerance = 1e-12;
inline constexpr double kValueIterationTolerance = 1e-12;
inline constexpr int kValueIterationCap = 1000000;

class MarkovGame {
 public:
  // rewards[i][s] is agent i's row-major tensor over joint actions in state
  // s; kernel[s][a * S + s'] = P(s' | s, a) for flat joint action a.
  MarkovGame(int num_states, std::vector<int> action_sizes,
             std::vector<std::vector<Vec>> rewards, std::vector<Vec> kernel,
             double gamma, Vec initial_dist, RewardRange range = {})
      : num_states_(num_states),
        action_sizes_(std::move(action_sizes)),
        rewards_(std::move(rewards)),
        kernel_(std::move(kernel)),
        gamma_(gamma),
        initial_dist_(std::move(initial_dist)),
        range_(range) {
    if (num_states_ < 1) throw ParameterError("need at least one state");
    const std::size_t joint = NumJointActions(action_sizes_);
    const auto states = static_cast<std::size_t>(num_states_);
    if (!(gamma_ >= 0.0 && gamma_ < 1.0)) {
      throw ParameterError("discount must lie in [0, 1)");
    }
    if (rewards_.size() != action_sizes_.size()) {
      throw DimensionError("need one reward table per agent");
    }
    for (const auto& per_state : rewards_) {
      if (per_state.size() != states) {
        throw DimensionError("need one reward tensor per state");
      }
      for (const Vec& r : per_state) {
        if (r.size() != joint) throw DimensionError("reward tensor shape");
        for (double x : r) {
          if (!std::isfinite(x) || !range_.Contains(x)) {
            throw ParameterError("reward entry outside declared range");
          }
        }
      }
    }
    if (kernel_.size() != states) throw DimensionError("kernel state count");
    for (const Vec& rows : kernel_) {
      if (rows.size() != joint * states) throw DimensionError("kernel shape");
      for (std::size_t a = 0; a < joint; ++a) {
        double total = 0.0;
        for (std::size_t t = 0; t < states; ++t) {
          const double p = rows[a * states + t];
          if (!(p >= 0.0)) throw ParameterError("negative transition");
          total += p;
        }
        if (std::abs(total - 1.0) > kStochasticTolerance) {
          throw ParameterError("kernel row does not sum to one");
        }
      }
    }
    if (initial_dist_.size() != states) {
      throw DimensionError("initial distribution length");
    }
    double total = 0.0;
    for (double p : initial_dist_) {
      if (!(p >= 0.0)) throw ParameterError("negative initial probability");
      total += p;
    }
    if (std::abs(total - 1.0) > kStochasticTolerance) {
      throw ParameterError("initial distribution does not sum to one");
    }
  }

  int num_states() const { return num_states_; }
  int num_agents() const { return static_cast<int>(action_sizes_.size()); }
  const std::vector<int>& action_sizes() const { return action_sizes_; }
  std::size_t num_joint_actions() const {
    return NumJointActions(action_sizes_);
  }
  const std::vector<std::vector<Vec>>& rewards() const { return rewards_; }
  const std::vector<Vec>& kernel() const { return kernel_; }
  double gamma() const { return gamma_; }
  const Vec& initial_dist() const { return initial_dist_; }
  const RewardRange& reward_range() const { return range_; }

  double Transition(int s, std::size_t joint, int next) const {
    return kernel_[s][joint * static_cast<std::size_t>(num_states_) + next];
  }

  // The normal-form game played in state s.
  StaticGame StageGame(int s) const {
    std::vector<Vec> r;
    for (const auto& per_state : rewards_) r.push_back(per_state.at(s));
    return StaticGame::Dense(action_sizes_, std::move(r), range_);
  }

 private:
  int num_states_;
  std::vector<int> action_sizes_;
  std::vector<std::vector<Vec>> rewards_;
  std::vector<Vec> kernel_;
  double gamma_;
  Vec initial_dist_;
  RewardRange range_;
};

// A one-state Markov game with the given discount whose stage game is `game`.
inline MarkovGame EmbedStaticGame(const StaticGame& game, double gamma = 0.0) {
  const StaticGame dense = game.Materialize();
  std::vector<std::vector<Vec>> rewards;
  for (const Vec& r : dense.dense_rewards()) rewards.push_back({r});
  return MarkovGame(1, dense.action_sizes(), std::move(rewards),
                    {Vec(dense.num_joint_actions(), 1.0)}, gamma, {1.0},
                    dense.reward_range());
}

// Per-state decentralized policies.
class StatePolicyProfile {
 public:
  explicit StatePolicyProfile(std::vector<PolicyProfile> by_state)
      : by_state_(std::move(by_state)) {
    if (by_state_.empty()) throw DimensionError("no states in profile");
  }

  static StatePolicyProfile Uniform(int num_states,
                                    std::span<const int> sizes) {
    return StatePolicyProfile(std::vector<PolicyProfile>(
        num_states, PolicyProfile::Uniform(sizes)));
  }

  int num_states() const { return static_cast<int>(by_state_.size()); }
  const PolicyProfile& at(int s) const { return by_state_.at(s); }
  const std::vector<PolicyProfile>& by_state() const { return by_state_; }

  void CheckShape(const MarkovGame& game) const {
    if (num_states() != game.num_states()) {
      throw DimensionError("profile state count differs from game");
    }
    for (const PolicyProfile& p : by_state_) p.CheckShape(game.action_sizes());
  }

 private:
  std::vector<PolicyProfile> by_state_;
};

// V_i(s) for every agent, solving (I - gamma P_pi) V_i = r_i^{pi,tau}.
// Result is indexed [agent][state].
inline std::vector<Vec> EvaluatePolicy(const MarkovGame& game,
                                       const StatePolicyProfile& profile,
                                       double tau) {
  CheckTau(tau);
  profile.CheckShape(game);
  const int states = game.num_states();
  const int n = game.num_agents();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(states, states);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(states, n);
  for (int s = 0; s < states; ++s) {
    const Vec joint = JointDistribution(profile.at(s));
    for (std::size_t a = 0; a < joint.size(); ++a) {
      for (int t = 0; t < states; ++t) {
        system(s, t) -= game.gamma() * joint[a] * game.Transition(s, a, t);
      }
      for (int i = 0; i < n; ++i) {
        rhs(s, i) += joint[a] * game.rewards()[i][s][a];
      }
    }
    for (int i = 0; i < n; ++i) {
      rhs(s, i) += tau * Entropy(profile.at(s).policy(i));
    }
  }
  const Eigen::MatrixXd solution = system.partialPivLu().solve(rhs);
  if (!solution.allFinite()) throw NumericError("policy evaluation failed");
  std::vector<Vec> values(n, Vec(states));
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < states; ++s) values[i][s] = solution(s, i);
  }
  return values;
}

// The single-agent MDP seen by `agent` when the others are frozen:
// reward[s][a_i] and transition[s][a_i][s'], both marginalized over a_-i.
struct InducedMdp {
  std::vector<Vec> reward;
  std::vector<std::vector<Vec>> transition;
};

inline InducedMdp InduceMdp(const MarkovGame& game,
                            const StatePolicyProfile& profile, int agent) {
  const int states = game.num_states();
  const std::vector<int>& sizes = game.action_sizes();
  const int m = sizes.at(agent);
  InducedMdp mdp;
  mdp.reward.assign(states, Vec(m, 0.0));
  mdp.transition.assign(states, std::vector<Vec>(m, Vec(states, 0.0)));
  for (int s = 0; s < states; ++s) {
    const PolicyProfile& pi = profile.at(s);
    std::vector<int> joint(sizes.size(), 0);
    std::size_t flat = 0;
    do {
      double w = 1.0;
      for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (static_cast<int>(j) != agent) {
          w *= pi.policy(static_cast<int>(j))[joint[j]];
        }
      }
      const int own = joint[agent];
      mdp.reward[s][own] += w * game.rewards()[agent][s][flat];
      for (int t = 0; t < states; ++t) {
        mdp.transition[s][own][t] += w * game.Transition(s, flat, t);
      }
      ++flat;
    } while (NextJointAction(sizes, joint));
  }
  return mdp;
}

// Q(s, a) = reward[s][a] + gamma * sum_t transition[s][a][t] * values[t].
inline std::vector<Vec> InducedQ(const InducedMdp& mdp, double gamma,
                                 std::span<const double> values) {
  std::vector<Vec> q = mdp.reward;
  for (std::size_t s = 0; s < q.size(); ++s) {
    for (std::size_t a = 0; a < q[s].size(); ++a) {
      q[s][a] += gamma * Dot(mdp.transition[s][a], values);
    }
  }
  return q;
}

// Marginalized Q of `agent` under its own values; indexed [state][a_i].
inline std::vector<Vec> MarginalizedQ(const MarkovGame& game,
                                      const StatePolicyProfile& profile,
                                      int agent, std::span<const double> values) {
  return InducedQ(InduceMdp(game, profile, agent), game.gamma(), values);
}

inline std::vector<Vec> CenterAdvantage(const StatePolicyProfile& profile,
                                        int agent, std::vector<Vec> q) {
  for (std::size_t s = 0; s < q.size(); ++s) {
    const double baseline =
        Dot(profile.at(static_cast<int>(s)).policy(agent), q[s]);
    for (double& x : q[s]) x -= baseline;
  }
  return q;
}

// A_bar_i(s, a_i) = Q_bar_i(s, a_i) - <pi_i(.|s), Q_bar_i(s, .)>.
inline std::vector<Vec> MarginalizedAdvantage(const MarkovGame& game,
                                              const StatePolicyProfile& profile,
                                              int agent, double tau) {
  if (agent < 0 || agent >= game.num_agents()) {
    throw DimensionError("agent index out of range");
  }
  const std::vector<Vec> values = EvaluatePolicy(game, profile, tau);
  return CenterAdvantage(profile, agent,
                         MarginalizedQ(game, profile, agent, values[agent]));
}

enum class MarkovUpdateRule {
  // pi' ∝ pi^{1 - eta tau} exp(eta / (1 - gamma) * A_bar).
  kLiteral,
  // As kLiteral with A_bar - tau log pi inside the exponent.
  kEntropyInAdvantage,
  // pi' ∝ pi^{1 - eta tau / (1 - gamma)} exp(eta / (1 - gamma) * A_bar);
  // its fixed points are exactly the soft best responses used by the gap.
  kDiscountedExponent,
};

inline MarkovUpdateRule ParseMarkovUpdateRule(const std::string& name) {
  if (name == "literal") return MarkovUpdateRule::kLiteral;
  if (name == "entropy_in_advantage") {
    return MarkovUpdateRule::kEntropyInAdvantage;
  }
  if (name == "discounted_exponent") {
    return MarkovUpdateRule::kDiscountedExponent;
  }
  throw ParameterError("unknown Markov update rule '" + name + "'");
}

inline std::string MarkovUpdateRuleName(MarkovUpdateRule rule) {
  switch (rule) {
    case MarkovUpdateRule::kLiteral:
      return "literal";
    case MarkovUpdateRule::kEntropyInAdvantage:
      return "entropy_in_advantage";
    case MarkovUpdateRule::kDiscountedExponent:
      return "discounted_exponent";
  }
  return "literal";
}

inline StatePolicyProfile MarkovNpgStep(
    const MarkovGame& game, const StatePolicyProfile& profile,
    const DynamicsParams& params,
    MarkovUpdateRule rule = MarkovUpdateRule::kDiscountedExponent) {
  const double horizon = 1.0 / (1.0 - game.gamma());
  const double step = params.eta() * horizon;
  double retention = params.retention();
  if (rule == MarkovUpdateRule::kDiscountedExponent) {
    retention = 1.0 - params.eta() * params.tau() * horizon;
    if (retention < -1e-12) {
      throw ParameterError("eta * tau / (1 - gamma) exceeds 1");
    }
    retention = std::max(retention, 0.0);
  }
  const std::vector<Vec> values = EvaluatePolicy(game, profile, params.tau());
  const int states = game.num_states();
  std::vector<std::vector<Vec>> next(states);
  for (int i = 0; i < game.num_agents(); ++i) {
    std::vector<Vec> adv = CenterAdvantage(
        profile, i, MarginalizedQ(game, profile, i, values[i]));
    for (int s = 0; s < states; ++s) {
      const Vec& pi = profile.at(s).policy(i);
      if (rule == MarkovUpdateRule::kEntropyInAdvantage) {
        for (std::size_t a = 0; a < pi.size(); ++a) {
          adv[s][a] -= params.tau() * SafeLog(pi[a]);
        }
      }
      try {
        next[s].push_back(NpgUpdatePolicy(pi, adv[s], retention, step));
      } catch (const NumericError& e) {
        throw NumericError("markov_npg_step state " + std::to_string(s) +
                           " agent " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  std::vector<PolicyProfile> by_state;
  for (auto& policies : next) by_state.emplace_back(std::move(policies));
  return StatePolicyProfile(std::move(by_state));
}

struct ValueIterationResult {
  Vec values;
  int iterations = 0;
  std::vector<double> sup_diffs;  // ||V_{k+1} - V_k||_inf per sweep
};

// Optimal soft values V(s) = tau log sum_a exp(Q(s,a)/tau) (hard max when
// tau = 0), iterated from `start` (zero if empty) until successive sweeps
// differ by < tol.
inline ValueIterationResult SoftValueIteration(
    const InducedMdp& mdp, double gamma, double tau,
    std::span<const double> start = {},
    double tol = kValueIterationTolerance, int cap = kValueIterationCap) {
  CheckTau(tau);
  const std::size_t states = mdp.reward.size();
  ValueIterationResult result;
  if (start.empty()) {
    result.values.assign(states, 0.0);
  } else if (start.size() == states) {
    result.values.assign(start.begin(), start.end());
  } else {
    throw DimensionError("value iteration start has wrong length");
  }
  Vec next(states);
  for (int it = 0; it < cap; ++it) {
    const std::vector<Vec> q = InducedQ(mdp, gamma, result.values);
    double diff = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
      if (tau > 0.0) {
        Vec scaled = q[s];
        for (double& x : scaled) x /= tau;
        next[s] = tau * LogSumExp(scaled);
      } else {
        next[s] = *std::max_element(q[s].begin(), q[s].end());
      }
      diff = std::max(diff, std::abs(next[s] - result.values[s]));
    }
    result.values = next;
    result.iterations = it + 1;
    result.sup_diffs.push_back(diff);
    if (!std::isfinite(diff)) break;
    if (diff < tol) return result;
  }
  throw NumericError("soft value iteration did not converge within " +
                     std::to_string(cap) + " sweeps");
}

inline GapReport MarkovQreGap(const MarkovGame& game,
                              const StatePolicyProfile& profile, double tau) {
  const std::vector<Vec> values = EvaluatePolicy(game, profile, tau);
  std::vector<double> gaps;
  for (int i = 0; i < game.num_agents(); ++i) {
    const InducedMdp mdp = InduceMdp(game, profile, i);
    // Start from V^pi, which V^br dominates.
    const Vec best =
        SoftValueIteration(mdp, game.gamma(), tau, values[i]).values;
    double gap = 0.0;
    for (int s = 0; s < game.num_states(); ++s) {
      gap += game.initial_dist()[s] * (best[s] - values[i][s]);
    }
    gaps.push_back(gap);
  }
  return MakeGapReport(std::move(gaps));
}

struct MarkovIterateRecord {
  int iter = 0;
  double markov_qre_gap = 0.0;
  std::chrono::duration<double, std::milli> wall_time{0};
};

struct MarkovTrajectory {
  std::vector<MarkovIterateRecord> records;
  StatePolicyProfile final_profile;
};

inline MarkovTrajectory RunMarkov(
    const MarkovGame& game, const StatePolicyProfile& initial,
    const DynamicsParams& params,
    MarkovUpdateRule rule = MarkovUpdateRule::kDiscountedExponent) {
  initial.CheckShape(game);
  const auto start = std::chrono::steady_clock::now();
  std::vector<MarkovIterateRecord> records;
  StatePolicyProfile profile = initial;
  for (int k = 0;; ++k) {
    MarkovIterateRecord rec;
    rec.iter = k;
    try {
      rec.markov_qre_gap = MarkovQreGap(game, profile, params.tau()).max_gap;
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k) + ": " + e.what());
    }
    rec.wall_time = std::chrono::steady_clock::now() - start;
    records.push_back(rec);
    if (rec.markov_qre_gap < params.stop_gap() || k == params.max_iters()) {
      break;
    }
    try {
      profile = MarkovNpgStep(game, profile, params, rule);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k) + ": " + e.what());
    }
  }
  return MarkovTrajectory{std::move(records), std::move(profile)};
}

}  // namespace npg

#endif  // NPG_MARKOV_H_
