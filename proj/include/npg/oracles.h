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

#ifndef NPG_ORACLES_H_
#define NPG_ORACLES_H_

// Reference computations for verification. Each routine takes the direct,
// slow route (explicit enumeration of joint actions, finite differences,
// truncated power series) and shares no code path with the library
// operation it checks beyond the game accessors.

#include <cmath>
#include <vector>

#include "npg/game.h"
#include "npg/markov.h"

namespace npg::oracle {

inline double JointWeight(const PolicyProfile& profile,
                          const std::vector<int>& joint, int skip = -1) {
  double w = 1.0;
  for (int j = 0; j < profile.num_agents(); ++j) {
    if (j != skip) w *= profile.policy(j)[joint[j]];
  }
  return w;
}

// Sum over every joint action of prod_j pi_j(a_j) * r_i(a).
inline double ExpectedReward(const StaticGame& game,
                             const PolicyProfile& profile, int agent) {
  const std::vector<int> sizes = game.action_sizes();
  std::vector<int> joint(sizes.size(), 0);
  double total = 0.0;
  do {
    total += JointWeight(profile, joint) * game.Reward(agent, joint);
  } while (NextJointAction(sizes, joint));
  return total;
}

inline Vec Marginal(const StaticGame& game, const PolicyProfile& profile,
                    int agent) {
  const std::vector<int> sizes = game.action_sizes();
  Vec out(sizes[agent], 0.0);
  std::vector<int> joint(sizes.size(), 0);
  do {
    out[joint[agent]] +=
        JointWeight(profile, joint, agent) * game.Reward(agent, joint);
  } while (NextJointAction(sizes, joint));
  return out;
}

inline double ShannonEntropy(const Vec& p) {
  double h = 0.0;
  for (double x : p) h += -x * std::log(x);
  return h;
}

// exp(x / tau) / sum exp(x / tau), probability domain.
inline Vec Boltzmann(const Vec& x, double tau) {
  double top = x[0];
  for (double v : x) top = std::max(top, v);
  Vec p(x.size());
  double z = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    p[a] = std::exp((x[a] - top) / tau);
    z += p[a];
  }
  for (double& v : p) v /= z;
  return p;
}

inline double Kl(const Vec& p, const Vec& q) {
  double kl = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) kl += p[a] * std::log(p[a] / q[a]);
  return kl;
}

inline PolicyProfile ReplacePolicy(const PolicyProfile& profile, int agent,
                                   Vec policy) {
  std::vector<Vec> policies = profile.policies();
  policies[agent] = std::move(policy);
  return PolicyProfile(std::move(policies));
}

inline double RegularizedReward(const StaticGame& game,
                                const PolicyProfile& profile, int agent,
                                double tau) {
  return oracle::ExpectedReward(game, profile, agent) +
         tau * ShannonEntropy(profile.policy(agent));
}

// Multiplicative weights: pi' ∝ pi * exp(eta * r_bar).
inline PolicyProfile MwuStep(const StaticGame& game,
                             const PolicyProfile& profile, double eta) {
  std::vector<Vec> next;
  for (int i = 0; i < game.num_agents(); ++i) {
    const Vec r = Marginal(game, profile, i);
    Vec p = profile.policy(i);
    double z = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      p[a] *= std::exp(eta * r[a]);
      z += p[a];
    }
    for (double& x : p) x /= z;
    next.push_back(std::move(p));
  }
  return PolicyProfile(std::move(next));
}

// Central differences of the regularized reward over agent i's logits,
// theta_i = log pi_i.
inline Vec FiniteDifferenceGradient(const StaticGame& game,
                                    const PolicyProfile& profile, int agent,
                                    double tau, double h = 1e-6) {
  Vec theta;
  for (double p : profile.policy(agent)) theta.push_back(std::log(p));
  auto value_at = [&](const Vec& t) {
    Vec p(t.size());
    double z = 0.0;
    for (std::size_t a = 0; a < t.size(); ++a) z += std::exp(t[a]);
    for (std::size_t a = 0; a < t.size(); ++a) p[a] = std::exp(t[a]) / z;
    return oracle::RegularizedReward(game, ReplacePolicy(profile, agent, p), agent,
                             tau);
  };
  Vec grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    Vec plus = theta, minus = theta;
    plus[k] += h;
    minus[k] -= h;
    grad[k] = (value_at(plus) - value_at(minus)) / (2.0 * h);
  }
  return grad;
}

// E_{a~pi}[g_a g_a^T] with g_a = e_a - pi, the softmax score function.
inline std::vector<Vec> ExplicitFisher(const Vec& pi) {
  const std::size_t m = pi.size();
  std::vector<Vec> f(m, Vec(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    Vec g(m);
    for (std::size_t k = 0; k < m; ++k) g[k] = (k == a ? 1.0 : 0.0) - pi[k];
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) f[r][c] += pi[a] * g[r] * g[c];
    }
  }
  return f;
}

// ||prod_i p_i - prod_i q_i||_1 with both joints materialized.
inline double JointL1Distance(const PolicyProfile& p, const PolicyProfile& q) {
  const std::vector<int> sizes = p.sizes();
  std::vector<int> joint(sizes.size(), 0);
  double d = 0.0;
  do {
    d += std::abs(JointWeight(p, joint) - JointWeight(q, joint));
  } while (NextJointAction(sizes, joint));
  return d;
}

// Dense game with agents relabeled: new agent k is old agent perm[k].
inline StaticGame PermuteAgents(const StaticGame& game,
                                const std::vector<int>& perm) {
  const StaticGame dense = game.Materialize();
  const int n = dense.num_agents();
  std::vector<int> sizes(n);
  for (int k = 0; k < n; ++k) sizes[k] = dense.action_size(perm[k]);
  std::vector<Vec> rewards(n, Vec(dense.num_joint_actions()));
  std::vector<int> joint(n, 0), old(n, 0);
  std::size_t flat = 0;
  do {
    for (int k = 0; k < n; ++k) old[perm[k]] = joint[k];
    for (int k = 0; k < n; ++k) rewards[k][flat] = dense.Reward(perm[k], old);
    ++flat;
  } while (NextJointAction(sizes, joint));
  return StaticGame::Dense(sizes, std::move(rewards), dense.reward_range());
}

inline PolicyProfile PermuteProfile(const PolicyProfile& profile,
                                    const std::vector<int>& perm) {
  std::vector<Vec> policies;
  for (int k : perm) policies.push_back(profile.policy(k));
  return PolicyProfile(std::move(policies));
}

// Adds c to every reward entry of `agent`, widening the declared range.
inline StaticGame ShiftRewards(const StaticGame& game, int agent, double c) {
  const StaticGame dense = game.Materialize();
  std::vector<Vec> rewards = dense.dense_rewards();
  for (double& x : rewards[agent]) x += c;
  RewardRange range = dense.reward_range();
  range.lo = std::min(range.lo, range.lo + c);
  range.hi = std::max(range.hi, range.hi + c);
  return StaticGame::Dense(dense.action_sizes(), std::move(rewards), range);
}

// V_i = sum_{t <= T} gamma^t P_pi^t r_i^{pi,tau}, with T the first integer
// such that gamma^{T+1} / (1 - gamma) < tol. Indexed [agent][state].
inline std::vector<Vec> PowerSeriesValues(const MarkovGame& game,
                                          const StatePolicyProfile& profile,
                                          double tau, double tol = 1e-10) {
  const int states = game.num_states();
  const int n = game.num_agents();
  const std::vector<int>& sizes = game.action_sizes();
  std::vector<Vec> chain(states, Vec(states, 0.0));
  std::vector<Vec> reward(n, Vec(states, 0.0));
  for (int s = 0; s < states; ++s) {
    std::vector<int> joint(sizes.size(), 0);
    std::size_t flat = 0;
    do {
      const double w = JointWeight(profile.at(s), joint);
      for (int t = 0; t < states; ++t) {
        chain[s][t] += w * game.Transition(s, flat, t);
      }
      for (int i = 0; i < n; ++i) reward[i][s] += w * game.rewards()[i][s][flat];
      ++flat;
    } while (NextJointAction(sizes, joint));
    for (int i = 0; i < n; ++i) {
      reward[i][s] += tau * ShannonEntropy(profile.at(s).policy(i));
    }
  }
  const double gamma = game.gamma();
  int horizon = 0;
  while (std::pow(gamma, horizon + 1) / (1.0 - gamma) >= tol) ++horizon;
  std::vector<Vec> values = reward;
  for (int i = 0; i < n; ++i) {
    Vec term = reward[i];
    for (int t = 1; t <= horizon; ++t) {
      Vec next(states, 0.0);
      for (int s = 0; s < states; ++s) {
        for (int u = 0; u < states; ++u) next[s] += gamma * chain[s][u] * term[u];
      }
      term = std::move(next);
      for (int s = 0; s < states; ++s) values[i][s] += term[s];
    }
  }
  return values;
}

// Centered advantage by enumerating joint actions and next states.
inline std::vector<Vec> Advantage(const MarkovGame& game,
                                  const StatePolicyProfile& profile, int agent,
                                  const Vec& values) {
  const int states = game.num_states();
  const std::vector<int>& sizes = game.action_sizes();
  std::vector<Vec> adv(states, Vec(sizes[agent], 0.0));
  for (int s = 0; s < states; ++s) {
    std::vector<int> joint(sizes.size(), 0);
    std::size_t flat = 0;
    do {
      double q = game.rewards()[agent][s][flat];
      for (int t = 0; t < states; ++t) {
        q += game.gamma() * game.Transition(s, flat, t) * values[t];
      }
      adv[s][joint[agent]] += JointWeight(profile.at(s), joint, agent) * q;
      ++flat;
    } while (NextJointAction(sizes, joint));
    double baseline = 0.0;
    for (int a = 0; a < sizes[agent]; ++a) {
      baseline += profile.at(s).policy(agent)[a] * adv[s][a];
    }
    for (double& x : adv[s]) x -= baseline;
  }
  return adv;
}

}  // namespace npg::oracle

#endif  // NPG_ORACLES_H_
