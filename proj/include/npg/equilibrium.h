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

#ifndef NPG_EQUILIBRIUM_H_
#define NPG_EQUILIBRIUM_H_

// Expected, marginalized and entropy-regularized rewards of a static game,
// soft best responses, and the QRE / NE gaps.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "npg/errors.h"
#include "npg/game.h"

namespace npg {

// Per-agent best-response improvements. Values within round-off of zero are
// clamped, so every entry is nonnegative.
struct GapReport {
  std::vector<double> per_agent_gaps;
  double max_gap = 0.0;
  int arg_agent = 0;
};

inline GapReport MakeGapReport(std::vector<double> raw) {
  GapReport report;
  report.per_agent_gaps = std::move(raw);
  for (double& g : report.per_agent_gaps) g = std::max(g, 0.0);
  for (std::size_t i = 0; i < report.per_agent_gaps.size(); ++i) {
    if (i == 0 || report.per_agent_gaps[i] > report.max_gap) {
      report.max_gap = report.per_agent_gaps[i];
      report.arg_agent = static_cast<int>(i);
    }
  }
  return report;
}

inline void CheckTau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ParameterError("tau must be finite and nonnegative");
  }
}

// r_bar_i(a_i) = E_{a_-i ~ pi_-i}[r_i(a_i, a_-i)]. Polymatrix games are
// evaluated edge by edge without materializing the joint tensor.
inline Vec MarginalizedReward(const StaticGame& game,
                              const PolicyProfile& profile, int agent) {
  game.CheckAgent(agent);
  profile.CheckShape(game.action_sizes());
  if (!game.is_polymatrix()) {
    return ContractExceptAgent(game.dense_rewards()[agent], game.action_sizes(),
                               profile.policies(), agent);
  }
  Vec out(game.action_size(agent), 0.0);
  for (const PolymatrixEdge& e : game.edges()) {
    const int cols = game.action_size(e.col);
    if (e.row == agent) {
      const Vec& other = profile.policy(e.col);
      for (int a = 0; a < game.action_size(agent); ++a) {
        double s = 0.0;
        for (int b = 0; b < cols; ++b) s += e.payoff[a * cols + b] * other[b];
        out[a] += s;
      }
    } else if (e.col == agent) {
      const Vec& other = profile.policy(e.row);
      for (int a = 0; a < game.action_size(agent); ++a) {
        double s = 0.0;
        for (int b = 0; b < game.action_size(e.row); ++b) {
          s += e.payoff[b * cols + a] * other[b];
        }
        out[a] -= s;
      }
    }
  }
  for (double& x : out) x *= game.edge_scale();
  return out;
}

// Marginals for every agent, all taken against the same profile.
inline std::vector<Vec> AllMarginals(const StaticGame& game,
                                     const PolicyProfile& profile) {
  std::vector<Vec> out;
  out.reserve(game.num_agents());
  for (int i = 0; i < game.num_agents(); ++i) {
    out.push_back(MarginalizedReward(game, profile, i));
  }
  return out;
}

// r_i(pi) = E_{a ~ pi}[r_i(a)], computed as <pi_i, r_bar_i>.
inline double ExpectedReward(const StaticGame& game,
                             const PolicyProfile& profile, int agent) {
  return Dot(profile.policy(agent), MarginalizedReward(game, profile, agent));
}

// Shannon entropy in nats.
inline double Entropy(std::span<const double> policy) {
  double h = 0.0;
  for (double p : policy) h -= p * SafeLog(p);
  return h;
}

inline double RegularizedReward(const StaticGame& game,
                                const PolicyProfile& profile, int agent,
                                double tau) {
  CheckTau(tau);
  return ExpectedReward(game, profile, agent) +
         tau * Entropy(profile.policy(agent));
}

// log softmax(marginal / tau), exact in the log domain.
inline Vec LogSoftBestResponse(std::span<const double> marginal, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError("soft best response needs tau > 0");
  }
  Vec scaled(marginal.begin(), marginal.end());
  for (double& x : scaled) {
    if (!std::isfinite(x)) throw NumericError("non-finite marginal reward");
    x /= tau;
  }
  const double lse = LogSumExp(scaled);
  for (double& x : scaled) x -= lse;
  return scaled;
}

// pi* proportional to exp(marginal / tau).
inline Vec SoftBestResponse(std::span<const double> marginal, double tau) {
  Vec p = LogSoftBestResponse(marginal, tau);
  for (double& x : p) x = std::max(std::exp(x), kProbFloor);
  return p;
}

// KL(p || q) given log q; natural log.
inline double KlDivergenceToLog(std::span<const double> p,
                                std::span<const double> log_q) {
  double kl = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    kl += p[a] * (SafeLog(p[a]) - log_q[a]);
  }
  return kl;
}

// QRE gap from precomputed marginals: tau * KL(pi_i || softmax(r_bar_i/tau)).
inline GapReport QreGapFromMarginals(const PolicyProfile& profile,
                                     const std::vector<Vec>& marginals,
                                     double tau) {
  std::vector<double> gaps;
  for (int i = 0; i < profile.num_agents(); ++i) {
    const Vec log_star = LogSoftBestResponse(marginals[i], tau);
    gaps.push_back(tau * KlDivergenceToLog(profile.policy(i), log_star));
  }
  return MakeGapReport(std::move(gaps));
}

inline GapReport QreGap(const StaticGame& game, const PolicyProfile& profile,
                        double tau) {
  if (!(tau > 0.0)) throw ParameterError("QRE gap needs tau > 0");
  return QreGapFromMarginals(profile, AllMarginals(game, profile), tau);
}

// NE gap: max_a r_bar_i(a) - <pi_i, r_bar_i>, maximized over pure actions.
inline GapReport NeGapFromMarginals(const PolicyProfile& profile,
                                    const std::vector<Vec>& marginals) {
  std::vector<double> gaps;
  for (int i = 0; i < profile.num_agents(); ++i) {
    const Vec& r = marginals[i];
    const double best = *std::max_element(r.begin(), r.end());
    gaps.push_back(best - Dot(profile.policy(i), r));
  }
  return MakeGapReport(std::move(gaps));
}

inline GapReport NeGap(const StaticGame& game, const PolicyProfile& profile) {
  return NeGapFromMarginals(profile, AllMarginals(game, profile));
}

}  // namespace npg

#endif  // NPG_EQUILIBRIUM_H_
