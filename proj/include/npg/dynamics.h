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

#ifndef NPG_DYNAMICS_H_
#define NPG_DYNAMICS_H_

// Entropy-regularized independent natural policy gradient on static games.
//
// Every agent simultaneously applies the closed-form softmax update
//
//   pi_i^{k+1}(a) ∝ pi_i^k(a)^{1 - eta*tau} * exp(eta * r_bar_i^k(a)),
//
// where all marginals r_bar_i^k are taken against the iteration-k profile.
// Alongside the policies the runner tracks the unnormalized log-policy
// sequence xi (log xi^0 = log pi^0 + log ||exp(r_bar^0 / tau)||_1) whose
// residual max_i ||log xi_i^k - r_bar_i^k / tau||_inf contracts by
// 1 - eta*tau + 2*eta*sum_i |A_i| per step and dominates QRE-gap / (2 tau).

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "npg/equilibrium.h"
#include "npg/errors.h"
#include "npg/game.h"

namespace npg {

inline constexpr int kDefaultMaxIters = 10000;
inline constexpr double kDefaultStopGap = 1e-12;

class DynamicsParams {
 public:
  DynamicsParams(double tau, double eta, int max_iters = kDefaultMaxIters,
                 double stop_gap = kDefaultStopGap)
      : tau_(tau), eta_(eta), max_iters_(max_iters), stop_gap_(stop_gap) {
    CheckTau(tau);
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw ParameterError("eta must be finite and positive");
    }
    // The exponent 1 - eta*tau must stay nonnegative.
    if (eta * tau > 1.0 + 1e-12) {
      throw ParameterError("eta * tau = " + std::to_string(eta * tau) +
                           " exceeds 1");
    }
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
    if (!(stop_gap >= 0.0)) throw ParameterError("stop_gap must be >= 0");
  }

  double tau() const { return tau_; }
  double eta() const { return eta_; }
  int max_iters() const { return max_iters_; }
  double stop_gap() const { return stop_gap_; }

  // Weight 1 - eta*tau on the previous log-policy.
  double retention() const { return std::max(0.0, 1.0 - eta_ * tau_); }

 private:
  double tau_;
  double eta_;
  int max_iters_;
  double stop_gap_;
};

// Log-domain update of one policy: (1 - eta*tau) log pi + eta * r_bar,
// normalized by log-sum-exp.
inline Vec NpgUpdatePolicy(std::span<const double> policy,
                           std::span<const double> marginal, double retention,
                           double step) {
  Vec logits(policy.size());
  for (std::size_t a = 0; a < policy.size(); ++a) {
    logits[a] = retention * SafeLog(policy[a]) + step * marginal[a];
    if (!std::isfinite(logits[a])) {
      throw NumericError("non-finite log-policy at action " +
                         std::to_string(a));
    }
  }
  const double lse = LogSumExp(logits);
  for (double& x : logits) x = std::max(std::exp(x - lse), kProbFloor);
  return logits;
}

inline PolicyProfile NpgStepFromMarginals(const PolicyProfile& profile,
                                          const std::vector<Vec>& marginals,
                                          const DynamicsParams& params) {
  std::vector<Vec> next;
  next.reserve(profile.num_agents());
  for (int i = 0; i < profile.num_agents(); ++i) {
    try {
      next.push_back(NpgUpdatePolicy(profile.policy(i), marginals[i],
                                     params.retention(), params.eta()));
    } catch (const NumericError& e) {
      throw NumericError("npg_step agent " + std::to_string(i) + ": " +
                         e.what());
    }
  }
  return PolicyProfile(std::move(next));
}

// One synchronous step for all agents.
inline PolicyProfile NpgStep(const StaticGame& game,
                             const PolicyProfile& profile,
                             const DynamicsParams& params) {
  return NpgStepFromMarginals(profile, AllMarginals(game, profile), params);
}

// eta_tau = 1 / (2 (tau - 2 sum_i |A_i|)), defined only above the threshold.
inline double DefaultLearningRate(const StaticGame& game, double tau) {
  const int total = game.sum_of_action_sizes();
  if (!(tau > 2.0 * total)) {
    throw ParameterError("no default learning rate for tau = " +
                         std::to_string(tau) + " <= 2 * sum|A_i| = " +
                         std::to_string(2 * total) + "; pass eta explicitly");
  }
  return 1.0 / (2.0 * (tau - 2.0 * total));
}

// rho = 1 - eta*tau + 2*eta*sum_i |A_i|.
inline double ContractionFactor(const StaticGame& game,
                                const DynamicsParams& params) {
  return 1.0 - params.eta() * params.tau() +
         2.0 * params.eta() * game.sum_of_action_sizes();
}

// True when tau > 2 sum|A_i|, eta < 1/(tau - 2 sum|A_i|) and rewards are
// bounded by one in magnitude.
inline bool ConvergenceHypothesesHold(const StaticGame& game,
                                      const DynamicsParams& params) {
  const double threshold = 2.0 * game.sum_of_action_sizes();
  return params.tau() > threshold &&
         params.eta() < 1.0 / (params.tau() - threshold) &&
         game.reward_range().TheoryScaled();
}

// max_i ||log pi_i - log softmax(r_bar_i / tau)||_inf.
inline double InitialLogDistance(const PolicyProfile& profile,
                                 const std::vector<Vec>& marginals,
                                 double tau) {
  double d = 0.0;
  for (int i = 0; i < profile.num_agents(); ++i) {
    const Vec log_star = LogSoftBestResponse(marginals[i], tau);
    const Vec& p = profile.policy(i);
    for (std::size_t a = 0; a < p.size(); ++a) {
      d = std::max(d, std::abs(SafeLog(p[a]) - log_star[a]));
    }
  }
  return d;
}

// Envelope 2 tau rho^k max_i ||log pi_i^0 - log pi_i^{0*}||_inf; NaN when
// the convergence hypotheses fail.
inline double TheoreticalBound(const StaticGame& game,
                               const PolicyProfile& initial,
                               const DynamicsParams& params, int k) {
  if (!ConvergenceHypothesesHold(game, params)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double d0 =
      InitialLogDistance(initial, AllMarginals(game, initial), params.tau());
  return 2.0 * params.tau() * std::pow(ContractionFactor(game, params), k) *
         d0;
}

// Log-domain auxiliary sequence, one vector log xi_i per agent.
struct AuxSequence {
  std::vector<Vec> log_xi;
};

inline AuxSequence AuxInitFromMarginals(const PolicyProfile& profile,
                                        const std::vector<Vec>& marginals,
                                        double tau) {
  if (!(tau > 0.0)) throw ParameterError("auxiliary sequence needs tau > 0");
  AuxSequence aux;
  for (int i = 0; i < profile.num_agents(); ++i) {
    Vec scaled = marginals[i];
    for (double& x : scaled) x /= tau;
    const double log_norm = LogSumExp(scaled);
    Vec log_xi;
    for (double p : profile.policy(i)) log_xi.push_back(SafeLog(p) + log_norm);
    aux.log_xi.push_back(std::move(log_xi));
  }
  return aux;
}

inline AuxSequence AuxInit(const StaticGame& game, const PolicyProfile& initial,
                           double tau) {
  return AuxInitFromMarginals(initial, AllMarginals(game, initial), tau);
}

// log xi^{k+1} = (1 - eta*tau) log xi^k + eta * r_bar^k.
inline AuxSequence AuxStep(const AuxSequence& aux,
                           const std::vector<Vec>& marginals,
                           const DynamicsParams& params) {
  if (marginals.size() != aux.log_xi.size()) {
    throw DimensionError("marginals do not match auxiliary sequence");
  }
  AuxSequence next = aux;
  for (std::size_t i = 0; i < next.log_xi.size(); ++i) {
    if (marginals[i].size() != next.log_xi[i].size()) {
      throw DimensionError("marginal length mismatch");
    }
    for (std::size_t a = 0; a < next.log_xi[i].size(); ++a) {
      next.log_xi[i][a] = params.retention() * next.log_xi[i][a] +
                          params.eta() * marginals[i][a];
    }
  }
  return next;
}

// max_i ||log xi_i - r_bar_i / tau||_inf.
inline double AuxResidual(const AuxSequence& aux,
                          const std::vector<Vec>& marginals, double tau) {
  if (!(tau > 0.0)) throw ParameterError("auxiliary residual needs tau > 0");
  double r = 0.0;
  for (std::size_t i = 0; i < aux.log_xi.size(); ++i) {
    for (std::size_t a = 0; a < aux.log_xi[i].size(); ++a) {
      r = std::max(r, std::abs(aux.log_xi[i][a] - marginals[i][a] / tau));
    }
  }
  return r;
}

struct IterateRecord {
  int iter = 0;
  double qre_gap = 0.0;  // NE gap when tau = 0
  double ne_gap = 0.0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  double aux_residual = std::numeric_limits<double>::quiet_NaN();
  std::chrono::duration<double, std::milli> wall_time{0};
};

struct Trajectory {
  std::vector<IterateRecord> records;
  PolicyProfile final_profile;
};

// Records iterate k before each step and once after the last step. Stops
// as soon as the recorded QRE gap falls below params.stop_gap().
inline Trajectory Run(const StaticGame& game, const PolicyProfile& initial,
                      const DynamicsParams& params) {
  initial.CheckShape(game.action_sizes());
  const auto start = std::chrono::steady_clock::now();
  const double tau = params.tau();
  const bool regularized = tau > 0.0;

  std::vector<Vec> marginals = AllMarginals(game, initial);
  const bool bounded = ConvergenceHypothesesHold(game, params);
  const double rho = ContractionFactor(game, params);
  const double bound0 =
      bounded ? 2.0 * tau * InitialLogDistance(initial, marginals, tau) : 0.0;

  AuxSequence aux;
  if (regularized) aux = AuxInitFromMarginals(initial, marginals, tau);

  std::vector<IterateRecord> records;
  PolicyProfile profile = initial;
  for (int k = 0;; ++k) {
    IterateRecord rec;
    rec.iter = k;
    rec.ne_gap = NeGapFromMarginals(profile, marginals).max_gap;
    rec.qre_gap = regularized
                      ? QreGapFromMarginals(profile, marginals, tau).max_gap
                      : rec.ne_gap;
    if (bounded) rec.bound = bound0 * std::pow(rho, k);
    if (regularized) rec.aux_residual = AuxResidual(aux, marginals, tau);
    rec.wall_time = std::chrono::steady_clock::now() - start;
    if (!std::isfinite(rec.qre_gap) || !std::isfinite(rec.ne_gap)) {
      throw NumericError("iteration " + std::to_string(k) +
                         ": non-finite gap");
    }
    records.push_back(rec);
    if (rec.qre_gap < params.stop_gap() || k == params.max_iters()) break;

    try {
      PolicyProfile next = NpgStepFromMarginals(profile, marginals, params);
      if (regularized) aux = AuxStep(aux, marginals, params);
      profile = std::move(next);
    } catch (const NumericError& e) {
      throw NumericError("iteration " + std::to_string(k) + ": " + e.what());
    }
    marginals = AllMarginals(game, profile);
  }
  return Trajectory{std::move(records), std::move(profile)};
}

}  // namespace npg

#endif  // NPG_DYNAMICS_H_
