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

#ifndef NPG_GRADIENT_H_
#define NPG_GRADIENT_H_

// Raw softmax parameterization and the Fisher-preconditioned policy gradient
// step. Under softmax the preconditioned step reproduces the closed-form
// multiplicative update in dynamics.h; this module exists to check that.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "npg/dynamics.h"
#include "npg/equilibrium.h"
#include "npg/errors.h"
#include "npg/game.h"

namespace npg {

inline constexpr double kPseudoInverseCutoff = 1e-10;

inline Vec Softmax(std::span<const double> theta) {
  if (theta.empty()) throw DimensionError("softmax of empty vector");
  for (double t : theta) {
    if (!std::isfinite(t)) throw NumericError("non-finite logit");
  }
  const double m = *std::max_element(theta.begin(), theta.end());
  Vec p(theta.size());
  double total = 0.0;
  for (std::size_t a = 0; a < theta.size(); ++a) {
    p[a] = std::exp(theta[a] - m);
    total += p[a];
  }
  for (double& x : p) x = std::max(x / total, kProbFloor);
  return p;
}

// Unconstrained logits theta_i, one vector per agent.
struct LogitProfile {
  std::vector<Vec> theta;

  PolicyProfile ToPolicyProfile() const {
    std::vector<Vec> policies;
    for (const Vec& t : theta) policies.push_back(Softmax(t));
    return PolicyProfile(std::move(policies));
  }

  // Mean-subtracted copy; softmax is invariant to per-agent shifts.
  LogitProfile Canonical() const {
    LogitProfile out = *this;
    for (Vec& t : out.theta) {
      double mean = 0.0;
      for (double x : t) mean += x;
      mean /= static_cast<double>(t.size());
      for (double& x : t) x -= mean;
    }
    return out;
  }

  static LogitProfile FromPolicies(const PolicyProfile& profile) {
    LogitProfile out;
    for (const Vec& p : profile.policies()) {
      Vec t;
      for (double x : p) t.push_back(SafeLog(x));
      out.theta.push_back(std::move(t));
    }
    return out;
  }
};

// d r_hat_i / d theta_i(a) = pi_i(a) (r_bar_i(a) - tau log pi_i(a) - r_hat_i).
inline Vec PolicyGradientFromMarginal(std::span<const double> policy,
                                      std::span<const double> marginal,
                                      double tau) {
  CheckTau(tau);
  Vec advantage(policy.size());
  double r_hat = 0.0;
  for (std::size_t a = 0; a < policy.size(); ++a) {
#ifdef NPG_CANARY
    // Deliberately wrong: drops the entropy term. Used only by the canary
    // build, whose verify run must fail.
    advantage[a] = marginal[a];
#else
    advantage[a] = marginal[a] - tau * SafeLog(policy[a]);
#endif
    r_hat += policy[a] * advantage[a];
  }
  Vec grad(policy.size());
  for (std::size_t a = 0; a < policy.size(); ++a) {
    grad[a] = policy[a] * (advantage[a] - r_hat);
  }
  return grad;
}

inline Vec PolicyGradient(const StaticGame& game, const PolicyProfile& profile,
                          int agent, double tau) {
  return PolicyGradientFromMarginal(
      profile.policy(agent), MarginalizedReward(game, profile, agent), tau);
}

// F = E_{a~pi}[grad log pi(a) grad log pi(a)^T] = diag(pi) - pi pi^T.
inline Eigen::MatrixXd FisherMatrix(std::span<const double> policy) {
  const auto m = static_cast<Eigen::Index>(policy.size());
  Eigen::Map<const Eigen::VectorXd> p(policy.data(), m);
  Eigen::MatrixXd f = -p * p.transpose();
  f.diagonal() += p;
  return f;
}

// Moore-Penrose pseudo-inverse of a symmetric PSD matrix via its
// eigendecomposition. Eigenvalues below cutoff * max eigenvalue are treated
// as zero. `expected_rank`, when nonnegative, must match the rank kept.
inline Eigen::MatrixXd SymmetricPseudoInverse(const Eigen::MatrixXd& f,
                                              int expected_rank = -1) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f);
  if (eig.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double top = values.cwiseAbs().maxCoeff();
  const double cutoff = kPseudoInverseCutoff * top;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(values.size());
  int rank = 0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] > cutoff) {
      inv[k] = 1.0 / values[k];
      ++rank;
    }
  }
  if (expected_rank >= 0 && rank != expected_rank) {
    throw NumericError("Fisher matrix rank " + std::to_string(rank) +
                       " after cutoff, expected " +
                       std::to_string(expected_rank));
  }
  return eig.eigenvectors() * inv.asDiagonal() *
         eig.eigenvectors().transpose();
}

// theta_i <- theta_i + eta F_i^+ d r_hat_i / d theta_i for every agent, with
// all gradients taken at the current profile.
inline LogitProfile NpgStepViaFisher(const StaticGame& game,
                                     const LogitProfile& logits,
                                     const DynamicsParams& params) {
  const PolicyProfile profile = logits.ToPolicyProfile();
  profile.CheckShape(game.action_sizes());
  LogitProfile next = logits;
  for (int i = 0; i < game.num_agents(); ++i) {
    const Vec& p = profile.policy(i);
    const Vec grad = PolicyGradient(game, profile, i, params.tau());
    const Eigen::MatrixXd pinv = SymmetricPseudoInverse(
        FisherMatrix(p), static_cast<int>(p.size()) - 1);
    Eigen::Map<const Eigen::VectorXd> g(grad.data(),
                                        static_cast<Eigen::Index>(grad.size()));
    const Eigen::VectorXd direction = pinv * g;
    for (std::size_t a = 0; a < p.size(); ++a) {
      next.theta[i][a] += params.eta() * direction[static_cast<Eigen::Index>(a)];
      if (!std::isfinite(next.theta[i][a])) {
        throw NumericError("non-finite logit for agent " + std::to_string(i));
      }
    }
  }
  return next;
}

}  // namespace npg

#endif  // NPG_GRADIENT_H_
