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

#ifndef NPG_VERIFY_H_
#define NPG_VERIFY_H_

// Property suites run by `npg verify`. Every suite draws seeded instances,
// compares library results against npg::oracle or against the stated
// inequality, and counts violations. Suites are independent and run
// concurrently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "npg/dynamics.h"
#include "npg/equilibrium.h"
#include "npg/format.h"
#include "npg/game.h"
#include "npg/generators.h"
#include "npg/gradient.h"
#include "npg/markov.h"
#include "npg/oracles.h"
#include "npg/rng.h"

namespace npg {

struct SuiteResult {
  std::string name;
  int instances = 0;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> messages;  // first few failures only

  bool ok() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool ok() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.ok(); });
  }
};

namespace verify_internal {

inline constexpr std::size_t kMaxMessages = 8;

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void BeginInstance(std::uint64_t seed) {
    seed_ = seed;
    ++result_.instances;
  }

  // Records `value <= limit`; NaN fails.
  void Le(double value, double limit, const char* what) {
    ++result_.checks;
    if (value <= limit) return;
    ++result_.failures;
    if (result_.messages.size() < kMaxMessages) {
      result_.messages.push_back("seed " + std::to_string(seed_) + ": " +
                                 what + " (" + FormatDouble(value) + " > " +
                                 FormatDouble(limit) + ")");
    }
  }

  void True(bool ok, const char* what) { Le(ok ? 0.0 : 1.0, 0.0, what); }

  SuiteResult Take() { return std::move(result_); }

 private:
  SuiteResult result_;
  std::uint64_t seed_ = 0;
};

inline int Draw(Stream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.NextU64() % static_cast<std::uint64_t>(
                                                  hi - lo + 1));
}

// 1-3 agents with 2-4 actions each (sum |A_i| <= 12); about a third of the
// multi-agent instances are polymatrix so both reward paths get exercised.
inline StaticGame SmallGame(std::uint64_t seed) {
  Stream rng(seed, "verify_shape");
  const int n = Draw(rng, 1, 3);
  GameSpec spec;
  spec.seed = seed;
  for (int i = 0; i < n; ++i) spec.action_sizes.push_back(Draw(rng, 2, 4));
  if (n >= 2 && rng.Uniform() < 1.0 / 3.0) {
    spec.kind = GameKind::kPolymatrixZeroSum;
    return PolymatrixNetwork(spec);
  }
  return RandomGame(spec);
}

inline PolicyProfile SmallProfile(const StaticGame& game, std::uint64_t seed) {
  return RandomProfile(game.action_sizes(), Mix64(seed));
}

inline std::vector<int> RandomPermutation(int n, Stream& rng) {
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = k;
  for (int k = n - 1; k > 0; --k) std::swap(perm[k], perm[Draw(rng, 0, k)]);
  return perm;
}

inline double SupDiff(const PolicyProfile& a, const PolicyProfile& b) {
  double d = 0.0;
  for (int i = 0; i < a.num_agents(); ++i) {
    d = std::max(d, MaxAbsDiff(a.policy(i), b.policy(i)));
  }
  return d;
}

inline double SupDiff(const StatePolicyProfile& a, const PolicyProfile& b) {
  return SupDiff(a.at(0), b);
}

inline double SupDiff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, MaxAbsDiff(a[k], b[k]));
  return d;
}

}  // namespace verify_internal

// Gaps, rewards and marginals against enumeration.
inline SuiteResult VerifyGameModel(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("game_model");
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_game_model");
    const StaticGame game = SmallGame(seed);
    const PolicyProfile profile = SmallProfile(game, seed);
    const double tau = rng.Uniform(0.05, 5.0);
    const GapReport qre = QreGap(game, profile, tau);
    const GapReport ne = NeGap(game, profile);
    for (int i = 0; i < game.num_agents(); ++i) {
      const Vec r_bar = MarginalizedReward(game, profile, i);
      const Vec oracle_r = oracle::Marginal(game, profile, i);
      rec.Le(MaxAbsDiff(r_bar, oracle_r), 1e-12, "marginal vs enumeration");
      const double expected = oracle::ExpectedReward(game, profile, i);
      rec.Le(std::abs(ExpectedReward(game, profile, i) - expected), 1e-12,
             "expected reward vs enumeration");
      rec.Le(std::abs(Dot(profile.policy(i), r_bar) - expected), 1e-12,
             "expected reward vs <pi, r_bar>");

      const Vec star = oracle::Boltzmann(oracle_r, tau);
      const double kl_gap = tau * oracle::Kl(profile.policy(i), star);
      rec.Le(-kl_gap, 1e-10, "qre gap nonnegative");
      rec.Le(-qre.per_agent_gaps[i], 0.0, "reported qre gap nonnegative");
      rec.Le(std::abs(qre.per_agent_gaps[i] - kl_gap), 1e-10,
             "qre gap vs direct KL");
      const double improvement =
          oracle::RegularizedReward(
              game, oracle::ReplacePolicy(profile, i, star), i, tau) -
          oracle::RegularizedReward(game, profile, i, tau);
      rec.Le(std::abs(qre.per_agent_gaps[i] - improvement), 1e-10,
             "qre gap vs best-response improvement");

      const double best = *std::max_element(oracle_r.begin(), oracle_r.end());
      rec.Le(-(best - expected), 1e-12, "ne gap nonnegative");
      rec.Le(std::abs(ne.per_agent_gaps[i] - std::max(0.0, best - expected)),
             1e-12, "ne gap vs enumeration");

      // Shift invariance of qre_gap / tau.
      const double c = rng.Uniform(-5.0, 5.0);
      const StaticGame shifted = oracle::ShiftRewards(game, i, c);
      const double shifted_gap =
          QreGap(shifted, profile, tau).per_agent_gaps[i];
      rec.Le(std::abs(shifted_gap / tau - qre.per_agent_gaps[i] / tau), 1e-10,
             "qre gap shift invariance");

      // Linearity of r_bar_i in another agent's policy.
      if (game.num_agents() >= 2) {
        const int j = (i + 1) % game.num_agents();
        const double lambda = rng.Uniform();
        const Vec other = RandomProfile(game.action_sizes(), seed + 7919).policy(j);
        Vec mix(other.size());
        for (std::size_t a = 0; a < mix.size(); ++a) {
          mix[a] = lambda * profile.policy(j)[a] + (1.0 - lambda) * other[a];
        }
        const Vec r_other = MarginalizedReward(
            game, oracle::ReplacePolicy(profile, j, other), i);
        const Vec r_mix = MarginalizedReward(
            game, oracle::ReplacePolicy(profile, j, mix), i);
        Vec combo(r_mix.size());
        for (std::size_t a = 0; a < combo.size(); ++a) {
          combo[a] = lambda * r_bar[a] + (1.0 - lambda) * r_other[a];
        }
        rec.Le(MaxAbsDiff(r_mix, combo), 1e-12, "marginal linearity");
      }
    }
  }
  return rec.Take();
}

// Log-softmax is 2-Lipschitz in sup norm, and the joint L1 distance is at
// most the sum of marginal L1 distances.
inline SuiteResult VerifyInequalities(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("inequalities");
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_inequalities");
    const int m = Draw(rng, 2, 10);
    const double spread = rng.Uniform(0.1, 10.0);
    Vec t1(m), t2(m);
    double theta_dist = 0.0;
    for (int a = 0; a < m; ++a) {
      t1[a] = rng.Uniform(-spread, spread);
      t2[a] = rng.Uniform(-spread, spread);
      theta_dist = std::max(theta_dist, std::abs(t1[a] - t2[a]));
    }
    const double l1 = LogSumExp(t1), l2 = LogSumExp(t2);
    double log_dist = 0.0;
    for (int a = 0; a < m; ++a) {
      log_dist = std::max(log_dist, std::abs((t1[a] - l1) - (t2[a] - l2)));
    }
    rec.Le(log_dist - 2.0 * theta_dist, 1e-12, "log-softmax Lipschitz");

    const StaticGame game = SmallGame(seed);
    const PolicyProfile p = SmallProfile(game, seed);
    const PolicyProfile q = RandomProfile(game.action_sizes(), Mix64(seed + 1));
    double marginal_sum = 0.0;
    for (int i = 0; i < p.num_agents(); ++i) {
      for (std::size_t a = 0; a < p.policy(i).size(); ++a) {
        marginal_sum += std::abs(p.policy(i)[a] - q.policy(i)[a]);
      }
    }
    rec.Le(oracle::JointL1Distance(p, q) - marginal_sum, 1e-12, "joint L1 vs marginal sum");
  }
  return rec.Take();
}

// Structural properties of npg_step and the contraction chain.
inline SuiteResult VerifyDynamics(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("dynamics");
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_dynamics");
    const StaticGame game = SmallGame(seed);
    const PolicyProfile profile = SmallProfile(game, seed);
    const double tau = rng.Uniform(0.05, 5.0);
    const double eta = rng.Uniform(0.01, std::min(1.0, 1.0 / tau));
    const DynamicsParams params(tau, eta);
    const PolicyProfile next = NpgStep(game, profile, params);

    bool positive = true;
    for (const Vec& p : next.policies()) {
      for (double x : p) positive = positive && x > 0.0;
    }
    rec.True(positive, "support preservation");

    const std::vector<int> perm = RandomPermutation(game.num_agents(), rng);
    const PolicyProfile relabeled =
        NpgStep(oracle::PermuteAgents(game, perm),
                oracle::PermuteProfile(profile, perm), params);
    rec.Le(SupDiff(relabeled, oracle::PermuteProfile(next, perm)), 1e-12,
           "relabeling invariance");

    const int agent = Draw(rng, 0, game.num_agents() - 1);
    const StaticGame shifted =
        oracle::ShiftRewards(game, agent, rng.Uniform(-5.0, 5.0));
    rec.Le(SupDiff(NpgStep(shifted, profile, params), next), 1e-12,
           "shift covariance");

    const DynamicsParams plain(0.0, eta);
    rec.Le(SupDiff(NpgStep(game, profile, plain),
                   oracle::MwuStep(game, profile, eta)),
           1e-12, "tau = 0 step vs multiplicative weights");

    // Single agent: the soft best response is the unique fixed point.
    {
      GameSpec spec;
      spec.seed = seed;
      spec.action_sizes = {Draw(rng, 2, 6)};
      const StaticGame single = RandomGame(spec);
      const PolicyProfile fixed({SoftBestResponse(
          single.dense_rewards()[0], tau)});
      rec.Le(SupDiff(NpgStep(single, fixed, params), fixed), 1e-12,
             "fixed point");
    }

    // Convergence hypotheses: tau > 2 sum|A_i|, eta < 1/(tau - 2 sum|A_i|).
    const double threshold = 2.0 * game.sum_of_action_sizes();
    const double big_tau = threshold + rng.Uniform(1.0, 50.0);
    const double big_eta = rng.Uniform(0.05, 0.999) *
                           std::min(1.0 / (big_tau - threshold), 1.0 / big_tau);
    const DynamicsParams theory(big_tau, big_eta, 40, 0.0);
    rec.True(ConvergenceHypothesesHold(game, theory), "hypotheses hold");
    const double rho = ContractionFactor(game, theory);
    const Trajectory run = Run(game, profile, theory);
    for (std::size_t r = 0; r < run.records.size(); ++r) {
      const IterateRecord& now = run.records[r];
      rec.Le(now.qre_gap - now.bound, 1e-10, "envelope");
      rec.Le(now.qre_gap - 2.0 * big_tau * now.aux_residual, 1e-12,
             "gap below residual");
      if (r > 0) {
        rec.Le(now.aux_residual - rho * run.records[r - 1].aux_residual, 1e-12,
               "per-step contraction");
      }
    }
  }
  return rec.Take();
}

// Policy gradient, Fisher matrix and the Fisher-preconditioned step.
inline SuiteResult VerifyGradient(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("gradient");
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_gradient");
    const StaticGame game = SmallGame(seed);
    const PolicyProfile profile = SmallProfile(game, seed);
    const double tau = rng.Uniform(0.0, 5.0);
    for (int i = 0; i < game.num_agents(); ++i) {
      const Vec grad = PolicyGradient(game, profile, i, tau);
      double sum = 0.0;
      for (double g : grad) sum += g;
      rec.Le(std::abs(sum), 1e-12, "gradient tangency");
      const Vec fd = oracle::FiniteDifferenceGradient(game, profile, i, tau);
      double worst = 0.0;
      for (std::size_t a = 0; a < grad.size(); ++a) {
        worst = std::max(worst,
                         std::abs(grad[a] - fd[a]) / (1.0 + std::abs(grad[a])));
      }
      rec.Le(worst, 1e-6, "gradient vs finite differences");

      if (tau > 0.0) {
        const Vec star =
            SoftBestResponse(MarginalizedReward(game, profile, i), tau);
        const Vec at_star = PolicyGradient(
            game, oracle::ReplacePolicy(profile, i, star), i, tau);
        double norm = 0.0;
        for (double g : at_star) norm = std::max(norm, std::abs(g));
        rec.Le(norm, 1e-12, "gradient vanishes at soft best response");
      }

      const Vec& p = profile.policy(i);
      const Eigen::MatrixXd f = FisherMatrix(p);
      rec.True(f == f.transpose(), "Fisher symmetry");
      rec.Le((f * Eigen::VectorXd::Ones(f.rows())).cwiseAbs().maxCoeff(),
             1e-14, "Fisher null space");
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f);
      rec.Le(-eig.eigenvalues().minCoeff(), 1e-12, "Fisher PSD");
      const std::vector<Vec> explicit_f = oracle::ExplicitFisher(p);
      double diff = 0.0;
      for (Eigen::Index r = 0; r < f.rows(); ++r) {
        for (Eigen::Index c = 0; c < f.cols(); ++c) {
          diff = std::max(diff, std::abs(f(r, c) - explicit_f[r][c]));
        }
      }
      rec.Le(diff, 1e-14, "Fisher closed form vs explicit sum");
    }

    const double bridge_tau = rng.Uniform(0.5, 50.0);
    const double bridge_eta = rng.Uniform(0.01, 1.0) / bridge_tau;
    const DynamicsParams params(bridge_tau, bridge_eta);
    const PolicyProfile via_fisher =
        NpgStepViaFisher(game, LogitProfile::FromPolicies(profile), params)
            .ToPolicyProfile();
    rec.Le(SupDiff(via_fisher, NpgStep(game, profile, params)), 1e-8,
           "Fisher step vs closed-form step");
  }
  return rec.Take();
}

// Generator determinism, zero-sum structure and stochastic kernels.
inline SuiteResult VerifyGenerators(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("generators");
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_generators");

    GameSpec poly;
    poly.kind = GameKind::kPolymatrixZeroSum;
    poly.seed = seed;
    const int n = Draw(rng, 2, 6);
    for (int i = 0; i < n; ++i) poly.action_sizes.push_back(Draw(rng, 2, 5));
    if (n >= 3 && rng.Uniform() < 0.5) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (rng.Uniform() < 0.6) poly.edges.emplace_back(i, j);
        }
      }
    }
    const StaticGame g1 = PolymatrixNetwork(poly);
    const StaticGame g2 = PolymatrixNetwork(poly);
    const StaticGame dense = g1.Materialize();
    rec.True(dense.dense_rewards() == g2.Materialize().dense_rewards(),
             "polymatrix determinism");

    const std::vector<int>& sizes = dense.action_sizes();
    auto check_joint = [&](const std::vector<int>& joint) {
      double total = 0.0;
      bool in_range = true;
      for (int i = 0; i < n; ++i) {
        const double r = g1.Reward(i, joint);
        total += r;
        in_range = in_range && dense.reward_range().Contains(r);
      }
      rec.Le(std::abs(total), 1e-12, "zero-sum identity");
      rec.True(in_range, "polymatrix reward range");
    };
    if (g1.sum_of_action_sizes() <= 20) {
      std::vector<int> joint(sizes.size(), 0);
      do check_joint(joint);
      while (NextJointAction(sizes, joint));
    } else {
      for (int t = 0; t < 10000; ++t) {
        std::vector<int> joint;
        for (int m : sizes) joint.push_back(Draw(rng, 0, m - 1));
        check_joint(joint);
      }
    }
    const PolicyProfile profile = RandomProfile(sizes, seed);
    for (int i = 0; i < n; ++i) {
      rec.Le(MaxAbsDiff(MarginalizedReward(g1, profile, i),
                        MarginalizedReward(dense, profile, i)),
             1e-12, "structural vs materialized marginal");
    }

    GameSpec rs;
    rs.seed = seed;
    rs.action_sizes = {Draw(rng, 2, 4), Draw(rng, 2, 4)};
    const StaticGame r1 = RandomGame(rs);
    rec.True(r1.dense_rewards() == RandomGame(rs).dense_rewards(),
             "random game determinism");
    bool unit = true;
    for (const Vec& r : r1.dense_rewards()) {
      for (double x : r) unit = unit && x >= 0.0 && x <= 1.0;
    }
    rec.True(unit, "random game range");

    GameSpec ms;
    ms.kind = GameKind::kRandomMarkov;
    ms.seed = seed;
    ms.action_sizes = {Draw(rng, 2, 3), Draw(rng, 2, 3)};
    ms.num_states = Draw(rng, 1, 4);
    const MarkovGame mg = RandomMarkovGame(ms);
    rec.True(mg.kernel() == RandomMarkovGame(ms).kernel() &&
                 mg.rewards() == RandomMarkovGame(ms).rewards(),
             "Markov game determinism");
    const int states = mg.num_states();
    for (int s = 0; s < states; ++s) {
      for (std::size_t a = 0; a < mg.num_joint_actions(); ++a) {
        double total = 0.0;
        bool positive = true;
        for (int t = 0; t < states; ++t) {
          total += mg.Transition(s, a, t);
          positive = positive && mg.Transition(s, a, t) > 0.0;
        }
        rec.Le(std::abs(total - 1.0), 1e-12, "kernel row sum");
        rec.True(positive, "kernel row positive");
      }
    }
  }
  return rec.Take();
}

// Markov evaluation, advantage, value iteration and the |S| = 1 reduction.
inline SuiteResult VerifyMarkov(int seed_count, std::uint64_t base = 0) {
  using namespace verify_internal;
  Recorder rec("markov");
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (int k = 0; k < seed_count; ++k) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
    rec.BeginInstance(seed);
    Stream rng(seed, "verify_markov");
    GameSpec spec;
    spec.kind = GameKind::kRandomMarkov;
    spec.seed = seed;
    spec.action_sizes = {Draw(rng, 2, 3), Draw(rng, 2, 3)};
    spec.num_states = Draw(rng, 2, 4);
    spec.gamma = rng.Uniform(0.5, 0.95);
    const MarkovGame game = RandomMarkovGame(spec);
    const StatePolicyProfile profile = RandomStateProfile(
        spec.num_states, spec.action_sizes, Mix64(seed));
    const double tau = rng.Uniform(0.05, 2.0);

    const std::vector<Vec> values = EvaluatePolicy(game, profile, tau);
    rec.Le(SupDiff(values, oracle::PowerSeriesValues(game, profile, tau)),
           1e-8, "evaluation vs power series");

    for (int i = 0; i < game.num_agents(); ++i) {
      const std::vector<Vec> adv =
          MarginalizedAdvantage(game, profile, i, tau);
      rec.Le(SupDiff(adv, oracle::Advantage(game, profile, i, values[i])),
             1e-10, "advantage vs enumeration");
      for (int s = 0; s < game.num_states(); ++s) {
        rec.Le(std::abs(Dot(profile.at(s).policy(i), adv[s])), 1e-12,
               "advantage centering");
      }
      const ValueIterationResult vi =
          SoftValueIteration(InduceMdp(game, profile, i), game.gamma(), tau);
      double scale = 0.0;
      for (double v : vi.values) scale = std::max(scale, std::abs(v));
      // Successive sweeps contract by gamma up to the rounding of one sweep.
      for (std::size_t t = 1; t < vi.sup_diffs.size(); ++t) {
        rec.Le(vi.sup_diffs[t] -
                   (game.gamma() + 1e-12) * vi.sup_diffs[t - 1],
               4.0 * kEps * scale, "value iteration contraction");
      }
    }

    // Linearity of evaluation in the reward at tau = 0.
    {
      std::vector<std::vector<Vec>> ra = game.rewards(), rb = game.rewards(),
                                    rsum = game.rewards();
      for (std::size_t i = 0; i < rb.size(); ++i) {
        for (std::size_t s = 0; s < rb[i].size(); ++s) {
          for (std::size_t a = 0; a < rb[i][s].size(); ++a) {
            rb[i][s][a] = rng.Uniform();
            rsum[i][s][a] = ra[i][s][a] + rb[i][s][a];
          }
        }
      }
      auto with = [&](std::vector<std::vector<Vec>> r) {
        return MarkovGame(game.num_states(), game.action_sizes(), std::move(r),
                          game.kernel(), game.gamma(), game.initial_dist(),
                          {0.0, 2.0});
      };
      const std::vector<Vec> va = EvaluatePolicy(with(ra), profile, 0.0);
      const std::vector<Vec> vb = EvaluatePolicy(with(rb), profile, 0.0);
      const std::vector<Vec> vs = EvaluatePolicy(with(rsum), profile, 0.0);
      std::vector<Vec> combo = va;
      for (std::size_t i = 0; i < combo.size(); ++i) {
        for (std::size_t s = 0; s < combo[i].size(); ++s) {
          combo[i][s] += vb[i][s];
        }
      }
      rec.Le(SupDiff(vs, combo), 1e-10, "evaluation linearity");
    }

    // |S| = 1, gamma = 0 reduces to the static game.
    {
      const StaticGame stat = SmallGame(seed);
      const MarkovGame embedded = EmbedStaticGame(stat);
      PolicyProfile p = SmallProfile(stat, seed);
      StatePolicyProfile sp({p});
      const double eta = rng.Uniform(0.01, std::min(1.0, 1.0 / tau));
      const DynamicsParams params(tau, eta);
      rec.Le(std::abs(MarkovQreGap(embedded, sp, tau).max_gap -
                      QreGap(stat, p, tau).max_gap),
             1e-10, "reduction: gap");
      for (int step = 0; step < 20; ++step) {
        p = NpgStep(stat, p, params);
        sp = MarkovNpgStep(embedded, sp, params);
      }
      rec.Le(SupDiff(sp, p), 1e-10, "reduction: 20-step trajectory");
    }
  }
  return rec.Take();
}

struct VerifySuite {
  const char* name;
  SuiteResult (*run)(int, std::uint64_t);
};

inline const std::vector<VerifySuite>& AllVerifySuites() {
  static const std::vector<VerifySuite> suites = {
      {"game_model", VerifyGameModel}, {"inequalities", VerifyInequalities},
      {"dynamics", VerifyDynamics},    {"gradient", VerifyGradient},
      {"generators", VerifyGenerators}, {"markov", VerifyMarkov},
  };
  return suites;
}

// Runs every suite concurrently; results keep the declared suite order.
inline VerifyReport RunVerify(int seed_count, std::uint64_t base = 0) {
  if (seed_count < 1) throw ParameterError("seed count must be >= 1");
  std::vector<std::future<SuiteResult>> pending;
  for (const VerifySuite& suite : AllVerifySuites()) {
    pending.push_back(
        std::async(std::launch::async, suite.run, seed_count, base));
  }
  VerifyReport report;
  for (auto& f : pending) report.suites.push_back(f.get());
  return report;
}

}  // namespace npg

#endif  // NPG_VERIFY_H_
