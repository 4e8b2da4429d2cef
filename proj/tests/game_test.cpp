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

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "npg/equilibrium.h"
#include "npg/errors.h"
#include "npg/game.h"
#include "npg/generators.h"

namespace npg {
namespace {

StaticGame SingleAgent(Vec r) {
  const int m = static_cast<int>(r.size());
  return StaticGame::Dense({m}, {std::move(r)});
}

StaticGame SeededRandom(std::vector<int> sizes, std::uint64_t seed) {
  GameSpec spec;
  spec.action_sizes = std::move(sizes);
  spec.seed = seed;
  return RandomGame(spec);
}

// Matching pennies with rewards mapped from {-1, 1} to {0, 1}.
StaticGame MatchingPennies() {
  return StaticGame::Dense({2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}});
}

TEST(StaticGameTest, RejectsMalformedTensors) {
  EXPECT_THROW(StaticGame::Dense({2, 2}, {{0, 0, 0}, {0, 0, 0, 0}}),
               DimensionError);
  EXPECT_THROW(StaticGame::Dense({2}, {{0.5, 1.5}}), ParameterError);
  EXPECT_THROW(StaticGame::Dense({2, 2}, {{0, 0, 0, 0}}), DimensionError);
}

TEST(StaticGameTest, SumOfActionSizes) {
  const StaticGame g = SeededRandom({3, 4, 5}, 7);
  EXPECT_EQ(g.sum_of_action_sizes(), 12);
  EXPECT_EQ(g.num_joint_actions(), 60u);
}

TEST(PolicyProfileTest, RejectsZerosAndRenormalizes) {
  EXPECT_THROW(PolicyProfile({{1.0, 0.0}}), ParameterError);
  EXPECT_THROW(PolicyProfile({{0.5, -0.1, 0.6}}), ParameterError);
  const PolicyProfile p({{2.0, 6.0}});
  EXPECT_DOUBLE_EQ(p.policy(0)[0], 0.25);
  EXPECT_DOUBLE_EQ(p.policy(0)[1], 0.75);
}

TEST(ExpectedRewardTest, SingleAgentUniform) {
  const StaticGame g = SingleAgent({0.2, 0.8});
  EXPECT_DOUBLE_EQ(ExpectedReward(g, PolicyProfile({{0.5, 0.5}}), 0), 0.5);
}

TEST(ExpectedRewardTest, UniformProfileIsTensorMean) {
  const StaticGame g = SeededRandom({3, 4, 5}, 11);
  const PolicyProfile u = PolicyProfile::Uniform(g.action_sizes());
  for (int i = 0; i < 3; ++i) {
    const Vec& r = g.dense_rewards()[i];
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / r.size();
    EXPECT_NEAR(ExpectedReward(g, u, i), mean, 1e-14);
  }
}

TEST(ExpectedRewardTest, TwoByTwoMatchesHandEnumeration) {
  const StaticGame g = SeededRandom({2, 2}, 7);
  const PolicyProfile p = RandomProfile(g.action_sizes(), 7);
  for (int i = 0; i < 2; ++i) {
    const Vec& r = g.dense_rewards()[i];
    const Vec& x = p.policy(0);
    const Vec& y = p.policy(1);
    const double sum = x[0] * y[0] * r[0] + x[0] * y[1] * r[1] +
                       x[1] * y[0] * r[2] + x[1] * y[1] * r[3];
    EXPECT_NEAR(ExpectedReward(g, p, i), sum, 1e-15);
  }
}

TEST(ExpectedRewardTest, ShapeAndAgentErrors) {
  const StaticGame g = SeededRandom({2, 3}, 1);
  EXPECT_THROW(ExpectedReward(g, PolicyProfile::Uniform(std::vector{2, 2}), 0),
               DimensionError);
  EXPECT_THROW(ExpectedReward(g, PolicyProfile::Uniform(g.action_sizes()), 2),
               DimensionError);
}

TEST(MarginalizedRewardTest, SingleAgentIsRewardVector) {
  const Vec r = {0.1, 0.7, 0.3};
  const StaticGame g = SingleAgent(r);
  const Vec m =
      MarginalizedReward(g, PolicyProfile({{0.2, 0.3, 0.5}}), 0);
  EXPECT_EQ(m, r);
}

TEST(MarginalizedRewardTest, UniformOthersGiveSliceMean) {
  const StaticGame g = SeededRandom({3, 4}, 5);
  const PolicyProfile p({{0.1, 0.2, 0.7}, {1, 1, 1, 1}});
  const Vec m0 = MarginalizedReward(g, p, 0);
  const Vec& r = g.dense_rewards()[0];
  for (int a = 0; a < 3; ++a) {
    double mean = 0.0;
    for (int b = 0; b < 4; ++b) mean += r[a * 4 + b] / 4.0;
    EXPECT_NEAR(m0[a], mean, 1e-15);
  }
}

TEST(MarginalizedRewardTest, PointMassLimitGivesSlice) {
  const StaticGame g = SeededRandom({3, 4}, 5);
  const double eps = 1e-9;
  const PolicyProfile p({{1, 1, 1}, {eps, 1 - 3 * eps, eps, eps}});
  const Vec m0 = MarginalizedReward(g, p, 0);
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(m0[a], g.dense_rewards()[0][a * 4 + 1], 1e-8);
  }
}

TEST(MarginalizedRewardTest, IgnoresOwnPolicy) {
  const StaticGame g = SeededRandom({3, 4, 2}, 9);
  const PolicyProfile p = RandomProfile(g.action_sizes(), 1);
  const PolicyProfile q({{5, 1, 1}, p.policy(1), p.policy(2)});
  EXPECT_EQ(MarginalizedReward(g, p, 0), MarginalizedReward(g, q, 0));
}

TEST(MarginalizedRewardTest, PolymatrixStructuralMatchesMaterialized) {
  GameSpec spec;
  spec.kind = GameKind::kPolymatrixZeroSum;
  spec.action_sizes = {3, 4, 2, 3};
  spec.seed = 21;
  const StaticGame g = PolymatrixNetwork(spec);
  const StaticGame dense = g.Materialize();
  const PolicyProfile p = RandomProfile(g.action_sizes(), 4);
  for (int i = 0; i < 4; ++i) {
    const Vec a = MarginalizedReward(g, p, i);
    const Vec b = MarginalizedReward(dense, p, i);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-15);
  }
}

TEST(EntropyTest, KnownValues) {
  EXPECT_NEAR(Entropy(Vec{0.25, 0.25, 0.25, 0.25}), std::log(4.0), 1e-15);
  EXPECT_NEAR(Entropy(Vec{0.5, 0.5}), std::log(2.0), 1e-15);
  const double eps = 1e-12;
  EXPECT_LE(Entropy(Vec{1 - eps, eps}), 1e-10);
  EXPECT_GE(Entropy(Vec{1 - eps, eps}), 0.0);
}

TEST(RegularizedRewardTest, ZeroTauIsExpectedReward) {
  const StaticGame g = SeededRandom({3, 4, 5}, 7);
  const PolicyProfile p = RandomProfile(g.action_sizes(), 7);
  EXPECT_EQ(RegularizedReward(g, p, 1, 0.0), ExpectedReward(g, p, 1));
}

TEST(RegularizedRewardTest, UniformAddsTauLogM) {
  const StaticGame g = SeededRandom({3, 4, 5}, 7);
  const PolicyProfile u = PolicyProfile::Uniform(g.action_sizes());
  EXPECT_NEAR(RegularizedReward(g, u, 2, 0.7),
              ExpectedReward(g, u, 2) + 0.7 * std::log(5.0), 1e-14);
}

TEST(RegularizedRewardTest, ComposesFromExpectedRewardAndEntropy) {
  const StaticGame g = SeededRandom({3, 4, 5}, 7);
  const PolicyProfile p = RandomProfile(g.action_sizes(), 7);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(RegularizedReward(g, p, i, 1.0),
                ExpectedReward(g, p, i) + Entropy(p.policy(i)), 1e-14);
  }
  EXPECT_THROW(RegularizedReward(g, p, 0, -1.0), ParameterError);
}

TEST(SoftBestResponseTest, ConstantIsUniform) {
  const Vec p = SoftBestResponse(Vec{3.0, 3.0, 3.0}, 0.2);
  for (double x : p) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
}

TEST(SoftBestResponseTest, AnalyticTwoAction) {
  for (double tau : {0.01, 1.0, 37.0}) {
    const Vec p = SoftBestResponse(Vec{0.0, tau * std::log(2.0)}, tau);
    EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(p[1], 2.0 / 3.0, 1e-14);
  }
}

TEST(SoftBestResponseTest, HighTemperatureIsNearlyUniform) {
  const Vec p = SoftBestResponse(Vec{0.0, 1.0, 0.3, 0.9}, 1e6);
  for (double x : p) EXPECT_NEAR(x, 0.25, 1e-5);
}

TEST(SoftBestResponseTest, ZeroTauRejected) {
  EXPECT_THROW(SoftBestResponse(Vec{0.0, 1.0}, 0.0), ParameterError);
}

TEST(QreGapTest, ZeroAtSingleAgentFixedPoint) {
  const Vec r = {0.3, 0.9, 0.1};
  const StaticGame g = SingleAgent(r);
  const PolicyProfile star({SoftBestResponse(r, 0.5)});
  EXPECT_LE(QreGap(g, star, 0.5).max_gap, 1e-12);
}

TEST(QreGapTest, SingleAgentUniformMatchesHandKl) {
  const StaticGame g = SingleAgent({0.0, 1.0});
  const GapReport r = QreGap(g, PolicyProfile({{0.5, 0.5}}), 1.0);
  // KL(u || (1, e)/(1 + e)) = log(1 + e) - 1/2 - log 2.
  const double expected = std::log(1.0 + std::exp(1.0)) - 0.5 - std::log(2.0);
  EXPECT_NEAR(r.max_gap, expected, 1e-15);
}

TEST(QreGapTest, EqualsBestResponseImprovement) {
  const StaticGame g = SeededRandom({3, 4, 5}, 7);
  const PolicyProfile p = RandomProfile(g.action_sizes(), 7);
  const double tau = 0.3;
  const GapReport r = QreGap(g, p, tau);
  for (int i = 0; i < 3; ++i) {
    std::vector<Vec> policies = p.policies();
    policies[i] = SoftBestResponse(MarginalizedReward(g, p, i), tau);
    const double improvement =
        RegularizedReward(g, PolicyProfile(policies), i, tau) -
        RegularizedReward(g, p, i, tau);
    EXPECT_NEAR(r.per_agent_gaps[i], improvement, 1e-10);
  }
  EXPECT_EQ(r.max_gap, r.per_agent_gaps[r.arg_agent]);
}

TEST(NeGapTest, SingleAgentUniform) {
  const StaticGame g = SingleAgent({0.0, 1.0});
  EXPECT_DOUBLE_EQ(NeGap(g, PolicyProfile({{0.5, 0.5}})).max_gap, 0.5);
}

TEST(NeGapTest, MatchingPenniesUniformIsZero) {
  const StaticGame g = MatchingPennies();
  EXPECT_EQ(NeGap(g, PolicyProfile::Uniform(g.action_sizes())).max_gap, 0.0);
}

TEST(NeGapTest, DominantStrategyNearlyPure) {
  // Action 1 dominates for both agents.
  const StaticGame g =
      StaticGame::Dense({2, 2}, {{0.1, 0.2, 0.8, 0.9}, {0.0, 0.6, 0.3, 0.7}});
  const double eps = 1e-12;
  const PolicyProfile p({{eps, 1 - eps}, {eps, 1 - eps}});
  EXPECT_LE(NeGap(g, p).max_gap, 1e-10);
}

TEST(GapReportTest, ClampsRoundOffAndPicksMax) {
  const GapReport r = MakeGapReport({-1e-13, 0.2, 0.5, 0.1});
  EXPECT_EQ(r.per_agent_gaps[0], 0.0);
  EXPECT_EQ(r.max_gap, 0.5);
  EXPECT_EQ(r.arg_agent, 2);
}

}  // namespace
}  // namespace npg
