// Copyright 2026 The Infolab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infolab/game.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "infolab/errors.h"
#include "infolab/linear_program.h"
#include "test_util.h"

namespace infolab {
namespace {

using testing::Indexed;
using testing::RandomChannel;
using testing::RandomJoint;
using testing::RandomSimplex;
using testing::RandomTeam;
using testing::RandomZeroSum;

SpacePtr Singleton() { return Indexed(1); }

JointMeasure UniformBinary(const std::vector<Channel>& channels) {
  return Join(Measure::Uniform(Indexed(2)), channels);
}

Channel Uninformative(SpacePtr from, SpacePtr to) {
  std::vector<double> row(to->size(), 1.0 / to->size());
  return Channel::Constant(std::move(from), std::move(to), row);
}

// Matching pennies: singleton state and measurements, c = 1 if u1 = u2.
Game MatchingPennies() {
  auto two = Indexed(2);
  return Game::ZeroSum(Singleton(), two, two, {1, -1, -1, 1});
}

JointMeasure SingletonJoint() {
  auto one = Singleton();
  std::vector<Channel> ch{Channel::Identity(one), Channel::Identity(one)};
  return Join(Measure::Uniform(one), ch);
}

// Maximizer guesses x; the minimizer has a single dummy action.
Game GuessingGame() {
  auto two = Indexed(2);
  return Game::ZeroSum(two, Singleton(), two, {1, 0, 0, 1});
}

// ----------------------------------------------------------- expected cost

TEST(ExpectedCostTest, ConstantCost) {
  std::mt19937_64 rng(1);
  auto joint = RandomJoint(rng, 3, {2, 2});
  Game game = Game::Team(Indexed(3), {Indexed(2), Indexed(3)},
                         std::vector<double>(18, 2.5));
  auto profile = ConstantProfile(game, joint, 1);
  EXPECT_NEAR(ExpectedCost(game, joint, profile, 1), 2.5, 1e-15);
  Channel rule(joint.factor_ptr(2), Indexed(3), {0.2, 0.3, 0.5, 1.0, 0.0, 0.0});
  profile[1] = Policy::Behavioral(2, rule);
  EXPECT_NEAR(ExpectedCost(game, joint, profile, 2), 2.5, 1e-15);
}

TEST(ExpectedCostTest, InformedAndUninformedGuess) {
  auto two = Indexed(2);
  // c = 1{u1 != x}, a single player.
  Game game = Game::Team(two, {two}, {0, 1, 1, 0});
  auto informed = UniformBinary({Channel::Identity(two)});
  std::vector<Policy> copy{Policy::Deterministic(1, two, two, {0, 1})};
  EXPECT_EQ(ExpectedCost(game, informed, copy, 1), 0.0);
  auto blind = UniformBinary({Uninformative(two, two)});
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::vector<Policy> p{Policy::Deterministic(1, two, two, {a, b})};
      EXPECT_NEAR(ExpectedCost(game, blind, p, 1), 0.5, 1e-15);
    }
  }
}

TEST(ExpectedCostTest, BoundedByCostNorm) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto joint = RandomJoint(rng, 3, {2, 3});
    Game game = RandomZeroSum(rng, Indexed(3), 2, 3, 4.0);
    std::vector<Policy> p{
        Policy::Behavioral(1, RandomChannel(rng, joint.factor_ptr(1), Indexed(2))),
        Policy::Behavioral(2, RandomChannel(rng, joint.factor_ptr(2), Indexed(3)))};
    double c1 = ExpectedCost(game, joint, p, 1);
    EXPECT_LE(std::abs(c1), game.CostBound());
    EXPECT_NEAR(ExpectedCost(game, joint, p, 2), -c1, 1e-14);
  }
}

TEST(ExpectedCostTest, RejectsMismatchedInputs) {
  std::mt19937_64 rng(3);
  auto joint = RandomJoint(rng, 2, {2, 2});
  Game game = GuessingGame();
  auto profile = ConstantProfile(game, joint);
  EXPECT_THROW(ExpectedCost(game, joint, std::span(profile).first(1), 1),
               DimensionError);
  auto wrong = RandomJoint(rng, 3, {2, 2});
  EXPECT_THROW(ExpectedCost(game, wrong, profile, 1), DimensionError);
  profile[0] = Policy::Deterministic(1, joint.factor_ptr(1), Indexed(2), {0, 0});
  EXPECT_THROW(ExpectedCost(game, joint, profile, 1), DimensionError);
}

TEST(GameTest, ValidatesKinds) {
  auto two = Indexed(2);
  EXPECT_THROW(Game(two, {two, two}, {{0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1}},
                    GameKind::kZeroSum),
               PreconditionError);
  EXPECT_THROW(Game(two, {two}, {{0, 0, 0, 1}}, GameKind::kZeroSum), PreconditionError);
  EXPECT_THROW(Game(two, {two, two}, {{1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 2}},
                    GameKind::kTeam),
               PreconditionError);
  EXPECT_THROW(Game::Team(two, {two}, {0, 1, 2}), DimensionError);
  EXPECT_THROW(Game::Team(two, {two}, {0, 1, 2, NAN}), PreconditionError);
}

TEST(GameTest, TabulateMatchesCellIndex) {
  auto x = Indexed(3);
  std::vector<SpacePtr> actions{Indexed(2), Indexed(4)};
  auto table = Game::Tabulate(*x, actions, [](int s, std::span<const int> u) {
    return 100.0 * s + 10.0 * u[0] + u[1];
  });
  Game game(x, actions, {table, table}, GameKind::kGeneral);
  int u[2] = {1, 3};
  EXPECT_EQ(game.Cost(2, 2, u), 213.0);
}

// ---------------------------------------------------------------- zero sum

TEST(ZeroSumTest, MatchingPennies) {
  auto report = ZeroSumValue(MatchingPennies(), SingletonJoint());
  EXPECT_NEAR(report.value, 0.0, 1e-12);
  for (const auto& policy : report.policies) {
    EXPECT_NEAR(policy.Weight(0, 0), 0.5, 1e-12);
    EXPECT_NEAR(policy.Weight(0, 1), 0.5, 1e-12);
  }
  EXPECT_LT(report.certificate.duality_gap, kDualityTolerance);
  EXPECT_NEAR(ZeroSumValueOracle(MatchingPennies(), SingletonJoint()), 0.0, 1e-12);
}

TEST(ZeroSumTest, GuessingGame) {
  auto two = Indexed(2);
  auto informed = UniformBinary({Channel::Identity(two), Channel::Identity(two)});
  EXPECT_NEAR(ZeroSumValue(GuessingGame(), informed).value, 1.0, 1e-12);
  EXPECT_NEAR(ZeroSumValueOracle(GuessingGame(), informed), 1.0, 1e-12);
  auto blind = UniformBinary({Channel::Identity(two), Uninformative(two, two)});
  EXPECT_NEAR(ZeroSumValue(GuessingGame(), blind).value, 0.5, 1e-12);
  EXPECT_NEAR(ZeroSumValueOracle(GuessingGame(), blind), 0.5, 1e-12);
}

TEST(ZeroSumTest, EquilibriumPoliciesAttainTheValue) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto joint = RandomJoint(rng, 3, {2, 3}, 0.2);
    Game game = RandomZeroSum(rng, Indexed(3), 3, 2);
    auto report = ZeroSumValue(game, joint);
    // Neither player gains by a deterministic deviation.
    auto p = report.policies;
    EXPECT_NEAR(ExpectedCost(game, joint, p, 1), report.value, 1e-8);
    Policy br1 = BestResponse(game, joint, 1, p);
    Policy br2 = BestResponse(game, joint, 2, p);
    std::vector<Policy> dev1{br1, p[1]}, dev2{p[0], br2};
    EXPECT_GE(ExpectedCost(game, joint, dev1, 1), report.value - 1e-8);
    EXPECT_LE(ExpectedCost(game, joint, dev2, 1), report.value + 1e-8);
  }
}

TEST(ZeroSumTest, CompactProgramMatchesNormalFormOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int nx = 2 + trial % 2, ny1 = 2 + (trial / 2) % 2, ny2 = 2 + (trial / 4) % 2;
    int nu1 = 2 + (trial / 8) % 2, nu2 = 2 + (trial / 16) % 2;
    auto joint = RandomJoint(rng, nx, {ny1, ny2}, 0.25);
    Game game = RandomZeroSum(rng, Indexed(nx), nu1, nu2);
    auto report = ZeroSumValue(game, joint);
    EXPECT_LT(report.certificate.duality_gap, kDualityTolerance);
    EXPECT_NEAR(report.value, ZeroSumValueOracle(game, joint), 1e-7) << "trial " << trial;
    EXPECT_LE(std::abs(report.value), game.CostBound() + 1e-12);
  }
}

TEST(ZeroSumTest, OracleCapacity) {
  auto joint = SingletonJoint();
  auto big = Indexed(1001);
  auto mid = Indexed(1000);
  Game game = Game::ZeroSum(Singleton(), big, mid, std::vector<double>(1001000, 0.0));
  EXPECT_THROW(ZeroSumValueOracle(game, joint), CapacityError);
}

TEST(ZeroSumTest, RequiresZeroSumKind) {
  auto two = Indexed(2);
  Game team = Game::Team(Singleton(), {two, two}, {0, 1, 1, 0});
  EXPECT_THROW(ZeroSumValue(team, SingletonJoint()), PreconditionError);
}

TEST(ZeroSumTest, TotalVariationLipschitz) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    auto x = Indexed(3);
    Game game = RandomZeroSum(rng, x, 2, 3, 2.0);
    auto mu = RandomJoint(rng, 3, {2, 2});
    // Nearby joint on the same spaces: mix with an independent draw.
    auto other = RandomJoint(rng, 3, {2, 2});
    double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::vector<double> mix(mu.size());
    for (size_t k = 0; k < mix.size(); ++k) mix[k] = (1 - t) * mu[k] + t * other[k];
    JointMeasure nu(mu.factors(), mix);
    double gap = std::abs(ZeroSumValue(game, mu).value - ZeroSumValue(game, nu).value);
    EXPECT_LE(gap, game.CostBound() * TvDistance(mu, nu) + 1e-7);
  }
}

TEST(ZeroSumTest, GarblingMonotonicity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Game game = RandomZeroSum(rng, Indexed(3), 3, 2);
    auto mu = RandomJoint(rng, 3, {3, 3});
    double value = ZeroSumValue(game, mu).value;
    auto k1 = RandomChannel(rng, mu.factor_ptr(1), Indexed(2));
    auto k2 = RandomChannel(rng, mu.factor_ptr(2), Indexed(3));
    // Less information for the maximizer lowers the value; for the
    // minimizer, raises it.
    EXPECT_LE(ZeroSumValue(game, Garble(mu, 2, k2)).value, value + 1e-7);
    EXPECT_GE(ZeroSumValue(game, Garble(mu, 1, k1)).value, value - 1e-7);
  }
}

// -------------------------------------------------------------------- team

TEST(TeamTest, BothInformed) {
  auto two = Indexed(2);
  auto cost = Game::Tabulate(*two, {two, two}, [](int x, std::span<const int> u) {
    return double(u[0] != x) + double(u[1] != x);
  });
  Game game = Game::Team(two, {two, two}, cost);
  auto joint = UniformBinary({Channel::Identity(two), Channel::Identity(two)});
  auto report = TeamValueBruteForce(game, joint);
  EXPECT_EQ(report.value, 0.0);
  EXPECT_EQ(report.policies[0].choices(), (std::vector<int>{0, 1}));
  EXPECT_EQ(report.certificate.method, "exhaustive");
  EXPECT_EQ(report.certificate.profiles_searched, 16u);
}

TEST(TeamTest, UninformedSinglePlayer) {
  auto two = Indexed(2);
  Game game = Game::Team(two, {two}, {0, 1, 1, 0});
  auto joint = UniformBinary({Uninformative(two, two)});
  auto report = TeamValueBruteForce(game, joint);
  EXPECT_NEAR(report.value, 0.5, 1e-15);
  // Every profile ties, so the lexicographically first one is kept.
  EXPECT_EQ(report.policies[0].choices(), (std::vector<int>{0, 0}));
}

TEST(TeamTest, DescentOnSingletonMeasurements) {
  std::mt19937_64 rng(8);
  auto x = Indexed(3);
  auto one = Singleton();
  std::vector<double> prior = RandomSimplex(rng, 3);
  auto joint = Join(Measure(x, prior), std::vector<Channel>{
                                           Channel::Constant(x, one, {1.0})});
  Game game = RandomTeam(rng, x, {4});
  double expected = kInfinity;
  for (int u = 0; u < 4; ++u) {
    double v = 0;
    for (int s = 0; s < 3; ++s) v += prior[s] * game.Cost(1, s, std::span(&u, 1));
    expected = std::min(expected, v);
  }
  EXPECT_NEAR(TeamPbpDescent(game, joint, 1, 0).value, expected, 1e-15);
  EXPECT_NEAR(TeamValueBruteForce(game, joint).value, expected, 1e-15);
}

TEST(TeamTest, ConstantCostDescent) {
  std::mt19937_64 rng(9);
  auto joint = RandomJoint(rng, 2, {3, 3});
  Game game = Game::Team(Indexed(2), {Indexed(2), Indexed(2)}, std::vector<double>(8, -0.75));
  auto report = TeamPbpDescent(game, joint, 1, 42);
  EXPECT_NEAR(report.value, -0.75, 1e-15);
  EXPECT_EQ(report.certificate.method, "descent");
}

TEST(TeamTest, DescentMatchesBruteForce) {
  std::mt19937_64 rng(10);
  int equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto joint = RandomJoint(rng, 3, {2, 2});
    Game game = RandomTeam(rng, Indexed(3), {2, 2});
    double exact = TeamValueBruteForce(game, joint).value;
    double descent = TeamPbpDescent(game, joint, 16, trial).value;
    EXPECT_GE(descent, exact - 1e-12);
    if (std::abs(descent - exact) <= 1e-12) ++equal;
  }
  EXPECT_EQ(equal, 100);
}

TEST(TeamTest, BruteForceIsALowerBound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto joint = RandomJoint(rng, 2, {3, 2}, 0.3);
    Game game = RandomTeam(rng, Indexed(2), {2, 3});
    double exact = TeamValueBruteForce(game, joint).value;
    for (int s = 0; s < 20; ++s) {
      PolicyProfile p;
      for (int q = 1; q <= 2; ++q) {
        std::vector<int> choice(joint.factor(q).size());
        for (auto& c : choice) {
          c = std::uniform_int_distribution<int>(0, game.actions(q).size() - 1)(rng);
        }
        p.push_back(Policy::Deterministic(q, joint.factor_ptr(q), game.actions_ptr(q), choice));
      }
      EXPECT_GE(ExpectedCost(game, joint, p, 1), exact - 1e-10);
    }
    // Behavioral profiles cannot beat the deterministic optimum either.
    PolicyProfile mixed{
        Policy::Behavioral(1, RandomChannel(rng, joint.factor_ptr(1), game.actions_ptr(1))),
        Policy::Behavioral(2, RandomChannel(rng, joint.factor_ptr(2), game.actions_ptr(2)))};
    EXPECT_GE(ExpectedCost(game, joint, mixed, 1), exact - 1e-10);
  }
}

TEST(TeamTest, TotalVariationLipschitz) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    Game game = RandomTeam(rng, Indexed(2), {2, 2}, 3.0);
    auto mu = RandomJoint(rng, 2, {3, 2});
    auto nu = RandomJoint(rng, 2, {3, 2});
    double gap = std::abs(TeamValueBruteForce(game, mu).value -
                          TeamValueBruteForce(game, nu).value);
    EXPECT_LE(gap, game.CostBound() * TvDistance(mu, nu) + 1e-10);
  }
}

TEST(TeamTest, BruteForceCapacity) {
  // 4000^2 deterministic policies for one player on two measurements.
  auto joint = UniformBinary({Channel::Identity(Indexed(2))});
  Game game = Game::Team(Indexed(2), {Indexed(4000)}, std::vector<double>(8000, 0.0));
  EXPECT_THROW(TeamValueBruteForce(game, joint), CapacityError);
}

// ---------------------------------------------------------- best responses

TEST(BestResponseTest, QuadraticCostPicksConditionalMean) {
  auto x = MakeSpace(MetricFiniteSpace::FromPoints({-1, 0, 1}));
  auto grid = MakeSpace(MetricFiniteSpace::Grid(-1, 1, 5));
  auto one = Singleton();
  auto joint = Join(Measure::Uniform(x), std::vector<Channel>{
                                             Channel::Constant(x, one, {1.0})});
  auto cost = Game::Tabulate(*x, {grid}, [&](int s, std::span<const int> u) {
    double d = x->scalar(s) - grid->scalar(u[0]);
    return d * d;
  });
  Game game = Game::Team(x, {grid}, cost);
  auto profile = ConstantProfile(game, joint);
  Policy br = BestResponse(game, joint, 1, profile);
  EXPECT_EQ(grid->scalar(br.choices()[0]), 0.0);
}

// Two-player game where player 2's cost is (u2)^2 if u1 = 0 and (u2 - 1)^2
// otherwise; player 1 moves on {0, 1} and player 2 on a grid of [-1, 1].
struct SwitchGame {
  SpacePtr x = Indexed(2);
  SpacePtr u1 = MakeSpace(MetricFiniteSpace::FromPoints({0, 1}));
  SpacePtr u2 = MakeSpace(MetricFiniteSpace::Grid(-1, 1, 5));
  Game game = Make();
  JointMeasure joint = Join(Measure::Uniform(x),
                            std::vector<Channel>{Channel::Identity(x),
                                                 Channel::Constant(x, Indexed(1), {1.0})});

  Game Make() {
    auto c2 = Game::Tabulate(*x, {u1, u2}, [&](int, std::span<const int> u) {
      double a = u1->scalar(u[0]), b = u2->scalar(u[1]);
      return a == 0.0 ? b * b : (b - 1) * (b - 1);
    });
    return Game(x, {u1, u2}, {std::vector<double>(c2.size(), 0.0), c2},
                GameKind::kGeneral);
  }
};

TEST(BestResponseTest, SplitOpponentGivesQuarter) {
  SwitchGame g;
  PolicyProfile p = ConstantProfile(g.game, g.joint);
  p[0] = Policy::Deterministic(1, g.joint.factor_ptr(1), g.u1, {0, 1});
  p[1] = BestResponse(g.game, g.joint, 2, p);
  EXPECT_EQ(g.u2->scalar(p[1].choices()[0]), 0.5);
  EXPECT_NEAR(ExpectedCost(g.game, g.joint, p, 2), 0.25, 1e-15);
}

TEST(BestResponseTest, OpponentNeverAtZeroGivesZero) {
  SwitchGame g;
  PolicyProfile p = ConstantProfile(g.game, g.joint);
  p[0] = Policy::Deterministic(1, g.joint.factor_ptr(1), g.u1, {1, 1});
  p[1] = BestResponse(g.game, g.joint, 2, p);
  EXPECT_EQ(g.u2->scalar(p[1].choices()[0]), 1.0);
  EXPECT_EQ(ExpectedCost(g.game, g.joint, p, 2), 0.0);
}

TEST(BestResponseTest, ZeroMassPointsGetFirstAction) {
  auto two = Indexed(2), three = Indexed(3);
  // Measurement 2 of player 1 is never produced.
  Channel q(two, three, {0.5, 0.5, 0.0, 0.2, 0.8, 0.0});
  auto joint = UniformBinary({q});
  Game game = Game::Team(two, {two}, {1, 0, 0, 1});
  Policy br = BestResponse(game, joint, 1, ConstantProfile(game, joint, 1));
  EXPECT_EQ(br.choices()[2], 0);
  EXPECT_EQ(br.choices()[0], 1);
}

TEST(BestResponseTest, TiesGoToLowestIndex) {
  auto two = Indexed(2);
  Game game = Game::Team(two, {Indexed(3)}, {0.5, 0.2, 0.2, 0.5, 0.2, 0.2});
  auto joint = UniformBinary({Channel::Identity(two)});
  Policy br = BestResponse(game, joint, 1, ConstantProfile(game, joint));
  EXPECT_EQ(br.choices(), (std::vector<int>{1, 1}));
}

TEST(BrIterationTest, TeamGameConverges) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto joint = RandomJoint(rng, 3, {2, 3});
    Game game = RandomTeam(rng, Indexed(3), {3, 2});
    auto result = BrIteration(game, joint, ConstantProfile(game, joint), 100);
    EXPECT_TRUE(result.converged);
    EXPECT_NEAR(result.values[0], result.values[1], 0.0);
    EXPECT_GE(result.values[0], TeamValueBruteForce(game, joint).value - 1e-12);
  }
}

TEST(BrIterationTest, MatchingPenniesCycles) {
  Game game = MatchingPennies();
  auto joint = SingletonJoint();
  auto result = BrIteration(game, joint, ConstantProfile(game, joint), 50);
  EXPECT_FALSE(result.converged);
  EXPECT_EQ(result.rounds, 50);
}

TEST(BrIterationTest, ConvergedProfileIsAnEquilibrium) {
  SwitchGame g;
  // Player 1 is indifferent (zero cost) and keeps action 0 everywhere, so
  // player 2 moves to u2 = 0 once and the second round confirms it.
  auto result = BrIteration(g.game, g.joint, ConstantProfile(g.game, g.joint), 10);
  ASSERT_TRUE(result.converged);
  EXPECT_EQ(result.rounds, 2);
  EXPECT_EQ(g.u2->scalar(result.profile[1].choices()[0]), 0.0);
  EXPECT_EQ(result.values[1], 0.0);
}

}  // namespace
}  // namespace infolab
