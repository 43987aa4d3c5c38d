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

#include "infolab/measure.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "infolab/errors.h"
#include "infolab/linear_program.h"
#include "infolab/transport.h"
#include "test_util.h"

namespace infolab {
namespace {

using testing::RandomChannel;
using testing::RandomSimplex;

SpacePtr Binary() { return MakeSpace(MetricFiniteSpace::Indexed(2)); }

void ExpectMass(const JointMeasure& j, const std::vector<double>& expected,
                double tol = 1e-12) {
  ASSERT_EQ(j.size(), expected.size());
  for (size_t k = 0; k < expected.size(); ++k) {
    EXPECT_NEAR(j[k], expected[k], tol) << "cell " << k;
  }
}

// ------------------------------------------------------------ construction

TEST(SpaceTest, RejectsDuplicatesAndMismatches) {
  EXPECT_THROW(MetricFiniteSpace({"a", "a"}, {{0}, {1}}), PreconditionError);
  EXPECT_THROW(MetricFiniteSpace({"a", "b"}, {{0}}), DimensionError);
  EXPECT_THROW(MetricFiniteSpace({"a", "b"}, {{0}, {0}}), PreconditionError);
  EXPECT_THROW(MetricFiniteSpace({"a", "b"}, {{0}, {1, 2}}), DimensionError);
}

TEST(SpaceTest, DistancesAreAMetric) {
  MetricFiniteSpace s({"a", "b", "c"}, {{0, 0}, {3, 4}, {1, 1}});
  EXPECT_DOUBLE_EQ(s.Distance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(s.Distance(1, 0), 5.0);
  EXPECT_DOUBLE_EQ(s.Distance(2, 2), 0.0);
  EXPECT_DOUBLE_EQ(s.Diameter(), 5.0);
}

TEST(MeasureTest, NormalizationIsEnforced) {
  EXPECT_THROW(Measure(Binary(), {0.5, 0.6}), PreconditionError);
  EXPECT_THROW(Measure(Binary(), {1.5, -0.5}), PreconditionError);
  EXPECT_THROW(Measure(Binary(), {1.0}), DimensionError);
  EXPECT_THROW(Channel(Binary(), Binary(), std::vector<std::vector<double>>{
                                               {0.5, 0.5}, {0.7, 0.2}}),
               PreconditionError);
}

// --------------------------------------------------------------------- join

TEST(JoinTest, IdentityChannel) {
  auto x = Binary();
  Measure prior(x, {0.5, 0.5});
  std::vector<Channel> ch{Channel::Identity(x)};
  ExpectMass(Join(prior, ch), {0.5, 0.0, 0.0, 0.5});
}

TEST(JoinTest, UninformativeChannel) {
  auto x = Binary();
  Measure prior(x, {0.5, 0.5});
  std::vector<Channel> ch{Channel::Constant(x, x, {0.5, 0.5})};
  ExpectMass(Join(prior, ch), {0.25, 0.25, 0.25, 0.25});
}

TEST(JoinTest, HandComputedProducts) {
  // 0.25 * 0.9, 0.25 * 0.1, 0.75 * 0.2, 0.75 * 0.8
  auto x = Binary();
  Measure prior(x, {0.25, 0.75});
  std::vector<Channel> ch{Channel(x, x, std::vector<std::vector<double>>{
                                            {0.9, 0.1}, {0.2, 0.8}})};
  JointMeasure j = Join(prior, ch);
  ExpectMass(j, {0.225, 0.025, 0.15, 0.6});
  Measure back = FactorMarginal(j, 0);
  EXPECT_NEAR(back.mass()[0], 0.25, 1e-15);
  EXPECT_NEAR(back.mass()[1], 0.75, 1e-15);
}

TEST(JoinTest, SpaceMismatchIsADimensionError) {
  auto x = Binary();
  auto other = MakeSpace(MetricFiniteSpace::Indexed(3));
  std::vector<Channel> ch{Channel::Identity(other)};
  EXPECT_THROW(Join(Measure::Uniform(x), ch), DimensionError);
}

// -------------------------------------------------------- marginal & cond.

TEST(MarginalTest, ColumnSums) {
  auto x = Binary();
  JointMeasure j({x, x}, {0.225, 0.025, 0.15, 0.6});
  ExpectMass(Marginal(j, {1}), {0.375, 0.625});
  ExpectMass(Marginal(j, {0, 1}), {0.225, 0.025, 0.15, 0.6});
  EXPECT_THROW(Marginal(j, {}), PreconditionError);
  EXPECT_THROW(Marginal(j, {2}), PreconditionError);
  EXPECT_THROW(Marginal(j, {1, 1}), PreconditionError);
}

TEST(DisintegrateTest, DividesByRowSums) {
  auto x = Binary();
  JointMeasure j({x, x}, {0.225, 0.025, 0.15, 0.6});
  Channel q = Disintegrate(j, 0, 1);
  EXPECT_NEAR(q(0, 0), 0.9, 1e-12);
  EXPECT_NEAR(q(0, 1), 0.1, 1e-12);
  EXPECT_NEAR(q(1, 0), 0.2, 1e-12);
  EXPECT_NEAR(q(1, 1), 0.8, 1e-12);
  // Reverse direction divides by column sums.
  Channel r = Disintegrate(j, 1, 0);
  EXPECT_NEAR(r(0, 0), 0.225 / 0.375, 1e-12);
  EXPECT_NEAR(r(1, 1), 0.6 / 0.625, 1e-12);
}

TEST(DisintegrateTest, IndependentProductGivesConstantRows) {
  auto x = MakeSpace(MetricFiniteSpace::Indexed(3));
  std::vector<Channel> ch{Channel::Constant(x, x, {0.2, 0.3, 0.5})};
  Channel q = Disintegrate(Join(Measure(x, {0.1, 0.6, 0.3}), ch), 0, 1);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(q(i, 0), 0.2, 1e-12);
    EXPECT_NEAR(q(i, 2), 0.5, 1e-12);
  }
}

TEST(DisintegrateTest, ZeroMassNeedsADefaultRow) {
  auto x = Binary();
  JointMeasure j({x, x}, {0.5, 0.5, 0.0, 0.0});
  EXPECT_THROW(Disintegrate(j, 0, 1), DegenerateConditioningError);
  Channel q = Disintegrate(j, 0, 1, std::vector<double>{0.5, 0.5});
  EXPECT_EQ(q(1, 0), 0.5);
}

// ------------------------------------------------------------------ garble

TEST(GarbleTest, HandContraction) {
  // Fully informative binary joint: mass 1/2 on (0,0) and (1,1).
  auto x = Binary();
  JointMeasure j({x, x}, {0.5, 0.0, 0.0, 0.5});
  Channel k(x, x, std::vector<std::vector<double>>{{0.8, 0.2}, {0.3, 0.7}});
  ExpectMass(Garble(j, 1, k), {0.4, 0.1, 0.15, 0.35});
}

TEST(GarbleTest, IdentityAndTotalGarbling) {
  std::mt19937_64 rng(1);
  auto x = MakeSpace(MetricFiniteSpace::Indexed(3));
  auto y = MakeSpace(MetricFiniteSpace::Indexed(2));
  Measure prior(x, RandomSimplex(rng, 3));
  std::vector<Channel> ch{RandomChannel(rng, x, y), RandomChannel(rng, x, x)};
  JointMeasure j = Join(prior, ch);
  ExpectMass(Garble(j, 2, Channel::Identity(x)),
             {j.mass().begin(), j.mass().end()});
  JointMeasure total = Garble(j, 1, Channel::Constant(y, y, {0.3, 0.7}));
  JointMeasure rest = Marginal(total, {0, 2});
  ExpectMass(total, [&] {
    std::vector<double> v;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int c = 0; c < 3; ++c) v.push_back(rest[a * 3 + c] * (b ? 0.7 : 0.3));
      }
    }
    return v;
  }());
  EXPECT_THROW(Garble(j, 0, Channel::Identity(x)), PreconditionError);
  EXPECT_THROW(Garble(j, 1, Channel::Identity(x)), DimensionError);
}

TEST(GarbleTest, PreservesOtherMarginalsAndComposes) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = MakeSpace(MetricFiniteSpace::Indexed(2 + trial % 3));
    auto y1 = MakeSpace(MetricFiniteSpace::Indexed(2 + trial % 2));
    auto y2 = MakeSpace(MetricFiniteSpace::Indexed(3));
    auto z = MakeSpace(MetricFiniteSpace::Indexed(4));
    Measure prior(x, RandomSimplex(rng, x->size(), 0.2));
    std::vector<Channel> ch{RandomChannel(rng, x, y1), RandomChannel(rng, x, y2)};
    JointMeasure j = Join(prior, ch);
    int player = 1 + trial % 2;
    SpacePtr ys = j.factor_ptr(player);
    Channel ka = RandomChannel(rng, ys, z);
    Channel kb = RandomChannel(rng, z, ys);
    JointMeasure g = Garble(j, player, ka);
    std::vector<int> others;
    for (int f = 0; f < 3; ++f) {
      if (f != player) others.push_back(f);
    }
    ExpectMass(Marginal(g, others),
               [&] {
                 JointMeasure m = Marginal(j, others);
                 return std::vector<double>(m.mass().begin(), m.mass().end());
               }());
    JointMeasure twice = Garble(g, player, kb);
    JointMeasure once = Garble(j, player, ka.Then(kb));
    EXPECT_LT(TvDistance(twice, once), 1e-12);
  }
}

TEST(JoinTest, DisintegrateRecoversChannels) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = MakeSpace(MetricFiniteSpace::Indexed(2 + trial % 4));
    auto y = MakeSpace(MetricFiniteSpace::Indexed(2 + trial % 3));
    Measure prior(x, RandomSimplex(rng, x->size(), 0.3));
    std::vector<Channel> ch{RandomChannel(rng, x, y), RandomChannel(rng, x, x)};
    JointMeasure j = Join(prior, ch);
    for (int p = 1; p <= 2; ++p) {
      Channel q = Disintegrate(j, 0, p, std::vector<double>(
                                            j.shape()[p], 1.0 / j.shape()[p]));
      for (int a = 0; a < x->size(); ++a) {
        if (prior[a] == 0.0) continue;
        for (int b = 0; b < q.cols(); ++b) EXPECT_NEAR(q(a, b), ch[p - 1](a, b), 1e-10);
      }
    }
  }
}

// ---------------------------------------------------------------------- TV

TEST(TvTest, Examples) {
  auto x = Binary();
  Measure p(x, {0.5, 0.5});
  EXPECT_EQ(TvDistance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(TvDistance(p, Measure::PointMass(x, 0)), 1.0);
  EXPECT_DOUBLE_EQ(TvDistance(Measure::PointMass(x, 0), Measure::PointMass(x, 1)),
                   2.0);
  EXPECT_THROW(TvDistance(p, Measure::Uniform(MakeSpace(MetricFiniteSpace::Indexed(3)))),
               DimensionError);
}

TEST(TvTest, IsAMetricOnRandomTriples) {
  std::mt19937_64 rng(4);
  auto x = MakeSpace(MetricFiniteSpace::Indexed(5));
  for (int trial = 0; trial < 200; ++trial) {
    Measure a(x, RandomSimplex(rng, 5, 0.3));
    Measure b(x, RandomSimplex(rng, 5, 0.3));
    Measure c(x, RandomSimplex(rng, 5, 0.3));
    double ab = TvDistance(a, b);
    EXPECT_EQ(ab, TvDistance(b, a));
    EXPECT_LE(ab, TvDistance(a, c) + TvDistance(c, b) + 1e-12);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 2.0 + 1e-12);
  }
}

// ---------------------------------------------------------------------- W1

TEST(WassersteinTest, Examples) {
  auto line = MakeSpace(MetricFiniteSpace::FromPoints({0.0, 0.3, 1.0, 2.5}));
  EXPECT_NEAR(Wasserstein1(Measure::PointMass(line, 1), Measure::PointMass(line, 3)),
              2.2, 1e-12);
  Measure p(line, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(Wasserstein1(p, p), 0.0);
  auto x = Binary();
  EXPECT_NEAR(Wasserstein1(Measure::Uniform(x), Measure::PointMass(x, 0)), 0.5,
              1e-12);
}

TEST(WassersteinTest, JointExamples) {
  int n = 7;
  auto x = MakeSpace(MetricFiniteSpace::FromPoints({0.0, 1.0}));
  auto y = MakeSpace(MetricFiniteSpace::FromPoints({0.0, 1.0 / n}));
  JointMeasure a({x, y}, {1, 0, 0, 0});
  JointMeasure b({x, y}, {0, 1, 0, 0});
  EXPECT_NEAR(JointWasserstein1(a, b), 1.0 / n, 1e-12);
  EXPECT_EQ(JointWasserstein1(a, a), 0.0);
  // Product metric sums the per-factor distances.
  JointMeasure c({x, y}, {0, 0, 0, 1});
  EXPECT_NEAR(JointWasserstein1(a, c), 1.0 + 1.0 / n, 1e-12);
}

// One-dimensional oracle: W1 = integral of |F - G|.
double CdfW1(const std::vector<double>& pts, std::span<const double> p,
             std::span<const double> q) {
  std::vector<size_t> order(pts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pts[a] < pts[b]; });
  double f = 0.0, g = 0.0, total = 0.0;
  for (size_t k = 0; k + 1 < order.size(); ++k) {
    f += p[order[k]];
    g += q[order[k]];
    total += std::abs(f - g) * (pts[order[k + 1]] - pts[order[k]]);
  }
  return total;
}

TEST(WassersteinTest, MatchesCdfFormulaOnTheLine) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 9;
    std::vector<double> pts(n);
    for (auto& v : pts) v = u(rng);
    auto s = MakeSpace(MetricFiniteSpace::FromPoints(pts));
    Measure p(s, RandomSimplex(rng, n, 0.3));
    Measure q(s, RandomSimplex(rng, n, 0.3));
    EXPECT_NEAR(Wasserstein1(p, q), CdfW1(pts, p.mass(), q.mass()), 1e-10);
    EXPECT_NEAR(Wasserstein1(p, q), Wasserstein1(q, p), 1e-10);
  }
}

// Second route: the full n x n transport program through the generic
// simplex, without the shared-mass reduction.
double GenericLpW1(const Measure& p, const Measure& q) {
  int n = p.size();
  LinearProgram lp;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) lp.AddVariable(p.space().Distance(i, j));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<LinearProgram::Term> row, col;
    for (int j = 0; j < n; ++j) {
      row.push_back({i * n + j, 1.0});
      col.push_back({j * n + i, 1.0});
    }
    lp.AddConstraint(row, Relation::kEqual, p[i]);
    lp.AddConstraint(col, Relation::kEqual, q[i]);
  }
  auto sol = Solve(lp);
  EXPECT_TRUE(sol.optimal());
  return sol.objective;
}

TEST(WassersteinTest, TransportSimplexMatchesGenericLp) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 7;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coords;
    for (int i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i));
      coords.push_back({u(rng), u(rng)});
    }
    auto s = MakeSpace(MetricFiniteSpace(labels, coords));
    Measure p(s, RandomSimplex(rng, n, 0.3));
    Measure q(s, RandomSimplex(rng, n, 0.3));
    double w = Wasserstein1(p, q);
    EXPECT_NEAR(w, GenericLpW1(p, q), 1e-9);
    EXPECT_LE(w, s->Diameter() / 2 * TvDistance(p, q) + 1e-12);
    if (TvDistance(p, q) > 0) {
      EXPECT_GT(w, 0.0);
    }
  }
}

TEST(TransportTest, DegenerateInstances) {
  // Equal supplies and demands force degenerate northwest-corner bases.
  std::vector<double> s{0.25, 0.25, 0.25, 0.25};
  std::vector<double> d{0.25, 0.25, 0.25, 0.25};
  auto plan = SolveTransport(s, d, [](int i, int j) { return i == 3 - j ? 0.0 : 1.0; });
  EXPECT_NEAR(plan.cost, 0.0, 1e-15);
  EXPECT_THROW(SolveTransport(std::vector<double>{1.0}, std::vector<double>{0.5},
                              [](int, int) { return 0.0; }),
               PreconditionError);
}

}  // namespace
}  // namespace infolab
