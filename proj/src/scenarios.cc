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

#include "infolab/scenarios.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "infolab/errors.h"
#include "infolab/parallel.h"

namespace infolab {
namespace {

SpacePtr Points(const std::vector<double>& points) {
  return MakeSpace(MetricFiniteSpace::FromPoints(points));
}

SpacePtr Singleton() { return Points({0.0}); }

void CheckRange(int m_first, int m_last, int lowest) {
  if (m_first < lowest || m_last < m_first) {
    throw PreconditionError("index range " + std::to_string(m_first) + ".." +
                            std::to_string(m_last) + " is invalid");
  }
}

int Nearest(const MetricFiniteSpace& space, double target) {
  int best = 0;
  for (int i = 1; i < space.size(); ++i) {
    if (std::abs(space.scalar(i) - target) < std::abs(space.scalar(best) - target)) {
      best = i;
    }
  }
  return best;
}

std::vector<double> UniformSimplex(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) total += (x = draw(rng));
  for (auto& x : v) x /= total;
  double rest = 0.0;
  for (int i = 1; i < n; ++i) rest += v[i];
  v[0] = 1.0 - rest;
  return v;
}

JointMeasure GaussianJoint(int grid_x, int grid_y, double var1, double var2) {
  if (grid_x < 2 || grid_y < 2) throw PreconditionError("grid sizes must be at least 2");
  SpacePtr x = MakeSpace(MetricFiniteSpace::Grid(0.0, 1.0, grid_x));
  SpacePtr y = MakeSpace(MetricFiniteSpace::Grid(-4.0, 5.0, grid_y));
  std::vector<Channel> channels{GaussianChannel(x, y, var1), GaussianChannel(x, y, var2)};
  return Join(Measure::Uniform(x), channels);
}

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

int Log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

// Quantizer measurement space: midpoints of the 2^m equal bins of [0, 1]
// for m = 0..log2(grid_x), ascending.
SpacePtr QuantizerMeasurements(int grid_x) {
  std::vector<double> points;
  for (int m = 0; m <= Log2(grid_x); ++m) {
    for (int j = 0; j < (1 << m); ++j) points.push_back((j + 0.5) / (1 << m));
  }
  std::sort(points.begin(), points.end());
  return Points(points);
}

SpacePtr QuantizerStates(int grid_x) {
  std::vector<double> points(grid_x);
  for (int i = 0; i < grid_x; ++i) points[i] = (i + 0.5) / grid_x;
  return Points(points);
}

JointMeasure QuantizerJoint(int grid_x, int levels) {
  if (!IsPowerOfTwo(grid_x) || grid_x < 2) {
    throw PreconditionError("quantizer grid must be a power of two, at least 2");
  }
  if (levels < 0 || (1 << levels) > grid_x) {
    throw PreconditionError("2^m must not exceed the state grid");
  }
  SpacePtr x = QuantizerStates(grid_x);
  SpacePtr y = QuantizerMeasurements(grid_x);
  std::map<double, int> where;
  for (int i = 0; i < y->size(); ++i) where[y->scalar(i)] = i;
  std::vector<double> weights(static_cast<size_t>(x->size()) * y->size(), 0.0);
  int bins = 1 << levels;
  for (int i = 0; i < grid_x; ++i) {
    int j = static_cast<int>(std::floor(x->scalar(i) * bins));
    weights[static_cast<size_t>(i) * y->size() + where.at((j + 0.5) / bins)] = 1.0;
  }
  SpacePtr one = Singleton();
  std::vector<Channel> channels{Channel(x, y, std::move(weights)),
                                Channel::Constant(x, one, {1.0})};
  return Join(Measure::Uniform(x), channels);
}

double StandardNormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

Sequence Assemble(std::string name, int m_first, int m_last,
                  const std::function<JointMeasure(int)>& member, JointMeasure limit) {
  Sequence seq{std::move(name), {}, {}, std::move(limit), false};
  for (int m = m_first; m <= m_last; ++m) {
    seq.indices.push_back(m);
    seq.members.push_back(member(m));
  }
  return seq;
}

std::string Format(double v) { return FormatNumber(v); }

}  // namespace

// ---------------------------------------------------------------- Gaussian

Channel GaussianChannel(const SpacePtr& from, const SpacePtr& to, double variance) {
  if (!(variance > 0.0)) throw PreconditionError("variance must be positive");
  std::vector<double> weights(static_cast<size_t>(from->size()) * to->size());
  for (int i = 0; i < from->size(); ++i) {
    double total = 0.0;
    for (int j = 0; j < to->size(); ++j) {
      double d = to->scalar(j) - from->scalar(i);
      double w = std::exp(-d * d / (2.0 * variance));
      weights[static_cast<size_t>(i) * to->size() + j] = w;
      total += w;
    }
    for (int j = 0; j < to->size(); ++j) weights[static_cast<size_t>(i) * to->size() + j] /= total;
  }
  return Channel(from, to, std::move(weights));
}

JointMeasure GaussianGarblingMember(int grid_x, int grid_y, int m) {
  if (m < 1) throw PreconditionError("Gaussian index must be at least 1");
  return GaussianJoint(grid_x, grid_y, 1.0 + 1.0 / m, 1.0 - 1.0 / (m + 1.0));
}

JointMeasure GaussianGarblingLimit(int grid_x, int grid_y) {
  return GaussianJoint(grid_x, grid_y, 1.0, 1.0);
}

Sequence GaussianGarblingSequence(int grid_x, int grid_y, int m_first, int m_last) {
  CheckRange(m_first, m_last, 1);
  return Assemble(
      "gaussian-garbling", m_first, m_last,
      [&](int m) { return GaussianGarblingMember(grid_x, grid_y, m); },
      GaussianGarblingLimit(grid_x, grid_y));
}

// --------------------------------------------------------------- quantizer

JointMeasure QuantizerMember(int m, int grid_x) { return QuantizerJoint(grid_x, m); }

JointMeasure QuantizerLimit(int grid_x) { return QuantizerJoint(grid_x, Log2(grid_x)); }

Sequence QuantizerSequence(int grid_x, int m_first, int m_last) {
  CheckRange(m_first, m_last, 0);
  return Assemble(
      "quantizer-refinement", m_first, m_last,
      [&](int m) { return QuantizerMember(m, grid_x); }, QuantizerLimit(grid_x));
}

// ------------------------------------------------------------- prior shift

SpacePtr PriorShiftStates() {
  static const SpacePtr states = MakeSpace(MetricFiniteSpace::Grid(-1.0, 1.0, 201));
  return states;
}

Measure PriorShiftPrior(int m) {
  if (m < 1) throw PreconditionError("prior index must be at least 1");
  SpacePtr x = PriorShiftStates();
  std::vector<double> mass(x->size(), 0.0);
  mass[0] += 0.5;
  mass[Nearest(*x, 1.0 / m)] += 0.5;
  return Measure(x, std::move(mass));
}

Measure PriorShiftLimitPrior() {
  SpacePtr x = PriorShiftStates();
  std::vector<double> mass(x->size(), 0.0);
  mass[0] = 0.5;
  mass[Nearest(*x, 0.0)] = 0.5;
  return Measure(x, std::move(mass));
}

Channel PriorShiftChannel(PriorChannelKind kind) {
  SpacePtr x = PriorShiftStates();
  SpacePtr y = Points({0.0, 1.0});
  std::vector<double> weights;
  for (int i = 0; i < x->size(); ++i) {
    double s = x->scalar(i);
    double high = kind == PriorChannelKind::kDiscontinuous
                      ? (s > 0.0 ? 1.0 : 0.0)
                      : StandardNormalCdf(s / kPriorShiftSmoothing);
    weights.push_back(1.0 - high);
    weights.push_back(high);
  }
  return Channel(x, y, std::move(weights));
}

Sequence PriorShiftSequence(PriorChannelKind kind, int m_first, int m_last) {
  CheckRange(m_first, m_last, 1);
  SpacePtr x = PriorShiftStates();
  std::vector<Channel> channels{Channel::Constant(x, Singleton(), {1.0}),
                                PriorShiftChannel(kind)};
  std::string name = kind == PriorChannelKind::kDiscontinuous
                         ? "prior-shift-discontinuous"
                         : "prior-shift-continuous";
  Sequence seq = Assemble(
      std::move(name), m_first, m_last,
      [&](int m) { return Join(PriorShiftPrior(m), channels); },
      Join(PriorShiftLimitPrior(), channels));
  seq.prior_distances = true;
  return seq;
}

double ChannelLipschitz(const Channel& channel) {
  const MetricFiniteSpace& from = channel.from();
  double best = 0.0;
  for (int i = 0; i + 1 < from.size(); ++i) {
    double step = std::abs(from.scalar(i + 1) - from.scalar(i));
    best = std::max(best, TvDistance(channel.row(i), channel.row(i + 1)) / step);
  }
  return best;
}

double CostLipschitz(const Game& game) {
  const MetricFiniteSpace& x = game.state();
  size_t per_state = game.ProfileCount() / x.size();
  double best = 0.0;
  for (int p = 1; p <= game.num_players(); ++p) {
    auto cost = game.costs(p);
    for (int i = 0; i + 1 < x.size(); ++i) {
      double step = std::abs(x.scalar(i + 1) - x.scalar(i));
      for (size_t k = 0; k < per_state; ++k) {
        double d = std::abs(cost[(i + 1) * per_state + k] - cost[i * per_state + k]);
        best = std::max(best, d / step);
      }
    }
  }
  return best;
}

// ----------------------------------------------------------- garbling chain

Sequence GarblingChainSequence(int length, int player, uint64_t seed, int nx, int ny) {
  if (length < 1) throw PreconditionError("chain length must be positive");
  if (player != 1 && player != 2) throw PreconditionError("chain player must be 1 or 2");
  std::mt19937_64 rng(seed);
  SpacePtr x = MakeSpace(MetricFiniteSpace::Indexed(nx));
  SpacePtr y = MakeSpace(MetricFiniteSpace::Indexed(ny));
  Measure prior(x, UniformSimplex(rng, nx));
  std::vector<Channel> channels;
  for (int p = 0; p < 2; ++p) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < nx; ++i) rows.push_back(UniformSimplex(rng, ny));
    channels.emplace_back(x, y, rows);
  }
  JointMeasure base = Join(prior, channels);
  std::vector<double> pi = UniformSimplex(rng, ny);
  auto kernel = [&](double s) {
    std::vector<double> weights(static_cast<size_t>(ny) * ny);
    for (int a = 0; a < ny; ++a) {
      for (int b = 0; b < ny; ++b) {
        weights[a * ny + b] = (1.0 - s) * pi[b] + (a == b ? s : 0.0);
      }
    }
    return Channel(y, y, std::move(weights));
  };
  return Assemble(
      "garbling-chain", 0, length - 1,
      [&](int m) { return Garble(base, player, kernel(1.0 / (m + 1))); },
      Garble(base, player, kernel(0.0)));
}

// ----------------------------------------------------------------- games

Game GuessingGame(const SpacePtr& states) {
  auto cost = Game::Tabulate(*states, {states, states}, [](int x, std::span<const int> u) {
    return double(u[1] == x) - double(u[0] == x);
  });
  return Game::ZeroSum(states, states, states, std::move(cost));
}

Game EstimationGame(const SpacePtr& states) {
  auto cost = Game::Tabulate(*states, {states, states}, [&](int x, std::span<const int> u) {
    double s = states->scalar(x);
    double a = s - states->scalar(u[0]), b = s - states->scalar(u[1]);
    return a * a - b * b;
  });
  return Game::ZeroSum(states, states, states, std::move(cost));
}

Game ThresholdGuessGame(const SpacePtr& states) {
  SpacePtr dummy = Singleton();
  SpacePtr guesses = Points({-1.0, 0.0});
  auto cost = Game::Tabulate(*states, {dummy, guesses}, [&](int x, std::span<const int> u) {
    return 1.0 - std::abs(states->scalar(x) - guesses->scalar(u[1]));
  });
  return Game::ZeroSum(states, dummy, guesses, std::move(cost));
}

// ------------------------------------------------------------- experiments

std::vector<ExperimentRow> RunConvergenceExperiment(const Sequence& sequence,
                                                    const Game& game,
                                                    const ExperimentOptions& options) {
  size_t count = sequence.members.size();
  std::vector<ExperimentRow> rows(count + 1);
  Measure limit_prior = FactorMarginal(sequence.limit, 0);
  ParallelFor(count + 1, [&](size_t k) {
    const JointMeasure& joint = k < count ? sequence.members[k] : sequence.limit;
    ExperimentRow& row = rows[k];
    if (k < count) {
      row.m = sequence.indices[k];
      if (sequence.prior_distances) {
        Measure prior = FactorMarginal(joint, 0);
        row.tv_to_limit = TvDistance(prior, limit_prior);
        row.w1_to_limit = Wasserstein1(prior, limit_prior);
      } else {
        row.tv_to_limit = TvDistance(joint, sequence.limit);
        row.w1_to_limit = JointWasserstein1(joint, sequence.limit);
      }
    }
    switch (options.kind) {
      case ValueKind::kZeroSum:
        row.values = {ZeroSumValue(game, joint).value};
        break;
      case ValueKind::kTeam:
        row.values = {TeamValueBruteForce(game, joint).value};
        break;
      case ValueKind::kPerPlayer:
        row.values =
            BrIteration(game, joint, ConstantProfile(game, joint), options.max_rounds).values;
        break;
    }
  });
  size_t gap = 0;
  if (options.kind == ValueKind::kPerPlayer) {
    gap = options.gap_player > 0 ? options.gap_player - 1 : game.num_players() - 1;
  }
  const ExperimentRow& limit = rows.back();
  for (auto& row : rows) row.value_gap = std::abs(row.values[gap] - limit.values[gap]);
  return rows;
}

// --------------------------------------------------- non-zero-sum example

QuantizerBins CounterexampleBins(std::optional<int> m) {
  if (m && *m < 1) throw PreconditionError("index must be at least 1");
  double lo = m ? -0.5 - 1.0 / (8.0 * *m) : -0.5;
  double hi = m ? 0.5 + 1.0 / (4.0 * *m) : 0.5;
  QuantizerBins bins{{-1.0, lo, hi, 1.0}, {}, {}, {}};
  for (int i = 0; i < 3; ++i) {
    double len = bins.edges[i + 1] - bins.edges[i];
    bins.mass[i] = len / 2.0;
    bins.mean[i] = (bins.edges[i] + bins.edges[i + 1]) / 2.0;
    bins.variance[i] = len * len / 12.0;
  }
  return bins;
}

CounterexampleRow CounterexampleAt(std::optional<int> m) {
  QuantizerBins bins = CounterexampleBins(m);
  CounterexampleRow row;
  row.m = m;
  if (m) {
    // Mass 1/(16m) moves between bins 1 and 2 and 1/(8m) between bins 2
    // and 3, each by one label step.
    row.tv_to_limit = 3.0 / (8.0 * *m);
    row.w1_to_limit = 3.0 / (16.0 * *m);
  }
  double within = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (bins.mean[i] == 0.0) row.p_zero += bins.mass[i];
    within += bins.mass[i] * bins.variance[i];
  }
  row.u2 = 1.0 - row.p_zero;
  row.value_p2 = row.p_zero * (1.0 - row.p_zero);
  row.value_p1 = within - row.u2 * row.u2;
  return row;
}

std::vector<ExperimentRow> RunCounterexample(int m_first, int m_last) {
  CheckRange(m_first, m_last, 1);
  std::vector<ExperimentRow> rows;
  CounterexampleRow limit = CounterexampleAt(std::nullopt);
  auto convert = [&](const CounterexampleRow& r) {
    return ExperimentRow{r.m, r.tv_to_limit, r.w1_to_limit, {r.value_p1, r.value_p2},
                         std::abs(r.value_p2 - limit.value_p2)};
  };
  for (int m = m_first; m <= m_last; ++m) rows.push_back(convert(CounterexampleAt(m)));
  rows.push_back(convert(limit));
  return rows;
}

FiniteModel CounterexampleFiniteModel(std::optional<int> m) {
  QuantizerBins bins = CounterexampleBins(m);
  std::vector<double> points, mass;
  std::vector<int> bin_of;
  for (int i = 0; i < 3; ++i) {
    double sd = std::sqrt(bins.variance[i]);
    for (double s : {-1.0, 1.0}) {
      points.push_back(bins.mean[i] + s * sd);
      mass.push_back(bins.mass[i] / 2.0);
      bin_of.push_back(i);
    }
  }
  SpacePtr x = Points(points);
  SpacePtr y1 = Points({1.0, 2.0, 3.0});
  SpacePtr y2 = Singleton();
  std::vector<double> quantizer(points.size() * 3, 0.0);
  for (size_t k = 0; k < points.size(); ++k) quantizer[k * 3 + bin_of[k]] = 1.0;
  std::vector<Channel> channels{Channel(x, y1, std::move(quantizer)),
                                Channel::Constant(x, y2, {1.0})};
  JointMeasure joint = Join(Measure(x, std::move(mass)), channels);

  std::vector<double> actions1(bins.mean.begin(), bins.mean.end());
  actions1.push_back(0.0);
  std::sort(actions1.begin(), actions1.end());
  actions1.erase(std::unique(actions1.begin(), actions1.end()), actions1.end());
  SpacePtr u1 = Points(actions1);
  SpacePtr u2 = MakeSpace(MetricFiniteSpace::Grid(-1.0, 1.0, 5));
  std::vector<SpacePtr> actions{u1, u2};
  auto c1 = Game::Tabulate(*x, actions, [&](int s, std::span<const int> u) {
    double d = x->scalar(s) - u1->scalar(u[0]), b = u2->scalar(u[1]);
    return d * d - b * b;
  });
  auto c2 = Game::Tabulate(*x, actions, [&](int, std::span<const int> u) {
    double b = u2->scalar(u[1]);
    return u1->scalar(u[0]) == 0.0 ? b * b : (b - 1.0) * (b - 1.0);
  });
  return {Game(x, actions, {std::move(c1), std::move(c2)}, GameKind::kGeneral),
          std::move(joint)};
}

// ---------------------------------------------------------------- output

void WriteCsv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  size_t width = rows.empty() ? 1 : rows.front().values.size();
  out << "m,tv_to_limit,w1_to_limit,value";
  for (size_t p = 2; p <= width; ++p) out << ",value_p" << p;
  out << ",value_gap\n";
  for (const auto& row : rows) {
    out << (row.m ? std::to_string(*row.m) : "limit") << ',' << Format(row.tv_to_limit)
        << ',' << Format(row.w1_to_limit);
    for (double v : row.values) out << ',' << Format(v);
    out << ',' << Format(row.value_gap) << '\n';
  }
}

std::string FormatCsv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  WriteCsv(out, rows);
  return out.str();
}

}  // namespace infolab
