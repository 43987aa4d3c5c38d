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

#ifndef INFOLAB_SCENARIOS_H_
#define INFOLAB_SCENARIOS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infolab/game.h"
#include "infolab/measure.h"

namespace infolab {

// A sequence of two-player information structures indexed by m together
// with its analytic limit. All members and the limit share factor spaces.
struct Sequence {
  std::string name;
  std::vector<int> indices;
  std::vector<JointMeasure> members;
  JointMeasure limit;
  // Distances are measured between the state marginals instead of the
  // joints (prior-shift sequences, whose channels stay fixed).
  bool prior_distances = false;
};

// ---------------------------------------------------------------- Gaussian

// Rows are Gaussian densities N(x, variance) sampled on the grid of `to`
// and renormalized.
Channel GaussianChannel(const SpacePtr& from, const SpacePtr& to, double variance);

// State: uniform grid on [0, 1] with uniform prior. Measurements: uniform
// grids on [-4, 5]. Player 1 sees variance 1 + 1/m, player 2 variance
// 1 - 1/(m + 1); the limit has variance 1 for both.
JointMeasure GaussianGarblingMember(int grid_x, int grid_y, int m);
JointMeasure GaussianGarblingLimit(int grid_x, int grid_y);
Sequence GaussianGarblingSequence(int grid_x, int grid_y, int m_first, int m_last);

// --------------------------------------------------------------- quantizer

// State: the grid_x cell midpoints of [0, 1] (grid_x a power of two),
// uniform prior. Player 1 observes the midpoint of its bin among 2^m equal
// bins; player 2 observes nothing. The measurement space is the union of
// all bin midpoints, and the limit is y = x.
JointMeasure QuantizerMember(int m, int grid_x);
JointMeasure QuantizerLimit(int grid_x);
Sequence QuantizerSequence(int grid_x, int m_first, int m_last);

// ------------------------------------------------------------- prior shift

enum class PriorChannelKind { kTvContinuous, kDiscontinuous };

inline constexpr double kPriorShiftSmoothing = 0.25;

// State grid on [-1, 1] with step 0.01. Priors 1/2 at -1 and 1/2 at the
// grid point nearest 1/m, converging weakly to 1/2 at -1 and 1/2 at 0.
// Player 1 observes nothing; player 2 observes whether x > 0, either
// exactly (discontinuous) or through P(y = 1 | x) = Phi(x / 0.25).
SpacePtr PriorShiftStates();
Measure PriorShiftPrior(int m);
Measure PriorShiftLimitPrior();
Channel PriorShiftChannel(PriorChannelKind kind);
Sequence PriorShiftSequence(PriorChannelKind kind, int m_first, int m_last);

// Largest row L1 distance between adjacent source points divided by their
// coordinate distance (source coordinates are scalars in increasing order).
double ChannelLipschitz(const Channel& channel);
// Largest |c(x, u) - c(x', u)| / |x - x'| over adjacent states, any player.
double CostLipschitz(const Game& game);

// ----------------------------------------------------------- garbling chain

// mu_m = Garble(mu_0, player, s_m I + (1 - s_m) Pi) with s_m = 1/(m + 1)
// and Pi a constant kernel, so each step garbles the previous member and
// the limit is the fully garbled structure. mu_0 and Pi come from `seed`.
Sequence GarblingChainSequence(int length, int player, uint64_t seed, int nx = 3,
                               int ny = 3);

// ----------------------------------------------------------------- games

// Zero-sum guessing on the state points: c = 1{u2 = x} - 1{u1 = x}.
Game GuessingGame(const SpacePtr& states);
// Zero-sum estimation with actions on the state points:
// c = (x - u1)^2 - (x - u2)^2.
Game EstimationGame(const SpacePtr& states);
// Prior-shift game: player 1 has a dummy action, player 2 picks u in
// {-1, 0} and receives c = 1 - |x - u|.
Game ThresholdGuessGame(const SpacePtr& states);

// ------------------------------------------------------------- experiments

enum class ValueKind { kZeroSum, kTeam, kPerPlayer };

struct ExperimentRow {
  std::optional<int> m;  // empty on the limit row
  double tv_to_limit = 0.0;
  double w1_to_limit = 0.0;
  std::vector<double> values;
  double value_gap = 0.0;
};

struct ExperimentOptions {
  ValueKind kind = ValueKind::kZeroSum;
  // Per-player runs report the gap of this player; 0 means the last one.
  int gap_player = 0;
  int max_rounds = 100;
};

// One row per member and a final limit row. Per-player values come from
// best-response iteration started at the all-zeros profile.
std::vector<ExperimentRow> RunConvergenceExperiment(const Sequence& sequence,
                                                    const Game& game,
                                                    const ExperimentOptions& options = {});

// --------------------------------------------------- non-zero-sum example

// Three-bin quantizer of the uniform state on [-1, 1] with cut points
// -1/2 - 1/(8m) and 1/2 + 1/(4m); the limit (no m) cuts at -1/2 and 1/2.
struct QuantizerBins {
  std::array<double, 4> edges;
  std::array<double, 3> mass;
  std::array<double, 3> mean;
  std::array<double, 3> variance;
};

QuantizerBins CounterexampleBins(std::optional<int> m);

struct CounterexampleRow {
  std::optional<int> m;
  double tv_to_limit = 0.0;
  double w1_to_limit = 0.0;
  double p_zero = 0.0;  // P(u1 = 0)
  double u2 = 0.0;
  double value_p1 = 0.0;
  double value_p2 = 0.0;
};

// Player 1 plays the bin mean; player 2 answers with u2 = 1 - p at cost
// p (1 - p), p = P(u1 = 0). Player 1's value is the mean within-bin
// variance minus u2^2. Closed-form arithmetic throughout.
CounterexampleRow CounterexampleAt(std::optional<int> m);
std::vector<ExperimentRow> RunCounterexample(int m_first, int m_last);

// Finite stand-in for the same game: each bin is replaced by two equally
// weighted points at mean +- standard deviation, player 1 acts on the bin
// means (plus 0) and player 2 on the grid {-1, -1/2, 0, 1/2, 1}.
struct FiniteModel {
  Game game;
  JointMeasure joint;
};
FiniteModel CounterexampleFiniteModel(std::optional<int> m);

// ---------------------------------------------------------------- output

// Header m,tv_to_limit,w1_to_limit,value[,value_p2,...],value_gap and one
// line per row, numbers with 12 significant digits.
void WriteCsv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::string FormatCsv(const std::vector<ExperimentRow>& rows);

}  // namespace infolab

#endif  // INFOLAB_SCENARIOS_H_
