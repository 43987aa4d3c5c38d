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

#ifndef INFOLAB_GAME_H_
#define INFOLAB_GAME_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infolab/measure.h"

namespace infolab {

enum class GameKind { kZeroSum, kTeam, kGeneral };

std::string ToString(GameKind kind);

// Finite single-stage game: a state space, one action space per player and
// one cost tensor per player indexed by (x, u1, ..., un), x slowest.
//
// Players are numbered 1..n so that player i reads joint factor i. Zero-sum
// games have two players; player 1 minimizes c and player 2 maximizes it
// (equivalently minimizes -c). Team games share one cost.
class Game {
 public:
  Game(SpacePtr state, std::vector<SpacePtr> actions,
       std::vector<std::vector<double>> costs, GameKind kind);

  // `cost` is player 1's (the minimizer's) cost.
  static Game ZeroSum(SpacePtr state, SpacePtr minimizer_actions,
                      SpacePtr maximizer_actions, std::vector<double> cost);
  static Game Team(SpacePtr state, std::vector<SpacePtr> actions,
                   std::vector<double> cost);

  // Evaluates `fn(x, u)` on every (state, action profile) cell.
  using CostFn = std::function<double(int x, std::span<const int> actions)>;
  static std::vector<double> Tabulate(const MetricFiniteSpace& state,
                                      const std::vector<SpacePtr>& actions,
                                      const CostFn& fn);

  int num_players() const { return static_cast<int>(actions_.size()); }
  GameKind kind() const { return kind_; }
  const MetricFiniteSpace& state() const { return *state_; }
  const SpacePtr& state_ptr() const { return state_; }
  // Player numbers are 1-based.
  const MetricFiniteSpace& actions(int player) const { return *actions_[player - 1]; }
  const SpacePtr& actions_ptr(int player) const { return actions_[player - 1]; }
  const std::vector<SpacePtr>& action_spaces() const { return actions_; }

  double Cost(int player, int x, std::span<const int> actions) const;
  // Cost tensor of `player` in storage order.
  std::span<const double> costs(int player) const { return costs_[player - 1]; }
  size_t ProfileCount() const { return profile_count_; }
  size_t CellIndex(int x, std::span<const int> actions) const;

  // max |c^i| over all players and cells.
  double CostBound() const;

 private:
  SpacePtr state_;
  std::vector<SpacePtr> actions_;
  std::vector<std::vector<double>> costs_;
  GameKind kind_;
  size_t profile_count_ = 1;
};

// A player's policy: a map from measurement points to actions, either
// deterministic (one action index per point) or behavioral (a row of action
// probabilities per point).
class Policy {
 public:
  static Policy Deterministic(int player, SpacePtr measurements,
                              SpacePtr actions, std::vector<int> choice);
  static Policy Behavioral(int player, Channel rule);

  int player() const { return player_; }
  bool deterministic() const { return deterministic_; }
  // Action index per measurement point; deterministic policies only.
  const std::vector<int>& choices() const { return choice_; }
  double Weight(int measurement, int action) const;
  const Channel& rule() const { return rule_; }
  int num_measurements() const { return rule_.rows(); }
  int num_actions() const { return rule_.cols(); }

  bool operator==(const Policy& other) const;

 private:
  Policy(int player, Channel rule, bool deterministic, std::vector<int> choice);

  int player_;
  Channel rule_;
  bool deterministic_;
  std::vector<int> choice_;
};

// profile[i] is player i + 1's policy.
using PolicyProfile = std::vector<Policy>;

struct ValueCertificate {
  // Zero-sum: the two LP values and their gap.
  double minimax = 0.0;
  double maximin = 0.0;
  double duality_gap = 0.0;
  // Team: "exhaustive" or "descent".
  std::string method;
  uint64_t profiles_searched = 0;
};

struct ValueReport {
  double value = 0.0;
  PolicyProfile policies;
  ValueCertificate certificate;
};

// Allowed disagreement between the minimax and maximin programs.
inline constexpr double kDualityTolerance = 1e-7;
// Enumeration caps.
inline constexpr uint64_t kOracleProfileCap = 1000000;
inline constexpr uint64_t kTeamProfileCap = 10000000;

// E[c^player(x, gamma^1(y^1), ..., gamma^n(y^n))] under `joint`.
double ExpectedCost(const Game& game, const JointMeasure& joint,
                    std::span<const Policy> profile, int player);

// Value of a zero-sum game in behavioral strategies from the epigraph LP
// over the minimizer's behavioral weights, certified by the mirrored
// maximizer LP. Throws InternalConsistencyError when the two disagree by
// more than kDualityTolerance.
ValueReport ZeroSumValue(const Game& game, const JointMeasure& joint);

// Independent check of ZeroSumValue: enumerate every deterministic policy of
// both players, build the normal-form payoff table and solve that matrix
// game. Throws CapacityError beyond kOracleProfileCap table cells.
double ZeroSumValueOracle(const Game& game, const JointMeasure& joint);

// Team optimum by exhaustive search over deterministic profiles (the
// expected cost is multilinear in behavioral weights, so a vertex attains
// the minimum). Ties keep the lexicographically first profile.
ValueReport TeamValueBruteForce(const Game& game, const JointMeasure& joint);

// Person-by-person descent from `restarts` random deterministic starts.
// Each start iterates single-player improvements (a switch needs a strict
// decrease) until no player can improve; the best fixed point wins.
ValueReport TeamPbpDescent(const Game& game, const JointMeasure& joint,
                           int restarts, uint64_t seed);

// Deterministic best response of `player` against the other entries of
// `profile` (the player's own entry is ignored). Ties go to the lowest
// action index; zero-mass measurement points get action 0.
Policy BestResponse(const Game& game, const JointMeasure& joint, int player,
                    std::span<const Policy> profile);

struct BrIterationResult {
  PolicyProfile profile;
  bool converged = false;
  int rounds = 0;
  // Expected cost of each player (index i for player i + 1) at `profile`.
  std::vector<double> values;
};

// Round-robin best responses. Converged means a full round changed nothing,
// which makes the profile a pure Nash equilibrium.
BrIterationResult BrIteration(const Game& game, const JointMeasure& joint,
                              PolicyProfile initial, int max_rounds);

// Profile where every player plays action 0 everywhere.
PolicyProfile ConstantProfile(const Game& game, const JointMeasure& joint,
                              int action = 0);

}  // namespace infolab

#endif  // INFOLAB_GAME_H_
