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

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "infolab/errors.h"
#include "infolab/linear_program.h"

namespace infolab {
namespace {

constexpr double kTieTolerance = 1e-12;

// Support cell of a joint measure: state index, measurement indices, mass.
struct Cell {
  int x;
  std::vector<int> y;
  double mass;
};

std::vector<Cell> SupportCells(const JointMeasure& joint) {
  std::vector<Cell> cells;
  std::vector<int> index(joint.num_factors());
  for (size_t flat = 0; flat < joint.size(); ++flat) {
    if (joint[flat] <= 0.0) continue;
    joint.Unflatten(flat, index);
    cells.push_back({index[0], {index.begin() + 1, index.end()}, joint[flat]});
  }
  return cells;
}

void CheckJoint(const Game& game, const JointMeasure& joint) {
  if (joint.num_factors() != game.num_players() + 1) {
    throw DimensionError("joint has " + std::to_string(joint.num_factors()) +
                         " factors, game needs " +
                         std::to_string(game.num_players() + 1));
  }
  if (!SameSpace(joint.factor_ptr(0), game.state_ptr())) {
    throw DimensionError("joint state space differs from the game's");
  }
}

void CheckProfile(const Game& game, const JointMeasure& joint,
                  std::span<const Policy> profile, int skip = 0) {
  if (static_cast<int>(profile.size()) != game.num_players()) {
    throw DimensionError("profile needs one policy per player");
  }
  for (int p = 1; p <= game.num_players(); ++p) {
    if (p == skip) continue;
    const Policy& policy = profile[p - 1];
    if (policy.num_measurements() != joint.factor(p).size() ||
        policy.num_actions() != game.actions(p).size()) {
      throw DimensionError("policy of player " + std::to_string(p) +
                           " does not match its measurement or action space");
    }
  }
}

void CheckPlayer(const Game& game, int player) {
  if (player < 1 || player > game.num_players()) {
    throw PreconditionError("player " + std::to_string(player) +
                            " out of range");
  }
}

uint64_t CappedProduct(const std::vector<uint64_t>& factors, uint64_t cap) {
  uint64_t total = 1;
  for (uint64_t f : factors) {
    if (f != 0 && total > cap / f) return cap + 1;
    total *= f;
  }
  return total;
}

uint64_t PolicyCount(int actions, int measurements, uint64_t cap) {
  std::vector<uint64_t> factors(measurements, static_cast<uint64_t>(actions));
  return CappedProduct(factors, cap);
}

// Sum over action profiles of prod_j weight_j(u_j) * cost(x, u), where the
// fixed player's action is `fixed_action`.
double MixedCost(const Game& game, std::span<const double> cost, const Cell& cell,
                 std::span<const Policy> profile, int fixed_player,
                 int fixed_action) {
  int n = game.num_players();
  std::vector<int> u(n, 0);
  double total = 0.0;
  // Depth-first enumeration skipping zero weights.
  auto recurse = [&](auto&& self, int p, double weight) -> void {
    if (p == n) {
      total += weight * cost[game.CellIndex(cell.x, u)];
      return;
    }
    if (p + 1 == fixed_player) {
      u[p] = fixed_action;
      self(self, p + 1, weight);
      return;
    }
    const Policy& policy = profile[p];
    int y = cell.y[p];
    if (policy.deterministic()) {
      u[p] = policy.choices()[y];
      self(self, p + 1, weight);
      return;
    }
    for (int a = 0; a < policy.num_actions(); ++a) {
      double w = policy.Weight(y, a);
      if (w == 0.0) continue;
      u[p] = a;
      self(self, p + 1, weight * w);
    }
  };
  recurse(recurse, 0, 1.0);
  return total;
}

Policy CleanBehavioral(int player, SpacePtr measurements, SpacePtr actions,
                       const std::vector<double>& raw) {
  int rows = measurements->size(), cols = actions->size();
  std::vector<double> weights(raw.size());
  for (int r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      double w = std::max(0.0, raw[r * cols + c]);
      weights[r * cols + c] = w;
      sum += w;
    }
    if (sum <= 0.0) {
      weights[r * cols] = 1.0;
      continue;
    }
    for (int c = 0; c < cols; ++c) weights[r * cols + c] /= sum;
  }
  return Policy::Behavioral(
      player, Channel(std::move(measurements), std::move(actions), std::move(weights)));
}

// W[y1][y2][u1][u2] = sum_x mu(x, y1, y2) c(x, u1, u2).
struct PairTable {
  int ny1, ny2, nu1, nu2;
  std::vector<double> w;
  double at(int y1, int y2, int u1, int u2) const {
    return w[((static_cast<size_t>(y1) * ny2 + y2) * nu1 + u1) * nu2 + u2];
  }
};

PairTable BuildPairTable(const Game& game, const JointMeasure& joint) {
  PairTable t{joint.factor(1).size(), joint.factor(2).size(),
              game.actions(1).size(), game.actions(2).size(), {}};
  t.w.assign(static_cast<size_t>(t.ny1) * t.ny2 * t.nu1 * t.nu2, 0.0);
  auto cost = game.costs(1);
  for (const Cell& cell : SupportCells(joint)) {
    for (int u1 = 0; u1 < t.nu1; ++u1) {
      for (int u2 = 0; u2 < t.nu2; ++u2) {
        int u[2] = {u1, u2};
        t.w[((static_cast<size_t>(cell.y[0]) * t.ny2 + cell.y[1]) * t.nu1 + u1) *
                t.nu2 +
            u2] += cell.mass * cost[game.CellIndex(cell.x, u)];
      }
    }
  }
  return t;
}

void CheckZeroSum(const Game& game, const JointMeasure& joint) {
  if (game.kind() != GameKind::kZeroSum || game.num_players() != 2) {
    throw PreconditionError("zero-sum value needs a two-player zero-sum game");
  }
  CheckJoint(game, joint);
}

void CheckTeam(const Game& game, const JointMeasure& joint) {
  if (game.kind() != GameKind::kTeam) {
    throw PreconditionError("team value needs a team game");
  }
  CheckJoint(game, joint);
}

// Deterministic profile as one action digit per (player, measurement).
struct DigitLayout {
  std::vector<int> offset;  // first digit of each player
  std::vector<int> radix;   // action count of each digit
};

// Measurement points without mass get a single digit: their action is
// fixed at 0, as in BestResponse.
DigitLayout MakeLayout(const Game& game, const JointMeasure& joint) {
  DigitLayout layout;
  for (int p = 1; p <= game.num_players(); ++p) {
    layout.offset.push_back(static_cast<int>(layout.radix.size()));
    Measure marginal = FactorMarginal(joint, p);
    for (int y = 0; y < joint.factor(p).size(); ++y) {
      layout.radix.push_back(marginal[y] > 0.0 ? game.actions(p).size() : 1);
    }
  }
  return layout;
}

double DigitCost(const Game& game, std::span<const double> cost,
                 const std::vector<Cell>& cells, const DigitLayout& layout,
                 const std::vector<int>& digits) {
  int n = game.num_players();
  std::vector<int> u(n);
  double total = 0.0;
  for (const Cell& cell : cells) {
    for (int p = 0; p < n; ++p) u[p] = digits[layout.offset[p] + cell.y[p]];
    total += cell.mass * cost[game.CellIndex(cell.x, u)];
  }
  return total;
}

PolicyProfile DigitsToProfile(const Game& game, const JointMeasure& joint,
                              const DigitLayout& layout,
                              const std::vector<int>& digits) {
  PolicyProfile profile;
  for (int p = 1; p <= game.num_players(); ++p) {
    int begin = layout.offset[p - 1];
    std::vector<int> choice(digits.begin() + begin,
                            digits.begin() + begin + joint.factor(p).size());
    profile.push_back(Policy::Deterministic(p, joint.factor_ptr(p),
                                            game.actions_ptr(p), std::move(choice)));
  }
  return profile;
}

// Conditional cost (times marginal mass) of each action of `player` at each
// of its measurement points: scores[y * |U| + u].
std::vector<double> ResponseScores(const Game& game, const JointMeasure& joint,
                                   int player, std::span<const Policy> profile) {
  int ny = joint.factor(player).size(), nu = game.actions(player).size();
  std::vector<double> scores(static_cast<size_t>(ny) * nu, 0.0);
  auto cost = game.costs(player);
  for (const Cell& cell : SupportCells(joint)) {
    int y = cell.y[player - 1];
    for (int u = 0; u < nu; ++u) {
      scores[static_cast<size_t>(y) * nu + u] +=
          cell.mass * MixedCost(game, cost, cell, profile, player, u);
    }
  }
  return scores;
}

std::vector<double> MeasurementMass(const JointMeasure& joint, int player) {
  Measure marginal = FactorMarginal(joint, player);
  return {marginal.mass().begin(), marginal.mass().end()};
}

int ArgMinLowest(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[i] < values[best] - kTieTolerance) best = i;
  }
  return best;
}

}  // namespace

std::string ToString(GameKind kind) {
  switch (kind) {
    case GameKind::kZeroSum: return "zero-sum";
    case GameKind::kTeam: return "team";
    case GameKind::kGeneral: return "general";
  }
  return "unknown";
}

Game::Game(SpacePtr state, std::vector<SpacePtr> actions,
           std::vector<std::vector<double>> costs, GameKind kind)
    : state_(std::move(state)),
      actions_(std::move(actions)),
      costs_(std::move(costs)),
      kind_(kind) {
  if (!state_ || state_->size() == 0) throw PreconditionError("empty state space");
  if (actions_.empty()) throw PreconditionError("game needs at least one player");
  profile_count_ = state_->size();
  for (const auto& a : actions_) {
    if (!a || a->size() == 0) throw PreconditionError("empty action space");
    profile_count_ *= a->size();
  }
  if (costs_.size() != actions_.size()) {
    throw DimensionError("need one cost tensor per player");
  }
  for (const auto& c : costs_) {
    if (c.size() != profile_count_) {
      throw DimensionError("cost tensor has " + std::to_string(c.size()) +
                           " entries, expected " + std::to_string(profile_count_));
    }
    for (double v : c) {
      if (!std::isfinite(v)) throw PreconditionError("cost entries must be finite");
    }
  }
  if (kind_ == GameKind::kZeroSum) {
    if (actions_.size() != 2) throw PreconditionError("zero-sum games have two players");
    for (size_t k = 0; k < profile_count_; ++k) {
      if (costs_[0][k] + costs_[1][k] != 0.0) {
        throw PreconditionError("zero-sum costs must satisfy c2 = -c1");
      }
    }
  }
  if (kind_ == GameKind::kTeam) {
    for (const auto& c : costs_) {
      if (c != costs_[0]) throw PreconditionError("team costs must be identical");
    }
  }
}

Game Game::ZeroSum(SpacePtr state, SpacePtr minimizer_actions,
                   SpacePtr maximizer_actions, std::vector<double> cost) {
  std::vector<double> negated(cost.size());
  for (size_t k = 0; k < cost.size(); ++k) negated[k] = -cost[k];
  return Game(std::move(state), {std::move(minimizer_actions), std::move(maximizer_actions)},
              {std::move(cost), std::move(negated)}, GameKind::kZeroSum);
}

Game Game::Team(SpacePtr state, std::vector<SpacePtr> actions,
                std::vector<double> cost) {
  std::vector<std::vector<double>> costs(actions.size(), cost);
  return Game(std::move(state), std::move(actions), std::move(costs), GameKind::kTeam);
}

std::vector<double> Game::Tabulate(const MetricFiniteSpace& state,
                                   const std::vector<SpacePtr>& actions,
                                   const CostFn& fn) {
  size_t count = state.size();
  for (const auto& a : actions) count *= a->size();
  std::vector<double> out(count);
  std::vector<int> u(actions.size(), 0);
  for (size_t k = 0; k < count; ++k) {
    size_t rest = k;
    for (int p = static_cast<int>(actions.size()) - 1; p >= 0; --p) {
      u[p] = static_cast<int>(rest % actions[p]->size());
      rest /= actions[p]->size();
    }
    out[k] = fn(static_cast<int>(rest), u);
  }
  return out;
}

size_t Game::CellIndex(int x, std::span<const int> actions) const {
  size_t index = static_cast<size_t>(x);
  for (size_t p = 0; p < actions_.size(); ++p) {
    index = index * actions_[p]->size() + actions[p];
  }
  return index;
}

double Game::Cost(int player, int x, std::span<const int> actions) const {
  return costs_[player - 1][CellIndex(x, actions)];
}

double Game::CostBound() const {
  double bound = 0.0;
  for (const auto& c : costs_) {
    for (double v : c) bound = std::max(bound, std::abs(v));
  }
  return bound;
}

Policy::Policy(int player, Channel rule, bool deterministic, std::vector<int> choice)
    : player_(player),
      rule_(std::move(rule)),
      deterministic_(deterministic),
      choice_(std::move(choice)) {}

Policy Policy::Deterministic(int player, SpacePtr measurements, SpacePtr actions,
                             std::vector<int> choice) {
  if (static_cast<int>(choice.size()) != measurements->size()) {
    throw DimensionError("deterministic policy needs one action per measurement");
  }
  std::vector<double> weights(choice.size() * actions->size(), 0.0);
  for (size_t y = 0; y < choice.size(); ++y) {
    if (choice[y] < 0 || choice[y] >= actions->size()) {
      throw PreconditionError("action index out of range");
    }
    weights[y * actions->size() + choice[y]] = 1.0;
  }
  return Policy(player,
                Channel(std::move(measurements), std::move(actions), std::move(weights)),
                true, std::move(choice));
}

Policy Policy::Behavioral(int player, Channel rule) {
  return Policy(player, std::move(rule), false, {});
}

double Policy::Weight(int measurement, int action) const {
  if (deterministic_) return choice_[measurement] == action ? 1.0 : 0.0;
  return rule_(measurement, action);
}

bool Policy::operator==(const Policy& other) const {
  if (player_ != other.player_ || rule_.rows() != other.rule_.rows() ||
      rule_.cols() != other.rule_.cols()) {
    return false;
  }
  auto a = rule_.weights(), b = other.rule_.weights();
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

double ExpectedCost(const Game& game, const JointMeasure& joint,
                    std::span<const Policy> profile, int player) {
  CheckPlayer(game, player);
  CheckJoint(game, joint);
  CheckProfile(game, joint, profile);
  auto cost = game.costs(player);
  double total = 0.0;
  for (const Cell& cell : SupportCells(joint)) {
    total += cell.mass * MixedCost(game, cost, cell, profile, 0, 0);
  }
  return total;
}

ValueReport ZeroSumValue(const Game& game, const JointMeasure& joint) {
  CheckZeroSum(game, joint);
  PairTable t = BuildPairTable(game, joint);

  // Minimizer: g1(u1|y1) >= 0 rows summing to 1, t(y2) free,
  // t(y2) >= sum_{y1,u1} W[y1][y2][u1][u2] g1(u1|y1) for all (y2, u2).
  LinearProgram minimax;
  std::vector<int> g1(static_cast<size_t>(t.ny1) * t.nu1);
  for (auto& v : g1) v = minimax.AddVariable(0.0);
  std::vector<int> epi(t.ny2);
  for (auto& v : epi) v = minimax.AddVariable(1.0, -kInfinity, kInfinity);
  for (int y1 = 0; y1 < t.ny1; ++y1) {
    std::vector<LinearProgram::Term> row;
    for (int u1 = 0; u1 < t.nu1; ++u1) row.push_back({g1[y1 * t.nu1 + u1], 1.0});
    minimax.AddConstraint(std::move(row), Relation::kEqual, 1.0);
  }
  for (int y2 = 0; y2 < t.ny2; ++y2) {
    for (int u2 = 0; u2 < t.nu2; ++u2) {
      std::vector<LinearProgram::Term> row{{epi[y2], 1.0}};
      for (int y1 = 0; y1 < t.ny1; ++y1) {
        for (int u1 = 0; u1 < t.nu1; ++u1) {
          double w = t.at(y1, y2, u1, u2);
          if (w != 0.0) row.push_back({g1[y1 * t.nu1 + u1], -w});
        }
      }
      minimax.AddConstraint(std::move(row), Relation::kGreaterEqual, 0.0);
    }
  }

  // Maximizer: g2(u2|y2) rows summing to 1, s(y1) free,
  // s(y1) <= sum_{y2,u2} W[y1][y2][u1][u2] g2(u2|y2) for all (y1, u1).
  LinearProgram maximin;
  std::vector<int> g2(static_cast<size_t>(t.ny2) * t.nu2);
  for (auto& v : g2) v = maximin.AddVariable(0.0);
  std::vector<int> low(t.ny1);
  for (auto& v : low) v = maximin.AddVariable(-1.0, -kInfinity, kInfinity);
  for (int y2 = 0; y2 < t.ny2; ++y2) {
    std::vector<LinearProgram::Term> row;
    for (int u2 = 0; u2 < t.nu2; ++u2) row.push_back({g2[y2 * t.nu2 + u2], 1.0});
    maximin.AddConstraint(std::move(row), Relation::kEqual, 1.0);
  }
  for (int y1 = 0; y1 < t.ny1; ++y1) {
    for (int u1 = 0; u1 < t.nu1; ++u1) {
      std::vector<LinearProgram::Term> row{{low[y1], 1.0}};
      for (int y2 = 0; y2 < t.ny2; ++y2) {
        for (int u2 = 0; u2 < t.nu2; ++u2) {
          double w = t.at(y1, y2, u1, u2);
          if (w != 0.0) row.push_back({g2[y2 * t.nu2 + u2], -w});
        }
      }
      maximin.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
    }
  }

  LinearProgramSolution upper = Solve(minimax);
  LinearProgramSolution lower = Solve(maximin);
  if (!upper.optimal() || !lower.optimal()) {
    throw SolverFailure("zero-sum program ended " + ToString(upper.status) + "/" +
                        ToString(lower.status));
  }
  ValueReport report;
  report.certificate.minimax = upper.objective;
  report.certificate.maximin = -lower.objective;
  report.certificate.duality_gap =
      std::abs(report.certificate.minimax - report.certificate.maximin);
  report.certificate.method = "lp";
  if (report.certificate.duality_gap > kDualityTolerance) {
    throw InternalConsistencyError("minimax and maximin differ by " +
                                   std::to_string(report.certificate.duality_gap));
  }
  report.value = report.certificate.minimax;
  std::vector<double> w1(g1.size()), w2(g2.size());
  for (size_t k = 0; k < g1.size(); ++k) w1[k] = upper.primal[g1[k]];
  for (size_t k = 0; k < g2.size(); ++k) w2[k] = lower.primal[g2[k]];
  report.policies.push_back(
      CleanBehavioral(1, joint.factor_ptr(1), game.actions_ptr(1), w1));
  report.policies.push_back(
      CleanBehavioral(2, joint.factor_ptr(2), game.actions_ptr(2), w2));
  return report;
}

double ZeroSumValueOracle(const Game& game, const JointMeasure& joint) {
  CheckZeroSum(game, joint);
  PairTable t = BuildPairTable(game, joint);
  uint64_t rows = PolicyCount(t.nu1, t.ny1, kOracleProfileCap);
  uint64_t cols = PolicyCount(t.nu2, t.ny2, kOracleProfileCap);
  if (CappedProduct({rows, cols}, kOracleProfileCap) > kOracleProfileCap) {
    throw CapacityError("normal form exceeds " + std::to_string(kOracleProfileCap) +
                        " profile pairs");
  }
  auto decode = [](uint64_t code, int radix, int digits) {
    std::vector<int> d(digits);
    for (int k = digits - 1; k >= 0; --k) {
      d[k] = static_cast<int>(code % radix);
      code /= radix;
    }
    return d;
  };
  std::vector<std::vector<int>> row_policy(rows), col_policy(cols);
  for (uint64_t a = 0; a < rows; ++a) row_policy[a] = decode(a, t.nu1, t.ny1);
  for (uint64_t b = 0; b < cols; ++b) col_policy[b] = decode(b, t.nu2, t.ny2);

  // min v s.t. sum_a p_a P[a][b] <= v for every column b, p in the simplex.
  LinearProgram lp;
  std::vector<int> p(rows);
  for (auto& v : p) v = lp.AddVariable(0.0);
  int value = lp.AddVariable(1.0, -kInfinity, kInfinity);
  std::vector<LinearProgram::Term> simplex;
  for (int v : p) simplex.push_back({v, 1.0});
  lp.AddConstraint(std::move(simplex), Relation::kEqual, 1.0);
  for (uint64_t b = 0; b < cols; ++b) {
    std::vector<LinearProgram::Term> row{{value, -1.0}};
    for (uint64_t a = 0; a < rows; ++a) {
      double payoff = 0.0;
      for (int y1 = 0; y1 < t.ny1; ++y1) {
        for (int y2 = 0; y2 < t.ny2; ++y2) {
          payoff += t.at(y1, y2, row_policy[a][y1], col_policy[b][y2]);
        }
      }
      if (payoff != 0.0) row.push_back({p[a], payoff});
    }
    lp.AddConstraint(std::move(row), Relation::kLessEqual, 0.0);
  }
  LinearProgramSolution sol = Solve(lp);
  if (!sol.optimal()) {
    throw SolverFailure("normal-form program ended " + ToString(sol.status));
  }
  return sol.objective;
}

ValueReport TeamValueBruteForce(const Game& game, const JointMeasure& joint) {
  CheckTeam(game, joint);
  DigitLayout layout = MakeLayout(game, joint);
  std::vector<uint64_t> radix(layout.radix.begin(), layout.radix.end());
  uint64_t total = CappedProduct(radix, kTeamProfileCap);
  if (total > kTeamProfileCap) {
    throw CapacityError("team search exceeds " + std::to_string(kTeamProfileCap) +
                        " profiles; use TeamPbpDescent");
  }
  std::vector<Cell> cells = SupportCells(joint);
  auto cost = game.costs(1);
  std::vector<int> digits(layout.radix.size(), 0), best_digits = digits;
  double best = kInfinity;
  // Odometer with the last digit fastest, which visits profiles in
  // lexicographic order; strict improvement keeps the first minimizer.
  for (uint64_t k = 0; k < total; ++k) {
    double value = DigitCost(game, cost, cells, layout, digits);
    if (value < best) {
      best = value;
      best_digits = digits;
    }
    for (int d = static_cast<int>(digits.size()) - 1; d >= 0; --d) {
      if (++digits[d] < layout.radix[d]) break;
      digits[d] = 0;
    }
  }
  ValueReport report;
  report.value = best;
  report.policies = DigitsToProfile(game, joint, layout, best_digits);
  report.certificate.method = "exhaustive";
  report.certificate.profiles_searched = total;
  return report;
}

ValueReport TeamPbpDescent(const Game& game, const JointMeasure& joint,
                           int restarts, uint64_t seed) {
  CheckTeam(game, joint);
  if (restarts < 1) throw PreconditionError("restarts must be positive");
  DigitLayout layout = MakeLayout(game, joint);
  std::vector<Cell> cells = SupportCells(joint);
  auto cost = game.costs(1);
  int n = game.num_players();

  // cells_at[p][y]: support cells where player p + 1 observes y.
  std::vector<std::vector<std::vector<int>>> cells_at(n);
  for (int p = 0; p < n; ++p) {
    cells_at[p].resize(joint.factor(p + 1).size());
    for (size_t c = 0; c < cells.size(); ++c) {
      cells_at[p][cells[c].y[p]].push_back(static_cast<int>(c));
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<int> best_digits;
  double best = kInfinity;
  std::vector<int> u(n);
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> digits(layout.radix.size());
    for (size_t d = 0; d < digits.size(); ++d) {
      digits[d] = std::uniform_int_distribution<int>(0, layout.radix[d] - 1)(rng);
    }
    bool improved = true;
    while (improved) {
      improved = false;
      for (int p = 0; p < n; ++p) {
        for (int y = 0; y < joint.factor(p + 1).size(); ++y) {
          const auto& at = cells_at[p][y];
          if (at.empty()) continue;
          int slot = layout.offset[p] + y;
          std::vector<double> score(layout.radix[slot], 0.0);
          for (int a = 0; a < layout.radix[slot]; ++a) {
            for (int c : at) {
              const Cell& cell = cells[c];
              for (int q = 0; q < n; ++q) u[q] = digits[layout.offset[q] + cell.y[q]];
              u[p] = a;
              score[a] += cell.mass * cost[game.CellIndex(cell.x, u)];
            }
          }
          int current = digits[slot];
          int choice = ArgMinLowest(score);
          if (score[choice] < score[current] - kTieTolerance) {
            digits[slot] = choice;
            improved = true;
          }
        }
      }
    }
    double value = DigitCost(game, cost, cells, layout, digits);
    if (value < best) {
      best = value;
      best_digits = digits;
    }
  }
  ValueReport report;
  report.value = best;
  report.policies = DigitsToProfile(game, joint, layout, best_digits);
  report.certificate.method = "descent";
  report.certificate.profiles_searched = static_cast<uint64_t>(restarts);
  return report;
}

Policy BestResponse(const Game& game, const JointMeasure& joint, int player,
                    std::span<const Policy> profile) {
  CheckPlayer(game, player);
  CheckJoint(game, joint);
  CheckProfile(game, joint, profile, player);
  int ny = joint.factor(player).size(), nu = game.actions(player).size();
  std::vector<double> scores = ResponseScores(game, joint, player, profile);
  std::vector<double> mass = MeasurementMass(joint, player);
  std::vector<int> choice(ny, 0);
  for (int y = 0; y < ny; ++y) {
    if (mass[y] <= 0.0) continue;
    choice[y] = ArgMinLowest(std::span<const double>(scores).subspan(
        static_cast<size_t>(y) * nu, nu));
  }
  return Policy::Deterministic(player, joint.factor_ptr(player),
                               game.actions_ptr(player), std::move(choice));
}

BrIterationResult BrIteration(const Game& game, const JointMeasure& joint,
                              PolicyProfile initial, int max_rounds) {
  CheckJoint(game, joint);
  CheckProfile(game, joint, initial);
  BrIterationResult result;
  result.profile = std::move(initial);
  for (int round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (int p = 1; p <= game.num_players(); ++p) {
      Policy response = BestResponse(game, joint, p, result.profile);
      if (!(response == result.profile[p - 1])) {
        result.profile[p - 1] = std::move(response);
        changed = true;
      }
    }
    result.rounds = round;
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  for (int p = 1; p <= game.num_players(); ++p) {
    result.values.push_back(ExpectedCost(game, joint, result.profile, p));
  }
  return result;
}

PolicyProfile ConstantProfile(const Game& game, const JointMeasure& joint,
                              int action) {
  CheckJoint(game, joint);
  PolicyProfile profile;
  for (int p = 1; p <= game.num_players(); ++p) {
    profile.push_back(Policy::Deterministic(
        p, joint.factor_ptr(p), game.actions_ptr(p),
        std::vector<int>(joint.factor(p).size(), action)));
  }
  return profile;
}

}  // namespace infolab
