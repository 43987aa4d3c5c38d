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

// infolab: command-line front end for the value, distance and experiment
// routines of the library.
//
//   infolab value --model M.json --game G.json [--method auto|zerosum|oracle|team|team-descent|br]
//   infolab distance --metric tv|w1|d2|lecam A.json B.json [--player P] [--show-kernels]
//   infolab experiment SCENARIO [--m-range a..b] [--out file.csv] [--seed N] [--tol T]
//
// Exit status: 0 success, 2 input error, 3 capacity exceeded, 4 solver or
// internal failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "infolab/errors.h"
#include "infolab/game.h"
#include "infolab/info_compare.h"
#include "infolab/measure.h"
#include "infolab/model_io.h"
#include "infolab/scenarios.h"

namespace infolab {
namespace {

constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInternal = 4;

// Seed used when --seed is not given.
constexpr uint64_t kDefaultSeed = 17;

const std::vector<std::string> kScenarios = {
    "counterexample-nonzerosum", "gaussian-garbling",         "quantizer-refinement",
    "prior-shift-continuous",    "prior-shift-discontinuous", "garbling-chain",
};

struct IndexRange {
  int first = 0;
  int last = 0;
};

std::optional<IndexRange> ParseRange(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos) return std::nullopt;
  try {
    size_t used_a = 0;
    size_t used_b = 0;
    std::string a = text.substr(0, dots);
    std::string b = text.substr(dots + 2);
    IndexRange r{std::stoi(a, &used_a), std::stoi(b, &used_b)};
    if (used_a != a.size() || used_b != b.size() || r.first > r.last) return std::nullopt;
    return r;
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
}

std::string Num(double v) { return FormatNumber(v == 0.0 ? 0.0 : v); }

// ------------------------------------------------------------------- value

struct ValueArgs {
  std::string model;
  std::string game;
  std::string method = "auto";
  int restarts = 16;
  uint64_t seed = kDefaultSeed;
  int max_rounds = 100;
};

void PrintPolicy(std::ostream& out, const Policy& policy, const MetricFiniteSpace& actions) {
  const Channel& rule = policy.rule();
  out << "policy player " << policy.player() << "\n";
  for (int y = 0; y < rule.rows(); ++y) {
    out << "  " << rule.from().label(y) << " ->";
    if (policy.deterministic()) {
      out << " " << actions.label(policy.choices()[y]);
    } else {
      for (int u = 0; u < rule.cols(); ++u) {
        if (rule(y, u) > 0.0) out << " " << actions.label(u) << ":" << Num(rule(y, u));
      }
    }
    out << "\n";
  }
}

void PrintProfile(std::ostream& out, const Game& game, const PolicyProfile& profile) {
  for (const Policy& p : profile) PrintPolicy(out, p, game.actions(p.player()));
}

int RunValue(const ValueArgs& args) {
  Model model = LoadModel(args.model);
  Game game = LoadGame(args.game, model.joint.factor_ptr(0));
  if (game.num_players() != model.joint.num_factors() - 1) {
    throw DimensionError("the game has " + std::to_string(game.num_players()) +
                         " players and the model " +
                         std::to_string(model.joint.num_factors() - 1));
  }
  std::string method = args.method;
  if (method == "auto") {
    method = game.kind() == GameKind::kZeroSum ? "zerosum"
             : game.kind() == GameKind::kTeam  ? "team"
                                               : "br";
  }
  bool zero_sum_method = method == "zerosum" || method == "oracle";
  bool team_method = method == "team" || method == "team-descent";
  if (zero_sum_method && game.kind() != GameKind::kZeroSum) {
    throw PreconditionError("method " + method + " needs a zero-sum game");
  }
  if (team_method && game.kind() != GameKind::kTeam) {
    throw PreconditionError("method " + method + " needs a team game");
  }

  std::ostream& out = std::cout;
  out << "game " << ToString(game.kind()) << ", method " << method << "\n";
  if (method == "zerosum") {
    ValueReport r = ZeroSumValue(game, model.joint);
    out << "value " << Num(r.value) << "\n";
    out << "minimax " << Num(r.certificate.minimax) << "\n";
    out << "maximin " << Num(r.certificate.maximin) << "\n";
    out << "duality_gap " << Num(r.certificate.duality_gap) << "\n";
    PrintProfile(out, game, r.policies);
  } else if (method == "oracle") {
    out << "value " << Num(ZeroSumValueOracle(game, model.joint)) << "\n";
  } else if (team_method) {
    ValueReport r = method == "team" ? TeamValueBruteForce(game, model.joint)
                                     : TeamPbpDescent(game, model.joint, args.restarts, args.seed);
    out << "value " << Num(r.value) << "\n";
    out << "search " << r.certificate.method << ", profiles " << r.certificate.profiles_searched
        << "\n";
    PrintProfile(out, game, r.policies);
  } else if (method == "br") {
    BrIterationResult r =
        BrIteration(game, model.joint, ConstantProfile(game, model.joint), args.max_rounds);
    out << "converged " << (r.converged ? "yes" : "no") << " after " << r.rounds << " rounds\n";
    for (size_t i = 0; i < r.values.size(); ++i) {
      out << "value player " << i + 1 << " " << Num(r.values[i]) << "\n";
    }
    PrintProfile(out, game, r.profile);
  } else {
    throw PreconditionError("unknown method '" + method + "'");
  }
  return 0;
}

// ---------------------------------------------------------------- distance

struct DistanceArgs {
  std::string metric = "tv";
  std::string a;
  std::string b;
  int player = 1;
  bool show_kernels = false;
};

void PrintKernel(std::ostream& out, const std::string& title, const Channel& k) {
  out << title << "\n";
  for (int i = 0; i < k.rows(); ++i) {
    out << "  " << k.from().label(i) << " ->";
    for (int j = 0; j < k.cols(); ++j) out << " " << Num(k(i, j));
    out << "\n";
  }
}

void PrintCertificate(std::ostream& out, const std::string& direction,
                      const GarblingCertificate& c) {
  out << direction << " " << Num(c.deficiency) << "\n";
  for (size_t k = 0; k < c.kernels.size(); ++k) {
    PrintKernel(out, "  kernel on player " + std::to_string(c.players[k]), c.kernels[k]);
  }
}

int RunDistance(const DistanceArgs& args) {
  Model a = LoadModel(args.a);
  Model b = LoadModel(args.b);
  std::ostream& out = std::cout;
  if (args.metric == "tv") {
    out << Num(TvDistance(a.joint, b.joint)) << "\n";
  } else if (args.metric == "w1") {
    out << Num(JointWasserstein1(a.joint, b.joint)) << "\n";
  } else if (args.metric == "d2") {
    out << Num(PeskiD2(a.joint, b.joint)) << "\n";
    if (args.show_kernels) {
      PrintCertificate(out, "gap A->B", CrossGarblingGap(a.joint, b.joint));
      PrintCertificate(out, "gap B->A", CrossGarblingGap(b.joint, a.joint));
    }
  } else if (args.metric == "lecam") {
    if (!SameSpace(a.joint.factor_ptr(0), b.joint.factor_ptr(0))) {
      throw DimensionError("the two models have different state spaces");
    }
    const MetricFiniteSpace& states = a.joint.factor(0);
    Channel qa = PlayerChannel(a, args.player);
    Channel qb = PlayerChannel(b, args.player);
    out << Num(LeCamDistance(states, qa, qb)) << "\n";
    if (args.show_kernels) {
      PrintCertificate(out, "deficiency A->B", LeCamDeficiency(states, qa, qb));
      PrintCertificate(out, "deficiency B->A", LeCamDeficiency(states, qb, qa));
    }
  } else {
    throw PreconditionError("unknown metric '" + args.metric + "'");
  }
  return 0;
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string scenario;
  std::string m_range;
  std::string out;
  uint64_t seed = kDefaultSeed;
  double tol = 1e-3;
  std::string game = "guessing";
  int grid_x = 4;
  int grid_y = 10;
  int player = 2;
  bool classify = false;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<std::string> summary;
};

double MaxGap(const std::vector<ExperimentRow>& rows) {
  double gap = 0.0;
  for (const auto& r : rows) gap = std::max(gap, r.value_gap);
  return gap;
}

Game NamedGame(const std::string& name, const SpacePtr& states) {
  if (name == "guessing") return GuessingGame(states);
  if (name == "estimation") return EstimationGame(states);
  throw PreconditionError("unknown game '" + name + "' (guessing, estimation)");
}

IndexRange RangeOr(const ExperimentArgs& args, IndexRange fallback) {
  if (args.m_range.empty()) return fallback;
  auto r = ParseRange(args.m_range);
  if (!r) throw PreconditionError("--m-range expects a..b with a <= b");
  return *r;
}

// Non-increasing (direction < 0) or non-decreasing (direction > 0) within tol.
bool Monotone(const std::vector<ExperimentRow>& rows, int direction, double tol) {
  for (size_t k = 0; k + 2 < rows.size(); ++k) {
    double step = rows[k + 1].values[0] - rows[k].values[0];
    if (direction * step < -tol) return false;
  }
  return true;
}

void AddClassification(ExperimentResult& result, const Sequence& seq, double tol) {
  SequenceClassification c = ClassifySequence(seq.members, tol);
  double worst = 0.0;
  const auto& gaps =
      c.kind == SequenceKind::kMinimizerGarbling ? c.minimizer_gaps : c.maximizer_gaps;
  for (double g : gaps) worst = std::max(worst, g);
  result.summary.push_back("classification " + ToString(c.kind) + " at tolerance " + Num(tol) +
                           ", largest step gap " + Num(worst));
}

ExperimentResult RunScenario(const ExperimentArgs& args) {
  ExperimentResult result;
  const std::string& s = args.scenario;
  if (s == "counterexample-nonzerosum") {
    IndexRange r = RangeOr(args, {1, 20});
    if (r.first < 1) throw PreconditionError("indices start at 1");
    result.rows = RunCounterexample(r.first, r.last);
    CounterexampleRow limit = CounterexampleAt(std::nullopt);
    double finite_p2 = 0.0;
    for (int m = r.first; m <= r.last; ++m) {
      finite_p2 = std::max(finite_p2, std::abs(CounterexampleAt(m).value_p2));
    }
    result.summary.push_back("player 2 value: largest |value| at finite m " + Num(finite_p2) +
                             ", limit " + Num(limit.value_p2) + " with u2 = " + Num(limit.u2));
    return result;
  }
  if (s == "gaussian-garbling") {
    IndexRange r = RangeOr(args, {1, 8});
    Sequence seq = GaussianGarblingSequence(args.grid_x, args.grid_y, r.first, r.last);
    result.rows = RunConvergenceExperiment(seq, NamedGame(args.game, seq.limit.factor_ptr(0)));
    result.summary.push_back(std::string("value column non-increasing within ") + Num(args.tol) +
                             ": " + (Monotone(result.rows, -1, args.tol) ? "yes" : "no"));
    if (args.classify) AddClassification(result, seq, args.tol);
    return result;
  }
  if (s == "quantizer-refinement") {
    IndexRange r = RangeOr(args, {0, 3});
    const int grid = 16;
    Sequence seq = QuantizerSequence(grid, r.first, r.last);
    result.rows = RunConvergenceExperiment(seq, EstimationGame(seq.limit.factor_ptr(0)));
    bool w1_decreasing = true;
    bool w1_bounded = true;
    double min_tv = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < result.rows.size(); ++k) {
      const auto& row = result.rows[k];
      if (k > 0 && row.w1_to_limit >= result.rows[k - 1].w1_to_limit) w1_decreasing = false;
      if (row.w1_to_limit > std::ldexp(1.0, -*row.m) + 1e-12) w1_bounded = false;
      if ((1 << *row.m) < grid) min_tv = std::min(min_tv, row.tv_to_limit);
    }
    result.summary.push_back(std::string("w1_to_limit strictly decreasing: ") +
                             (w1_decreasing ? "yes" : "no") +
                             ", within 2^-m: " + (w1_bounded ? "yes" : "no"));
    result.summary.push_back("smallest tv_to_limit below the grid resolution " + Num(min_tv));
    return result;
  }
  if (s == "prior-shift-continuous" || s == "prior-shift-discontinuous") {
    IndexRange r = RangeOr(args, {5, 50});
    PriorChannelKind kind = s == "prior-shift-continuous" ? PriorChannelKind::kTvContinuous
                                                          : PriorChannelKind::kDiscontinuous;
    Sequence seq = PriorShiftSequence(kind, r.first, r.last);
    Game game = ThresholdGuessGame(PriorShiftStates());
    result.rows = RunConvergenceExperiment(seq, game);
    double ratio = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < result.rows.size(); ++k) {
      const auto& row = result.rows[k];
      min_gap = std::min(min_gap, row.value_gap);
      if (row.w1_to_limit > 0.0) ratio = std::max(ratio, row.value_gap / row.w1_to_limit);
    }
    if (kind == PriorChannelKind::kTvContinuous) {
      double lipschitz = ChannelLipschitz(PriorShiftChannel(kind));
      double constant = CostLipschitz(game) + game.CostBound() * lipschitz;
      result.summary.push_back("channel TV-Lipschitz modulus " + Num(lipschitz) +
                               ", constant C " + Num(constant));
      result.summary.push_back("largest value_gap / w1_to_limit " + Num(ratio) +
                               (ratio <= constant + 1e-9 ? " (within C)" : " (exceeds C)"));
    } else {
      result.summary.push_back("smallest finite-m value_gap " + Num(min_gap) +
                               ", last w1_to_limit " +
                               Num(result.rows[result.rows.size() - 2].w1_to_limit));
    }
    return result;
  }
  if (s == "garbling-chain") {
    IndexRange r = RangeOr(args, {0, 5});
    if (r.first != 0) throw PreconditionError("garbling chains start at index 0");
    Sequence seq = GarblingChainSequence(r.last + 1, args.player, args.seed);
    result.rows = RunConvergenceExperiment(seq, NamedGame(args.game, seq.limit.factor_ptr(0)));
    int direction = args.player == 2 ? -1 : 1;
    result.summary.push_back(std::string("value column ") +
                             (direction < 0 ? "non-increasing" : "non-decreasing") +
                             " within " + Num(args.tol) + ": " +
                             (Monotone(result.rows, direction, args.tol) ? "yes" : "no"));
    if (args.classify) AddClassification(result, seq, args.tol);
    return result;
  }
  std::string names;
  for (const auto& n : kScenarios) names += (names.empty() ? "" : ", ") + n;
  throw PreconditionError("unknown scenario '" + s + "'; available: " + names);
}

int RunExperiment(const ExperimentArgs& args) {
  std::optional<std::ofstream> file;
  if (!args.out.empty()) {
    file.emplace(args.out, std::ios::binary);
    if (!*file) throw PreconditionError("cannot write " + args.out);
  }
  ExperimentResult result = RunScenario(args);
  std::ostream& csv = file ? static_cast<std::ostream&>(*file) : std::cout;
  std::ostream& summary = file ? std::cout : std::cerr;
  WriteCsv(csv, result.rows);
  if (file) {
    file->close();
    if (!*file) throw PreconditionError("failed writing " + args.out);
  }
  summary << "scenario " << args.scenario << ": " << result.rows.size() - 1
          << " indices and the limit, max value_gap " << Num(MaxGap(result.rows)) << "\n";
  for (const auto& line : result.summary) summary << line << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Values and distances of finite information structures"};
  app.require_subcommand(1);

  ValueArgs value;
  auto* value_cmd = app.add_subcommand("value", "value of a game on a model");
  value_cmd->add_option("--model", value.model, "model file")->required();
  value_cmd->add_option("--game", value.game, "game file")->required();
  value_cmd->add_option("--method", value.method, "solver")
      ->check(CLI::IsMember({"auto", "zerosum", "oracle", "team", "team-descent", "br"}));
  value_cmd->add_option("--restarts", value.restarts, "team-descent restarts")
      ->check(CLI::PositiveNumber);
  value_cmd->add_option("--seed", value.seed, "team-descent seed");
  value_cmd->add_option("--max-rounds", value.max_rounds, "best-response rounds")
      ->check(CLI::PositiveNumber);

  DistanceArgs distance;
  auto* distance_cmd = app.add_subcommand("distance", "distance between two models");
  distance_cmd->add_option("--metric", distance.metric, "tv, w1, d2 or lecam")
      ->check(CLI::IsMember({"tv", "w1", "d2", "lecam"}));
  distance_cmd->add_option("a", distance.a, "first model file")->required();
  distance_cmd->add_option("b", distance.b, "second model file")->required();
  distance_cmd->add_option("--player", distance.player, "player whose channels lecam compares");
  distance_cmd->add_flag("--show-kernels", distance.show_kernels,
                         "print the minimizing kernels (d2, lecam)");

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "run a convergence scenario");
  experiment_cmd->add_option("scenario", experiment.scenario, "scenario name")->required();
  experiment_cmd->add_option("--m-range", experiment.m_range, "index range a..b");
  experiment_cmd->add_option("--out", experiment.out, "CSV output file");
  experiment_cmd->add_option("--seed", experiment.seed, "seed for random scenarios");
  experiment_cmd->add_option("--tol", experiment.tol, "monotonicity and garbling tolerance")
      ->check(CLI::NonNegativeNumber);
  experiment_cmd->add_option("--game", experiment.game, "guessing or estimation");
  experiment_cmd->add_option("--grid-x", experiment.grid_x, "gaussian state grid size");
  experiment_cmd->add_option("--grid-y", experiment.grid_y, "gaussian measurement grid size");
  experiment_cmd->add_option("--player", experiment.player, "garbled player of the chain");
  experiment_cmd->add_flag("--classify", experiment.classify,
                           "certify the garbling order of consecutive members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*value_cmd) return RunValue(value);
    if (*distance_cmd) return RunDistance(distance);
    return RunExperiment(experiment);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegenerateConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace
}  // namespace infolab

int main(int argc, char** argv) { return infolab::Main(argc, argv); }
