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

#include "infolab/info_compare.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "infolab/errors.h"
#include "infolab/game.h"
#include "infolab/linear_program.h"
#include "infolab/parallel.h"

namespace infolab {
namespace {

using Terms = std::vector<LinearProgram::Term>;

// Row-stochastic kernel variables kappa[a][b] laid out row-major from
// `first`.
struct KernelBlock {
  int first = 0;
  int rows = 0;
  int cols = 0;
  int var(int a, int b) const { return first + a * cols + b; }
};

KernelBlock AddKernel(LinearProgram& lp, int rows, int cols) {
  KernelBlock block{lp.num_variables(), rows, cols};
  for (int k = 0; k < rows * cols; ++k) lp.AddVariable(0.0);
  for (int a = 0; a < rows; ++a) {
    Terms row;
    for (int b = 0; b < cols; ++b) row.push_back({block.var(a, b), 1.0});
    lp.AddConstraint(std::move(row), Relation::kEqual, 1.0);
  }
  return block;
}

// Clips solver noise and renormalizes each row.
Channel KernelFromSolution(const KernelBlock& block, const std::vector<double>& primal,
                           SpacePtr from, SpacePtr to) {
  std::vector<double> weights(static_cast<size_t>(block.rows) * block.cols);
  for (int a = 0; a < block.rows; ++a) {
    double sum = 0.0;
    for (int b = 0; b < block.cols; ++b) {
      double w = std::max(0.0, primal[block.var(a, b)]);
      weights[a * block.cols + b] = w;
      sum += w;
    }
    if (sum <= 0.0) {
      weights[a * block.cols] = 1.0;
      continue;
    }
    for (int b = 0; b < block.cols; ++b) weights[a * block.cols + b] /= sum;
  }
  return Channel(std::move(from), std::move(to), std::move(weights));
}

// Terms of sign * Garble(joint, player, kappa) at the cell `index`.
void AppendGarbleTerms(const JointMeasure& joint, int player, const KernelBlock& kernel,
                       std::vector<int> index, double sign, Terms& terms) {
  int b = index[player];
  for (int a = 0; a < kernel.rows; ++a) {
    index[player] = a;
    double m = joint.at(index);
    if (m != 0.0) terms.push_back({kernel.var(a, b), sign * m});
  }
}

// Adds one L1 row: sum(terms) - plus + minus = rhs, charging plus + minus
// to the objective.
void AddAbsoluteRow(LinearProgram& lp, Terms terms, double rhs, double weight = 1.0) {
  int plus = lp.AddVariable(weight);
  int minus = lp.AddVariable(weight);
  terms.push_back({plus, -1.0});
  terms.push_back({minus, 1.0});
  lp.AddConstraint(std::move(terms), Relation::kEqual, rhs);
}

LinearProgramSolution SolveOrThrow(const LinearProgram& lp, const char* what) {
  LinearProgramSolution sol = Solve(lp);
  if (!sol.optimal()) {
    throw SolverFailure(std::string(what) + " program ended " + ToString(sol.status));
  }
  return sol;
}

void CheckCertificate(GarblingCertificate& cert, double objective) {
  cert.deficiency = std::max(0.0, objective);
  if (std::abs(cert.achieved - cert.deficiency) > kLpCertificateTolerance) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.3g", cert.achieved - cert.deficiency);
    throw InternalConsistencyError(std::string("kernel certificate off by ") + buffer);
  }
}

void CheckTwoPlayer(const JointMeasure& a, const JointMeasure& b) {
  if (a.num_factors() != 3 || !a.SameFactors(b)) {
    throw DimensionError("comparison needs two-player joints on common spaces");
  }
}

double MaxOf(const std::vector<double>& values) {
  double best = 0.0;
  for (double v : values) best = std::max(best, v);
  return best;
}

}  // namespace

GarblingCertificate GarblingDeficiency(const JointMeasure& source,
                                       const JointMeasure& target, int player) {
  if (!source.SameFactors(target)) {
    throw DimensionError("deficiency needs joints on common spaces");
  }
  if (player < 1 || player >= source.num_factors()) {
    throw PreconditionError("garbled factor must be a measurement factor");
  }
  int n = source.shape()[player];
  LinearProgram lp;
  KernelBlock kernel = AddKernel(lp, n, n);
  std::vector<int> index(source.num_factors());
  for (size_t c = 0; c < target.size(); ++c) {
    target.Unflatten(c, index);
    Terms terms;
    AppendGarbleTerms(source, player, kernel, index, 1.0, terms);
    AddAbsoluteRow(lp, std::move(terms), target[c]);
  }
  LinearProgramSolution sol = SolveOrThrow(lp, "garbling deficiency");
  GarblingCertificate cert;
  const SpacePtr& y = source.factor_ptr(player);
  cert.kernels.push_back(KernelFromSolution(kernel, sol.primal, y, y));
  cert.players = {player};
  cert.achieved = TvDistance(Garble(source, player, cert.kernels[0]), target);
  CheckCertificate(cert, sol.objective);
  return cert;
}

GarblingCertificate CrossGarblingGap(const JointMeasure& a, const JointMeasure& b) {
  CheckTwoPlayer(a, b);
  int n1 = a.shape()[1], n2 = a.shape()[2];
  LinearProgram lp;
  KernelBlock k1 = AddKernel(lp, n1, n1);
  KernelBlock k2 = AddKernel(lp, n2, n2);
  std::vector<int> index(3);
  for (size_t c = 0; c < a.size(); ++c) {
    a.Unflatten(c, index);
    Terms terms;
    AppendGarbleTerms(a, 1, k1, index, 1.0, terms);
    AppendGarbleTerms(b, 2, k2, index, -1.0, terms);
    if (terms.empty()) continue;
    AddAbsoluteRow(lp, std::move(terms), 0.0);
  }
  LinearProgramSolution sol = SolveOrThrow(lp, "cross garbling");
  GarblingCertificate cert;
  cert.kernels.push_back(
      KernelFromSolution(k1, sol.primal, a.factor_ptr(1), a.factor_ptr(1)));
  cert.kernels.push_back(
      KernelFromSolution(k2, sol.primal, a.factor_ptr(2), a.factor_ptr(2)));
  cert.players = {1, 2};
  cert.achieved =
      TvDistance(Garble(a, 1, cert.kernels[0]), Garble(b, 2, cert.kernels[1]));
  CheckCertificate(cert, sol.objective);
  return cert;
}

double PeskiD2(const JointMeasure& mu, const JointMeasure& nu) {
  return std::max(CrossGarblingGap(mu, nu).deficiency,
                  CrossGarblingGap(nu, mu).deficiency);
}

double D2LowerBoundSampler(const JointMeasure& mu, const JointMeasure& nu,
                           const SamplerOptions& options) {
  CheckTwoPlayer(mu, nu);
  int nu1 = options.actions > 0 ? options.actions : std::max(2, mu.shape()[1]);
  int nu2 = options.actions > 0 ? options.actions : std::max(2, mu.shape()[2]);
  SpacePtr u1 = MakeSpace(MetricFiniteSpace::Indexed(nu1));
  SpacePtr u2 = MakeSpace(MetricFiniteSpace::Indexed(nu2));
  size_t cells = static_cast<size_t>(mu.shape()[0]) * nu1 * nu2;
  // Draw every game up front so the result does not depend on scheduling.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  std::vector<std::vector<double>> costs(options.trials, std::vector<double>(cells));
  for (auto& table : costs) {
    for (auto& c : table) c = draw(rng);
  }
  std::vector<double> gaps(options.trials, 0.0);
  ParallelFor(costs.size(), [&](size_t t) {
    Game game = Game::ZeroSum(mu.factor_ptr(0), u1, u2, costs[t]);
    gaps[t] = std::abs(ZeroSumValue(game, mu).value - ZeroSumValue(game, nu).value);
  });
  return MaxOf(gaps);
}

GarblingCertificate LeCamDeficiency(const MetricFiniteSpace& prior_space,
                                    const Channel& q_mu, const Channel& q_nu) {
  if (!(q_mu.from() == prior_space) || !(q_nu.from() == prior_space)) {
    throw DimensionError("channels must share the prior space as their source");
  }
  int nx = prior_space.size(), na = q_mu.cols(), nb = q_nu.cols();
  LinearProgram lp;
  KernelBlock kernel = AddKernel(lp, na, nb);
  int t = lp.AddVariable(1.0);
  for (int x = 0; x < nx; ++x) {
    Terms budget{{t, -1.0}};
    for (int b = 0; b < nb; ++b) {
      Terms terms;
      for (int a = 0; a < na; ++a) {
        if (q_mu(x, a) != 0.0) terms.push_back({kernel.var(a, b), q_mu(x, a)});
      }
      int plus = lp.AddVariable(0.0);
      int minus = lp.AddVariable(0.0);
      terms.push_back({plus, -1.0});
      terms.push_back({minus, 1.0});
      lp.AddConstraint(std::move(terms), Relation::kEqual, q_nu(x, b));
      budget.push_back({plus, 1.0});
      budget.push_back({minus, 1.0});
    }
    lp.AddConstraint(std::move(budget), Relation::kLessEqual, 0.0);
  }
  LinearProgramSolution sol = SolveOrThrow(lp, "Le Cam deficiency");
  GarblingCertificate cert;
  cert.kernels.push_back(
      KernelFromSolution(kernel, sol.primal, q_mu.to_ptr(), q_nu.to_ptr()));
  cert.players = {1};
  Channel composed = q_mu.Then(cert.kernels[0]);
  for (int x = 0; x < nx; ++x) {
    cert.achieved = std::max(cert.achieved, TvDistance(composed.row(x), q_nu.row(x)));
  }
  CheckCertificate(cert, sol.objective);
  return cert;
}

double LeCamDistance(const MetricFiniteSpace& prior_space, const Channel& q_mu,
                     const Channel& q_nu) {
  return std::max(LeCamDeficiency(prior_space, q_mu, q_nu).deficiency,
                  LeCamDeficiency(prior_space, q_nu, q_mu).deficiency);
}

double SinglePlayerValue(const Measure& prior, const Channel& channel,
                         const std::vector<double>& cost, int num_actions) {
  if (!SameSpace(prior.space_ptr(), channel.from_ptr())) {
    throw DimensionError("channel source differs from the prior space");
  }
  if (cost.size() != static_cast<size_t>(prior.size()) * num_actions) {
    throw DimensionError("cost table must have |X| * |U| entries");
  }
  double total = 0.0;
  for (int y = 0; y < channel.cols(); ++y) {
    double best = kInfinity;
    for (int u = 0; u < num_actions; ++u) {
      double v = 0.0;
      for (int x = 0; x < prior.size(); ++x) {
        v += prior[x] * channel(x, y) * cost[x * num_actions + u];
      }
      best = std::min(best, v);
    }
    total += best;
  }
  return total;
}

double D1Sampler(const Measure& prior, const Channel& q_mu, const Channel& q_nu,
                 const SamplerOptions& options) {
  int actions = options.actions > 0
                    ? options.actions
                    : std::max({2, q_mu.cols(), q_nu.cols()});
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  std::vector<std::vector<double>> costs(
      options.trials, std::vector<double>(static_cast<size_t>(prior.size()) * actions));
  for (auto& table : costs) {
    for (auto& c : table) c = draw(rng);
  }
  std::vector<double> gaps(options.trials, 0.0);
  ParallelFor(costs.size(), [&](size_t t) {
    gaps[t] = std::abs(SinglePlayerValue(prior, q_mu, costs[t], actions) -
                       SinglePlayerValue(prior, q_nu, costs[t], actions));
  });
  return MaxOf(gaps);
}

std::string ToString(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kMaximizerGarbling: return "maximizer-garbling";
    case SequenceKind::kMinimizerGarbling: return "minimizer-garbling";
    case SequenceKind::kNone: return "none";
  }
  return "unknown";
}

SequenceClassification ClassifySequence(const std::vector<JointMeasure>& sequence,
                                        double tolerance) {
  if (sequence.size() < 2) {
    throw PreconditionError("classification needs at least two structures");
  }
  Measure prior = FactorMarginal(sequence[0], 0);
  for (const auto& mu : sequence) {
    CheckTwoPlayer(sequence[0], mu);
    if (TvDistance(FactorMarginal(mu, 0), prior) > 1e-9) {
      throw PreconditionError("sequence members must share one prior");
    }
  }
  size_t steps = sequence.size() - 1;
  SequenceClassification out;
  out.maximizer_gaps.assign(steps, 0.0);
  out.minimizer_gaps.assign(steps, 0.0);
  ParallelFor(steps, [&](size_t j) {
    out.maximizer_gaps[j] = CrossGarblingGap(sequence[j + 1], sequence[j]).deficiency;
    out.minimizer_gaps[j] = CrossGarblingGap(sequence[j], sequence[j + 1]).deficiency;
  });
  auto within = [&](const std::vector<double>& gaps) {
    return std::all_of(gaps.begin(), gaps.end(),
                       [&](double g) { return g <= tolerance; });
  };
  if (within(out.maximizer_gaps)) {
    out.kind = SequenceKind::kMaximizerGarbling;
  } else if (within(out.minimizer_gaps)) {
    out.kind = SequenceKind::kMinimizerGarbling;
  }
  return out;
}

}  // namespace infolab
