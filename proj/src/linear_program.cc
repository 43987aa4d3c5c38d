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

#include "infolab/linear_program.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>

#include "infolab/errors.h"

namespace infolab {

int LinearProgram::AddVariable(double cost, double lower, double upper) {
  objective_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return num_variables() - 1;
}

int LinearProgram::AddConstraint(std::vector<Term> terms, Relation relation,
                                 double rhs) {
  constraints_.push_back({std::move(terms), relation, rhs});
  return num_constraints() - 1;
}

void LinearProgram::Validate() const {
  for (int j = 0; j < num_variables(); ++j) {
    if (!std::isfinite(objective_[j])) {
      throw PreconditionError("objective coefficient is not finite");
    }
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) ||
        lower_[j] > upper_[j] || lower_[j] == kInfinity ||
        upper_[j] == -kInfinity) {
      throw PreconditionError("variable " + std::to_string(j) +
                              " has invalid bounds");
    }
  }
  for (const auto& c : constraints_) {
    if (!std::isfinite(c.rhs)) throw PreconditionError("rhs is not finite");
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw PreconditionError("constraint names an unknown variable");
      }
      if (!std::isfinite(t.coeff)) {
        throw PreconditionError("constraint coefficient is not finite");
      }
    }
  }
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

double LinearProgramSolution::duality_gap() const {
  return std::abs(objective - dual_objective);
}

namespace {

template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kOptimalityTolerance = 1e-9;
constexpr double kHarrisTolerance = 1e-11;
constexpr double kFeasibilityTolerance = 1e-9;
constexpr double kDropTolerance = 1e-13;
constexpr double kResidualTolerance = 1e-9;
constexpr int kDegenerateStreak = 50;

// How an original variable is expressed through internal nonnegative
// columns: x = offset + sign * x_col (- x_neg when split).
struct VarMap {
  int col = -1;
  double sign = 1.0;
  double offset = 0.0;
  int neg_col = -1;
};

// Equality form over structural, slack and artificial columns. Column
// `cols` of `a` holds the right-hand side, which is nonnegative.
template <typename Real>
struct StandardForm {
  int rows = 0;
  int cols = 0;
  int art_begin = 0;
  RealMatrix<Real> a;
  // Nonzeros of each column of `a` as (row, value).
  std::vector<std::vector<std::pair<int, Real>>> columns;
  std::vector<int> identity_col;  // initial basic column of each row
  std::vector<double> row_factor;  // sign flip times row scale
};

enum class PhaseResult { kOptimal, kUnbounded };

template <typename Real>
class Simplex {
 public:
  Simplex(const StandardForm<Real>& form, double pivot_tol)
      : form_(form),
        pivot_tol_(pivot_tol),
        t_(form.a),
        obj_(form.cols + 1, 0.0),
        basis_(form.identity_col),
        refactor_interval_(std::max(200, 2 * form.rows)) {}

  // Minimizes costs^T x from the current basis. Columns with
  // allowed[c] == 0 never enter.
  PhaseResult Run(const std::vector<Real>& costs, std::vector<char> allowed,
                  bool phase_one, int& pivots);

  // Pivots basic artificials out on their largest usable entry; rows where
  // none exists are redundant.
  void DriveOutArtificials();

  // Basic values refined against the original rows.
  std::vector<Real> BasicSolution() const;

  // Entry k of c_B^T B^{-1}, read from row i's initial identity column.
  Real Multiplier(const std::vector<Real>& costs, int i) const {
    Real y = 0.0;
    for (int k = 0; k < form_.rows; ++k) {
      y += costs[basis_[k]] * t_(k, form_.identity_col[i]);
    }
    return y;
  }

  const std::vector<int>& basis() const { return basis_; }
  Real rhs(int r) const { return t_(r, form_.cols); }
  void Dump(std::ostream& out) const;

 private:
  bool IsArtificial(int col) const { return col >= form_.art_begin; }
  // Rows holding a basic artificial in phase two block any nonzero entry,
  // keeping the artificial at zero.
  Real PivotEntry(int r, int c, bool phase_one) const {
    Real a = t_(r, c);
    return !phase_one && IsArtificial(basis_[r]) ? std::abs(a) : a;
  }
  int RatioTest(int enter, bool phase_one, bool bland) const;
  void Pivot(int r, int k);
  void Reinvert(const std::vector<Real>& costs);

  const StandardForm<Real>& form_;
  double pivot_tol_;
  RealMatrix<Real> t_;
  std::vector<Real> obj_;
  std::vector<int> basis_;
  std::vector<int> nonzero_;
  int refactor_interval_;
};

template <typename Real>
void Simplex<Real>::Pivot(int r, int k) {
  const int width = form_.cols + 1;
  Real* prow = &t_(r, 0);
  Real inv = Real(1) / prow[k];
  nonzero_.clear();
  for (int c = 0; c < width; ++c) {
    if (prow[c] != Real(0)) {
      prow[c] *= inv;
      nonzero_.push_back(c);
    }
  }
  prow[k] = Real(1);
  for (int i = 0; i < form_.rows; ++i) {
    if (i == r) continue;
    Real* row = &t_(i, 0);
    Real f = row[k];
    if (f == Real(0)) continue;
    for (int c : nonzero_) row[c] -= f * prow[c];
    row[k] = Real(0);
  }
  Real f = obj_[k];
  if (f != Real(0)) {
    for (int c : nonzero_) obj_[c] -= f * prow[c];
    obj_[k] = Real(0);
  }
  basis_[r] = k;
}

// Recomputes the tableau as B^{-1} [A | b] from the original rows for the
// current basis, discarding the drift of the pivots since the last call.
template <typename Real>
void Simplex<Real>::Reinvert(const std::vector<Real>& costs) {
  const int m = form_.rows;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> b(m, m);
  for (int k = 0; k < m; ++k) b.col(k) = form_.a.col(basis_[k]);
  Eigen::PartialPivLU<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> lu(b);
  Real rcond = lu.rcond();
  if (!(rcond > Real(1e-16))) throw SolverFailure("basis matrix is numerically singular");
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> inverse = lu.inverse();
  t_.setZero();
  for (int c = 0; c <= form_.cols; ++c) {
    for (auto [i, a] : form_.columns[c]) t_.col(c) += a * inverse.col(i);
  }
  for (int k = 0; k < m; ++k) {
    for (int r = 0; r < m; ++r) t_(r, basis_[k]) = r == k ? Real(1) : Real(0);
  }
  const int width = form_.cols + 1;
  for (int c = 0; c < form_.cols; ++c) obj_[c] = costs[c];
  obj_[form_.cols] = Real(0);
  for (int k = 0; k < m; ++k) {
    Real cb = costs[basis_[k]];
    if (cb == Real(0)) continue;
    for (int c = 0; c < width; ++c) obj_[c] -= cb * t_(k, c);
  }
  for (int k = 0; k < m; ++k) obj_[basis_[k]] = Real(0);
  for (int r = 0; r < m; ++r) {
    if (rhs(r) < -kFeasibilityTolerance && !IsArtificial(basis_[r])) {
      throw SolverFailure("basis lost primal feasibility");
    }
  }
}

// Harris two-pass ratio test: bound the step with rows relaxed by a small
// tolerance, then take the largest pivot within that step. Bland mode keeps
// the textbook rule so that the anti-cycling guarantee holds.
template <typename Real>
int Simplex<Real>::RatioTest(int enter, bool phase_one, bool bland) const {
  const int m = form_.rows;
  auto value = [&](int r) {
    return !phase_one && IsArtificial(basis_[r]) ? Real(0) : std::max(rhs(r), Real(0));
  };
  int leave = -1;
  if (bland) {
    Real best_ratio = Real(0);
    for (int r = 0; r < m; ++r) {
      Real a = PivotEntry(r, enter, phase_one);
      if (a <= pivot_tol_) continue;
      Real ratio = value(r) / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis_[r] < basis_[leave])) {
        best_ratio = ratio;
        leave = r;
      }
    }
    return leave;
  }
  Real bound = std::numeric_limits<Real>::infinity();
  for (int r = 0; r < m; ++r) {
    Real a = PivotEntry(r, enter, phase_one);
    if (a <= pivot_tol_) continue;
    Real v = !phase_one && IsArtificial(basis_[r]) ? Real(0) : rhs(r);
    bound = std::min(bound, std::max((v + kHarrisTolerance) / a, Real(0)));
  }
  Real best_pivot = Real(0);
  for (int r = 0; r < m; ++r) {
    Real a = PivotEntry(r, enter, phase_one);
    if (a <= pivot_tol_) continue;
    if (value(r) / a <= bound && a > best_pivot) {
      best_pivot = a;
      leave = r;
    }
  }
  return leave;
}

template <typename Real>
PhaseResult Simplex<Real>::Run(const std::vector<Real>& costs, std::vector<char> allowed,
                         bool phase_one, int& pivots) {
  const long max_iterations = 100000L + 50L * (form_.rows + form_.cols);
  Reinvert(costs);
  int degenerate_run = 0;
  int since_reinvert = 0;
  for (long iter = 0;; ++iter) {
    if (iter > max_iterations) {
      throw SolverFailure("simplex exceeded its iteration limit");
    }
    bool bland = degenerate_run >= kDegenerateStreak;
    int enter = -1;
    Real best = -kOptimalityTolerance;
    for (int c = 0; c < form_.cols; ++c) {
      if (!allowed[c] || obj_[c] >= best) continue;
      enter = c;
      if (bland) break;
      best = obj_[c];
    }
    if (enter < 0) {
      if (since_reinvert == 0) return PhaseResult::kOptimal;
      Reinvert(costs);
      since_reinvert = 0;
      continue;
    }
    int leave = RatioTest(enter, phase_one, bland);
    if (leave < 0) {
      if (since_reinvert > 0) {
        Reinvert(costs);
        since_reinvert = 0;
        continue;
      }
      if (!phase_one) return PhaseResult::kUnbounded;
      // The artificial objective is bounded below, so a column without a
      // usable pivot only carries rounding noise in its reduced cost.
      allowed[enter] = 0;
      continue;
    }
    Real step = std::max(rhs(leave), Real(0)) / t_(leave, enter);
    degenerate_run = step <= Real(1e-12) ? degenerate_run + 1 : 0;
    Pivot(leave, enter);
    ++pivots;
    if (++since_reinvert >= refactor_interval_) {
      Reinvert(costs);
      since_reinvert = 0;
    }
  }
}

template <typename Real>
void Simplex<Real>::DriveOutArtificials() {
  for (int r = 0; r < form_.rows; ++r) {
    if (!IsArtificial(basis_[r])) continue;
    int best = -1;
    for (int c = 0; c < form_.art_begin; ++c) {
      if (std::abs(t_(r, c)) > pivot_tol_ &&
          (best < 0 || std::abs(t_(r, c)) > std::abs(t_(r, best)))) {
        best = c;
      }
    }
    if (best >= 0) Pivot(r, best);
  }
}

template <typename Real>
std::vector<Real> Simplex<Real>::BasicSolution() const {
  const int m = form_.rows;
  std::vector<Real> x(m), residual(m);
  for (int k = 0; k < m; ++k) x[k] = rhs(k);
  for (int round = 0; round < 2; ++round) {
    for (int i = 0; i < m; ++i) {
      Real r = form_.a(i, form_.cols);
      for (int k = 0; k < m; ++k) r -= form_.a(i, basis_[k]) * x[k];
      residual[i] = r;
    }
    for (int k = 0; k < m; ++k) {
      Real dx = Real(0);
      for (int i = 0; i < m; ++i) dx += t_(k, form_.identity_col[i]) * residual[i];
      x[k] += dx;
    }
  }
  return x;
}

template <typename Real>
void Simplex<Real>::Dump(std::ostream& out) const {
  out << "tableau " << form_.rows << " x " << form_.cols << "\n";
  for (int r = 0; r < form_.rows; ++r) {
    out << "basis " << basis_[r] << " |";
    for (int c = 0; c <= form_.cols; ++c) out << ' ' << static_cast<double>(t_(r, c));
    out << "\n";
  }
  out << "obj |";
  for (Real v : obj_) out << ' ' << static_cast<double>(v);
  out << "\n";
}

// Thrown when a solve in working precision should be repeated in extended
// precision.
struct PrecisionFailure {
  std::string what;
};

template <typename Real>
LinearProgramSolution SolveWith(const LinearProgram& lp, const SolverOptions& options,
                                bool last_attempt) {
  const int n = lp.num_variables();
  const auto& lower = lp.lower();
  const auto& upper = lp.upper();
  const auto& cost = lp.objective();

  // Internal nonnegative structural columns.
  std::vector<VarMap> vars(n);
  int ns = 0;
  std::vector<std::pair<int, double>> bound_rows;  // (col, ub - lb)
  for (int j = 0; j < n; ++j) {
    VarMap& v = vars[j];
    if (std::isfinite(lower[j])) {
      v = {ns++, 1.0, lower[j], -1};
      if (std::isfinite(upper[j])) bound_rows.push_back({v.col, upper[j] - lower[j]});
    } else if (std::isfinite(upper[j])) {
      v = {ns++, -1.0, upper[j], -1};
    } else {
      v.col = ns++;
      v.neg_col = ns++;
    }
  }

  const int m_orig = lp.num_constraints();
  const int m = m_orig + static_cast<int>(bound_rows.size());
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // structural columns
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows(m);
  for (int i = 0; i < m_orig; ++i) {
    const auto& con = lp.constraints()[i];
    Row& row = rows[i];
    row.rel = con.relation;
    row.rhs = con.rhs;
    for (const auto& term : con.terms) {
      const VarMap& v = vars[term.var];
      row.rhs -= term.coeff * v.offset;
      row.coeffs.push_back({v.col, term.coeff * v.sign});
      if (v.neg_col >= 0) row.coeffs.push_back({v.neg_col, -term.coeff});
    }
  }
  for (size_t b = 0; b < bound_rows.size(); ++b) {
    rows[m_orig + b] = {{{bound_rows[b].first, 1.0}},
                        Relation::kLessEqual,
                        bound_rows[b].second};
  }

  // Each row is scaled by a power of two so that its largest coefficient
  // lies in [1, 2), negated if its right-hand side is negative, and purged
  // of coefficients below kDropTolerance relative to the largest.
  StandardForm<Real> form;
  form.rows = m;
  form.row_factor.assign(m, 1.0);
  int n_slack = 0, n_art = 0;
  for (int i = 0; i < m; ++i) {
    Row& row = rows[i];
    double a_max = 0.0;
    for (auto [col, a] : row.coeffs) a_max = std::max(a_max, std::abs(a));
    double factor = a_max > 0.0 ? std::exp2(-std::floor(std::log2(a_max))) : 1.0;
    if (row.rhs < 0) {
      factor = -factor;
      if (row.rel == Relation::kLessEqual) {
        row.rel = Relation::kGreaterEqual;
      } else if (row.rel == Relation::kGreaterEqual) {
        row.rel = Relation::kLessEqual;
      }
    }
    std::erase_if(row.coeffs, [&](const std::pair<int, double>& term) {
      return std::abs(term.second) < kDropTolerance * a_max;
    });
    for (auto& [col, a] : row.coeffs) a *= factor;
    row.rhs *= factor;
    form.row_factor[i] = factor;
    if (row.rel != Relation::kEqual) ++n_slack;
    if (row.rel != Relation::kLessEqual) ++n_art;
  }

  form.art_begin = ns + n_slack;
  form.cols = form.art_begin + n_art;
  form.a = RealMatrix<Real>::Zero(m, form.cols + 1);
  form.identity_col.assign(m, -1);
  {
    int slack = ns, art = form.art_begin;
    for (int i = 0; i < m; ++i) {
      const Row& row = rows[i];
      for (auto [col, a] : row.coeffs) form.a(i, col) += a;
      form.a(i, form.cols) = row.rhs;
      if (row.rel == Relation::kLessEqual) {
        form.a(i, slack) = Real(1);
        form.identity_col[i] = slack++;
      } else {
        if (row.rel == Relation::kGreaterEqual) form.a(i, slack++) = -Real(1);
        form.a(i, art) = Real(1);
        form.identity_col[i] = art++;
      }
    }
  }

  form.columns.resize(form.cols + 1);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c <= form.cols; ++c) {
      if (form.a(i, c) != Real(0)) form.columns[c].push_back({i, form.a(i, c)});
    }
  }

  LinearProgramSolution sol;
  Simplex<Real> simplex(form, options.pivot_tolerance);
  std::vector<char> allowed(form.cols, 1);

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    std::vector<Real> phase_one_costs(form.cols, Real(0));
    for (int c = form.art_begin; c < form.cols; ++c) phase_one_costs[c] = Real(1);
    if (simplex.Run(phase_one_costs, allowed, true, sol.pivots) ==
        PhaseResult::kUnbounded) {
      throw SolverFailure("phase one reported unbounded");
    }
    Real infeasibility = Real(0);
    double scale = 1.0;
    for (int r = 0; r < m; ++r) {
      if (simplex.basis()[r] >= form.art_begin) infeasibility += simplex.rhs(r);
      scale = std::max(scale, std::abs(rows[r].rhs));
    }
    if (infeasibility > Real(1e-9) * scale) {
      sol.status = LpStatus::kInfeasible;
      if (options.debug_out) simplex.Dump(*options.debug_out);
      return sol;
    }
    simplex.DriveOutArtificials();
    for (int c = form.art_begin; c < form.cols; ++c) allowed[c] = 0;
  }

  // Phase 2.
  std::vector<Real> c_int(form.cols, Real(0));
  for (int j = 0; j < n; ++j) {
    c_int[vars[j].col] += cost[j] * vars[j].sign;
    if (vars[j].neg_col >= 0) c_int[vars[j].neg_col] -= cost[j];
  }
  PhaseResult result = simplex.Run(c_int, allowed, false, sol.pivots);
  if (options.debug_out) simplex.Dump(*options.debug_out);
  if (result == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  std::vector<Real> x_basic = simplex.BasicSolution();
  std::vector<double> x_int(form.cols, 0.0);
  for (int i = 0; i < m; ++i) {
    x_int[simplex.basis()[i]] = static_cast<double>(std::max(x_basic[i], Real(0)));
  }
  sol.status = LpStatus::kOptimal;
  sol.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    const VarMap& v = vars[j];
    double x = v.offset + v.sign * x_int[v.col];
    if (v.neg_col >= 0) x -= x_int[v.neg_col];
    sol.primal[j] = x;
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += cost[j] * sol.primal[j];

  sol.dual.assign(m_orig, 0.0);
  for (int i = 0; i < m_orig; ++i) {
    sol.dual[i] =
        form.row_factor[i] * static_cast<double>(simplex.Multiplier(c_int, i));
  }

  std::vector<double> activity(m_orig, 0.0);
  sol.reduced_costs = cost;
  for (int i = 0; i < m_orig; ++i) {
    for (const auto& term : lp.constraints()[i].terms) {
      activity[i] += term.coeff * sol.primal[term.var];
      sol.reduced_costs[term.var] -= sol.dual[i] * term.coeff;
    }
  }
  sol.dual_objective = 0.0;
  double residual = 0.0, slackness = 0.0;
  for (int i = 0; i < m_orig; ++i) {
    const auto& con = lp.constraints()[i];
    sol.dual_objective += sol.dual[i] * con.rhs;
    double diff = activity[i] - con.rhs;
    switch (con.relation) {
      case Relation::kLessEqual:
        residual = std::max(residual, diff);
        break;
      case Relation::kGreaterEqual:
        residual = std::max(residual, -diff);
        break;
      case Relation::kEqual:
        residual = std::max(residual, std::abs(diff));
        break;
    }
    slackness = std::max(slackness, std::abs(sol.dual[i] * diff));
  }
  for (int j = 0; j < n; ++j) {
    double d = sol.reduced_costs[j];
    double x = sol.primal[j];
    if (std::isfinite(lower[j])) residual = std::max(residual, lower[j] - x);
    if (std::isfinite(upper[j])) residual = std::max(residual, x - upper[j]);
    double bound = d >= 0 ? lower[j] : upper[j];
    if (std::isfinite(bound)) {
      sol.dual_objective += d * bound;
      slackness = std::max(slackness, std::abs(d * (x - bound)));
    } else {
      slackness = std::max(slackness, std::abs(d));
    }
  }
  sol.primal_residual = residual;
  sol.complementary_slackness = slackness;
  if (residual > kResidualTolerance) {
    std::string message =
        "optimal basis violates constraints by " + std::to_string(residual);
    if (!last_attempt) throw PrecisionFailure{message};
    if (residual > 1e-6) throw SolverFailure(message);
  }
  return sol;
}

}  // namespace

LinearProgramSolution Solve(const LinearProgram& lp, const SolverOptions& options) {
  lp.Validate();
  try {
    return SolveWith<double>(lp, options, false);
  } catch (const SolverFailure&) {
  } catch (const PrecisionFailure&) {
  }
  return SolveWith<long double>(lp, options, true);
}

}  // namespace infolab
