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

#ifndef INFOLAB_LINEAR_PROGRAM_H_
#define INFOLAB_LINEAR_PROGRAM_H_

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace infolab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

// Minimization problem
//   min c^T x  s.t.  a_i^T x (<=, =, >=) b_i,  lower <= x <= upper.
// Lower bounds default to 0; either bound may be infinite.
class LinearProgram {
 public:
  struct Term {
    int var;
    double coeff;
  };
  struct Constraint {
    std::vector<Term> terms;
    Relation relation;
    double rhs;
  };

  // Returns the new variable's index.
  int AddVariable(double cost, double lower = 0.0, double upper = kInfinity);
  // Returns the new constraint's index. Terms naming the same variable twice
  // are summed.
  int AddConstraint(std::vector<Term> terms, Relation relation, double rhs);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // Throws PreconditionError on out-of-range indices, non-finite
  // coefficients, or crossed bounds.
  void Validate() const;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LpStatus status);

struct LinearProgramSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // One multiplier per constraint with c - A^T y = reduced_costs; >= rows
  // carry y >= 0 and <= rows y <= 0.
  std::vector<double> dual;
  std::vector<double> reduced_costs;
  // b^T y plus the bound contributions of the reduced costs.
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double complementary_slackness = 0.0;
  int pivots = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
  double duality_gap() const;
};

struct SolverOptions {
  double pivot_tolerance = 1e-9;
  // Receives the final tableau as text when non-null.
  std::ostream* debug_out = nullptr;
};

// Dense two-phase primal simplex on power-of-two scaled rows. Dantzig
// pricing with a Harris ratio test, falling back to Bland's rule during
// runs of degenerate pivots, so the method cannot cycle and is
// deterministic. The tableau is periodically recomputed from the original
// rows. A solve that loses feasibility or misses the residual tolerance in
// double precision is repeated with a long double tableau. Throws
// SolverFailure when the basis becomes numerically unusable.
LinearProgramSolution Solve(const LinearProgram& lp,
                            const SolverOptions& options = {});

}  // namespace infolab

#endif  // INFOLAB_LINEAR_PROGRAM_H_
