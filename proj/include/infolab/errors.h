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

#ifndef INFOLAB_ERRORS_H_
#define INFOLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace infolab {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto exit codes (input 2, capacity 3, internal 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or spaces of two operands do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented precondition (bad index set, unnormalized
// masses, mismatched priors, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Conditioning on a zero-mass point without a default row.
class DegenerateConditioningError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed its configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// The simplex solver lost numerical control (distinct from an infeasible or
// unbounded program, which are ordinary statuses).
class SolverFailure : public Error {
 public:
  using Error::Error;
};

// A result failed an internal certificate (duality gap, residual, ...).
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed model or game file. `where` names the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace infolab

#endif  // INFOLAB_ERRORS_H_
