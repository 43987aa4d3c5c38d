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

#ifndef INFOLAB_EXPRESSION_H_
#define INFOLAB_EXPRESSION_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infolab {

// Arithmetic expression over named real variables, used for cost formulas
// in game files.
//
//   expr     := or
//   or       := and { "||" and }
//   and      := compare { "&&" compare }
//   compare  := sum [ ("==" | "!=" | "<" | "<=" | ">" | ">=") sum ]
//   sum      := product { ("+" | "-") product }
//   product  := unary { ("*" | "/") unary }
//   unary    := ("-" | "+" | "!") unary | power
//   power    := primary [ "^" unary ]
//   primary  := number | name | name "(" expr { "," expr } ")" | "(" expr ")"
//
// Comparisons and logic yield 1 or 0. Equality holds within 1e-12 relative
// to max(1, |a|, |b|), so grid coordinates compare equal to themselves after
// independent rounding. Functions: abs, sqrt, exp, log, floor, ceil, sign,
// min, max, pow, if(c, a, b).
class Expression {
 public:
  // `variables` names the slots of the argument vector passed to Evaluate.
  // Throws ParseError with where = "column N" (1-based).
  static Expression Parse(std::string_view text, const std::vector<std::string>& variables);

  double Evaluate(std::span<const double> values) const;

  const std::string& text() const { return text_; }

 private:
  enum class Op {
    kNumber, kVariable, kNegate, kNot, kAdd, kSub, kMul, kDiv, kPow,
    kEq, kNe, kLt, kLe, kGt, kGe, kAnd, kOr, kCall
  };
  struct Node {
    Op op;
    double number = 0.0;
    int index = 0;       // variable slot or function id
    std::vector<int> args;
  };
  friend class ExpressionParser;

  double Eval(int node, std::span<const double> values) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace infolab

#endif  // INFOLAB_EXPRESSION_H_
