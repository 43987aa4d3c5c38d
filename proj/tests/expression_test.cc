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

#include "infolab/expression.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "infolab/errors.h"

namespace infolab {
namespace {

double Eval(const std::string& text, std::vector<double> values = {},
            std::vector<std::string> names = {}) {
  return Expression::Parse(text, names).Evaluate(values);
}

std::string ParseFailure(const std::string& text, std::vector<std::string> names = {}) {
  try {
    Expression::Parse(text, names);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "no error";
}

TEST(ExpressionTest, ArithmeticPrecedence) {
  EXPECT_DOUBLE_EQ(Eval("1 + 2 * 3"), 7.0);
  EXPECT_DOUBLE_EQ(Eval("(1 + 2) * 3"), 9.0);
  EXPECT_DOUBLE_EQ(Eval("8 / 4 / 2"), 1.0);
  EXPECT_DOUBLE_EQ(Eval("10 - 4 - 3"), 3.0);
  EXPECT_DOUBLE_EQ(Eval("2 ^ 3 ^ 2"), 512.0);
  EXPECT_DOUBLE_EQ(Eval("-2 ^ 2"), -4.0);
  EXPECT_DOUBLE_EQ(Eval("2 ^ -1"), 0.5);
  EXPECT_DOUBLE_EQ(Eval("1.5e2 + .5"), 150.5);
}

TEST(ExpressionTest, ComparisonsAndLogic) {
  EXPECT_EQ(Eval("1 < 2"), 1.0);
  EXPECT_EQ(Eval("2 <= 1"), 0.0);
  EXPECT_EQ(Eval("3 >= 3"), 1.0);
  EXPECT_EQ(Eval("3 > 3"), 0.0);
  EXPECT_EQ(Eval("1 != 2 && 2 == 2"), 1.0);
  EXPECT_EQ(Eval("0 || 0"), 0.0);
  EXPECT_EQ(Eval("!0"), 1.0);
  EXPECT_EQ(Eval("!(1 == 1)"), 0.0);
  EXPECT_EQ(Eval("1 + (2 > 1)"), 2.0);
}

TEST(ExpressionTest, EqualityToleratesRounding) {
  EXPECT_EQ(Eval("0.1 + 0.2 == 0.3"), 1.0);
  EXPECT_EQ(Eval("0.1 + 0.2 != 0.3"), 0.0);
  EXPECT_EQ(Eval("1 == 1 + 1e-9"), 0.0);
}

TEST(ExpressionTest, Functions) {
  EXPECT_DOUBLE_EQ(Eval("abs(-3)"), 3.0);
  EXPECT_DOUBLE_EQ(Eval("sqrt(16)"), 4.0);
  EXPECT_DOUBLE_EQ(Eval("exp(0)"), 1.0);
  EXPECT_DOUBLE_EQ(Eval("log(exp(2))"), 2.0);
  EXPECT_DOUBLE_EQ(Eval("floor(-1.5)"), -2.0);
  EXPECT_DOUBLE_EQ(Eval("ceil(-1.5)"), -1.0);
  EXPECT_DOUBLE_EQ(Eval("sign(-7) + sign(0) + sign(3)"), 0.0);
  EXPECT_DOUBLE_EQ(Eval("min(2, 5) + max(2, 5)"), 7.0);
  EXPECT_DOUBLE_EQ(Eval("pow(2, 10)"), 1024.0);
  EXPECT_DOUBLE_EQ(Eval("if(1 < 2, 10, 20)"), 10.0);
  EXPECT_DOUBLE_EQ(Eval("if(0, 10, 20)"), 20.0);
}

TEST(ExpressionTest, VariablesBindBySlot) {
  std::vector<std::string> names{"x", "u1", "u2"};
  Expression e = Expression::Parse("(x - u1)^2 - (x - u2)^2", names);
  EXPECT_DOUBLE_EQ(e.Evaluate(std::vector<double>{1.0, 0.0, 0.5}), 0.75);
  EXPECT_DOUBLE_EQ(e.Evaluate(std::vector<double>{0.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(e.text(), "(x - u1)^2 - (x - u2)^2");
}

TEST(ExpressionTest, ErrorsNameTheColumn) {
  EXPECT_NE(ParseFailure("1 +").find("column 4"), std::string::npos);
  EXPECT_NE(ParseFailure("1 + y", {"x"}).find("column 5"), std::string::npos);
  EXPECT_NE(ParseFailure("1 + y", {"x"}).find("unknown variable 'y'"), std::string::npos);
  EXPECT_NE(ParseFailure("foo(1)").find("unknown function 'foo'"), std::string::npos);
  EXPECT_NE(ParseFailure("min(1)").find("takes 2 argument(s)"), std::string::npos);
  EXPECT_NE(ParseFailure("(1 + 2").find("expected ')'"), std::string::npos);
  EXPECT_NE(ParseFailure("1 2").find("column 3"), std::string::npos);
  EXPECT_NE(ParseFailure("").find("unexpected end"), std::string::npos);
  EXPECT_NE(ParseFailure("1 # 2").find("unexpected '#'"), std::string::npos);
}

}  // namespace
}  // namespace infolab
