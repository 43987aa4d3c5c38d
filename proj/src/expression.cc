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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "infolab/errors.h"

namespace infolab {
namespace {

struct Function {
  const char* name;
  int arity;
};

constexpr Function kFunctions[] = {
    {"abs", 1}, {"sqrt", 1}, {"exp", 1}, {"log", 1}, {"floor", 1}, {"ceil", 1},
    {"sign", 1}, {"min", 2}, {"max", 2}, {"pow", 2}, {"if", 3},
};

bool NearlyEqual(double a, double b) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-12 * scale;
}

}  // namespace

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& variables,
                   Expression& out)
      : text_(text), variables_(variables), out_(out) {}

  void Run() {
    out_.root_ = ParseOr();
    SkipSpace();
    if (pos_ < text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1), what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(std::string_view token) {
    SkipSpace();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void Expect(std::string_view token) {
    if (!Accept(token)) Fail("expected '" + std::string(token) + "'");
  }

  int Add(Expression::Node node) {
    out_.nodes_.push_back(std::move(node));
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int Binary(Op op, int lhs, int rhs) { return Add({op, 0.0, 0, {lhs, rhs}}); }

  int ParseOr() {
    int lhs = ParseAnd();
    while (Accept("||")) lhs = Binary(Op::kOr, lhs, ParseAnd());
    return lhs;
  }

  int ParseAnd() {
    int lhs = ParseCompare();
    while (Accept("&&")) lhs = Binary(Op::kAnd, lhs, ParseCompare());
    return lhs;
  }

  int ParseCompare() {
    int lhs = ParseSum();
    // Two-character operators first.
    if (Accept("==")) return Binary(Op::kEq, lhs, ParseSum());
    if (Accept("!=")) return Binary(Op::kNe, lhs, ParseSum());
    if (Accept("<=")) return Binary(Op::kLe, lhs, ParseSum());
    if (Accept(">=")) return Binary(Op::kGe, lhs, ParseSum());
    if (Accept("<")) return Binary(Op::kLt, lhs, ParseSum());
    if (Accept(">")) return Binary(Op::kGt, lhs, ParseSum());
    return lhs;
  }

  int ParseSum() {
    int lhs = ParseProduct();
    for (;;) {
      if (Accept("+")) {
        lhs = Binary(Op::kAdd, lhs, ParseProduct());
      } else if (Accept("-")) {
        lhs = Binary(Op::kSub, lhs, ParseProduct());
      } else {
        return lhs;
      }
    }
  }

  int ParseProduct() {
    int lhs = ParseUnary();
    for (;;) {
      if (Accept("*")) {
        lhs = Binary(Op::kMul, lhs, ParseUnary());
      } else if (Accept("/")) {
        lhs = Binary(Op::kDiv, lhs, ParseUnary());
      } else {
        return lhs;
      }
    }
  }

  int ParseUnary() {
    if (Accept("-")) return Add({Op::kNegate, 0.0, 0, {ParseUnary()}});
    if (Accept("+")) return ParseUnary();
    SkipSpace();
    if (text_.substr(pos_, 2) != "!=" && Accept("!")) {
      return Add({Op::kNot, 0.0, 0, {ParseUnary()}});
    }
    return ParsePower();
  }

  int ParsePower() {
    int base = ParsePrimary();
    if (Accept("^")) return Binary(Op::kPow, base, ParseUnary());
    return base;
  }

  int ParsePrimary() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of expression");
    char c = text_[pos_];
    if (Accept("(")) {
      int inner = ParseOr();
      Expect(")");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ParseNumber();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ParseName();
    Fail("unexpected '" + std::string(1, c) + "'");
  }

  int ParseNumber() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) Fail("malformed number");
    pos_ += static_cast<size_t>(ptr - begin);
    return Add({Op::kNumber, value, 0, {}});
  }

  int ParseName() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (Accept("(")) {
      auto fn = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                             [&](const Function& f) { return name == f.name; });
      if (fn == std::end(kFunctions)) {
        pos_ = start;
        Fail("unknown function '" + name + "'");
      }
      std::vector<int> args{ParseOr()};
      while (Accept(",")) args.push_back(ParseOr());
      Expect(")");
      if (static_cast<int>(args.size()) != fn->arity) {
        pos_ = start;
        Fail("'" + name + "' takes " + std::to_string(fn->arity) + " argument(s)");
      }
      return Add({Op::kCall, 0.0, static_cast<int>(fn - std::begin(kFunctions)),
                  std::move(args)});
    }
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) {
      pos_ = start;
      Fail("unknown variable '" + name + "'");
    }
    return Add({Op::kVariable, 0.0, static_cast<int>(it - variables_.begin()), {}});
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  Expression& out_;
  size_t pos_ = 0;
};

Expression Expression::Parse(std::string_view text,
                             const std::vector<std::string>& variables) {
  Expression expr;
  expr.text_ = std::string(text);
  ExpressionParser(expr.text_, variables, expr).Run();
  return expr;
}

double Expression::Evaluate(std::span<const double> values) const {
  return Eval(root_, values);
}

double Expression::Eval(int index, std::span<const double> values) const {
  const Node& n = nodes_[index];
  auto arg = [&](int k) { return Eval(n.args[k], values); };
  switch (n.op) {
    case Op::kNumber:
      return n.number;
    case Op::kVariable:
      return values[n.index];
    case Op::kNegate:
      return -arg(0);
    case Op::kNot:
      return arg(0) == 0.0 ? 1.0 : 0.0;
    case Op::kAdd:
      return arg(0) + arg(1);
    case Op::kSub:
      return arg(0) - arg(1);
    case Op::kMul:
      return arg(0) * arg(1);
    case Op::kDiv:
      return arg(0) / arg(1);
    case Op::kPow:
      return std::pow(arg(0), arg(1));
    case Op::kEq:
      return NearlyEqual(arg(0), arg(1)) ? 1.0 : 0.0;
    case Op::kNe:
      return NearlyEqual(arg(0), arg(1)) ? 0.0 : 1.0;
    case Op::kLt:
      return arg(0) < arg(1) ? 1.0 : 0.0;
    case Op::kLe:
      return arg(0) <= arg(1) ? 1.0 : 0.0;
    case Op::kGt:
      return arg(0) > arg(1) ? 1.0 : 0.0;
    case Op::kGe:
      return arg(0) >= arg(1) ? 1.0 : 0.0;
    case Op::kAnd:
      return arg(0) != 0.0 && arg(1) != 0.0 ? 1.0 : 0.0;
    case Op::kOr:
      return arg(0) != 0.0 || arg(1) != 0.0 ? 1.0 : 0.0;
    case Op::kCall:
      break;
  }
  switch (n.index) {
    case 0:
      return std::abs(arg(0));
    case 1:
      return std::sqrt(arg(0));
    case 2:
      return std::exp(arg(0));
    case 3:
      return std::log(arg(0));
    case 4:
      return std::floor(arg(0));
    case 5:
      return std::ceil(arg(0));
    case 6: {
      double v = arg(0);
      return v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0;
    }
    case 7:
      return std::min(arg(0), arg(1));
    case 8:
      return std::max(arg(0), arg(1));
    case 9:
      return std::pow(arg(0), arg(1));
    default:
      return arg(0) != 0.0 ? arg(1) : arg(2);
  }
}

}  // namespace infolab
