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

#include "infolab/model_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "infolab/errors.h"
#include "infolab/expression.h"

namespace infolab {
namespace {

using nlohmann::json;

// Walks a parsed document while tracking the JSON pointer of the current
// value, so that every error names its location.
class Cursor {
 public:
  Cursor(const json& value, std::string source, std::string pointer = "")
      : value_(value), source_(std::move(source)), pointer_(std::move(pointer)) {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(source_ + ":" + (pointer_.empty() ? "/" : pointer_), what);
  }

  const json& value() const { return value_; }
  bool Has(const std::string& key) const {
    return value_.is_object() && value_.contains(key);
  }

  Cursor operator[](const std::string& key) const {
    if (!value_.is_object()) Fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) Fail("missing key '" + key + "'");
    return Cursor(*it, source_, pointer_ + "/" + key);
  }
  Cursor operator[](size_t index) const {
    return Cursor(value_.at(index), source_, pointer_ + "/" + std::to_string(index));
  }

  size_t ArraySize() const {
    if (!value_.is_array()) Fail("expected an array");
    return value_.size();
  }

  std::string String() const {
    if (!value_.is_string()) Fail("expected a string");
    return value_.get<std::string>();
  }

  int Count(int minimum = 1) const {
    if (!value_.is_number_integer()) Fail("expected an integer");
    long long v = value_.get<long long>();
    if (v < minimum || v > 1'000'000) Fail("count out of range");
    return static_cast<int>(v);
  }

  // A JSON number, or a string holding a decimal or a fraction "p/q".
  double Number() const {
    if (value_.is_number()) return value_.get<double>();
    if (!value_.is_string()) Fail("expected a number");
    std::string text = value_.get<std::string>();
    size_t slash = text.find('/');
    if (slash == std::string::npos) return ParseDecimal(text);
    double den = ParseDecimal(text.substr(slash + 1));
    if (den == 0.0) Fail("zero denominator");
    return ParseDecimal(text.substr(0, slash)) / den;
  }

  std::vector<double> Numbers() const {
    std::vector<double> out(ArraySize());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i].Number();
    return out;
  }

  // Runs `fn`, relabelling library errors with this location.
  template <typename Fn>
  auto Guard(Fn&& fn) const {
    try {
      return fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      Fail(e.what());
    }
  }

 private:
  double ParseDecimal(const std::string& text) const {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && *begin == ' ') ++begin;
    while (end > begin && end[-1] == ' ') --end;
    if (begin < end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) Fail("malformed number '" + text + "'");
    return v;
  }

  const json& value_;
  std::string source_;
  std::string pointer_;
};

json ParseJson(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(source + ":byte " + std::to_string(e.byte), "malformed JSON");
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SpacePtr ParseSpace(const Cursor& c) {
  if (!c.value().is_object()) c.Fail("expected a space object");
  return c.Guard([&] {
    if (c.Has("size")) return MakeSpace(MetricFiniteSpace::Indexed(c["size"].Count()));
    if (c.Has("grid")) {
      Cursor g = c["grid"];
      return MakeSpace(MetricFiniteSpace::Grid(g["lo"].Number(), g["hi"].Number(),
                                               g["count"].Count()));
    }
    if (c.Has("points")) return MakeSpace(MetricFiniteSpace::FromPoints(c["points"].Numbers()));
    if (!c.Has("labels")) c.Fail("space needs one of size, grid, points or labels");
    Cursor labels = c["labels"];
    std::vector<std::string> names(labels.ArraySize());
    for (size_t i = 0; i < names.size(); ++i) names[i] = labels[i].String();
    std::vector<std::vector<double>> coords(names.size());
    if (c.Has("coords")) {
      Cursor cs = c["coords"];
      if (cs.ArraySize() != names.size()) cs.Fail("one coordinate per label expected");
      for (size_t i = 0; i < names.size(); ++i) {
        Cursor point = cs[i];
        coords[i] = point.value().is_array() ? point.Numbers()
                                             : std::vector<double>{point.Number()};
      }
    } else {
      for (size_t i = 0; i < names.size(); ++i) coords[i] = {static_cast<double>(i)};
    }
    return MakeSpace(MetricFiniteSpace(std::move(names), std::move(coords)));
  });
}

using SpaceTable = std::map<std::string, SpacePtr>;

SpacePtr LookupSpace(const SpaceTable& spaces, const Cursor& c) {
  auto it = spaces.find(c.String());
  if (it == spaces.end()) c.Fail("unknown space '" + c.String() + "'");
  return it->second;
}

Channel ParseChannel(const Cursor& c, const SpaceTable& spaces, const SpacePtr& state) {
  SpacePtr to = LookupSpace(spaces, c["to"]);
  return c.Guard([&] {
    if (c.Has("identity")) {
      if (!SameSpace(state, to)) c.Fail("identity channel needs the state space");
      return Channel::Identity(to);
    }
    if (c.Has("constant")) return Channel::Constant(state, to, c["constant"].Numbers());
    Cursor rows = c["rows"];
    if (rows.ArraySize() != static_cast<size_t>(state->size())) {
      rows.Fail("one row per state expected");
    }
    std::vector<std::vector<double>> w(state->size());
    for (int x = 0; x < state->size(); ++x) w[x] = rows[x].Numbers();
    return Channel(state, to, std::move(w));
  });
}

// Cost table for one player: an expression over x, u1..un or a flat table
// over (x, u1, ..., un).
std::vector<double> ParseCost(const Cursor& c, const SpacePtr& states,
                              const std::vector<SpacePtr>& actions) {
  if (c.value().is_array()) return c.Numbers();
  std::vector<std::string> names{"x"};
  for (size_t p = 1; p <= actions.size(); ++p) names.push_back("u" + std::to_string(p));
  std::string text = c.String();
  Expression expr = [&] {
    try {
      return Expression::Parse(text, names);
    } catch (const ParseError& e) {
      c.Fail(std::string("cost expression, ") + e.what());
    }
  }();
  std::vector<double> values(names.size());
  return Game::Tabulate(*states, actions, [&](int x, std::span<const int> u) {
    values[0] = states->scalar(x);
    for (size_t p = 0; p < u.size(); ++p) values[p + 1] = actions[p]->scalar(u[p]);
    double cost = expr.Evaluate(values);
    if (!std::isfinite(cost)) c.Fail("cost expression is not finite at x = " + states->label(x));
    return cost;
  });
}

}  // namespace

Model ParseModel(std::string_view text, const std::string& source) {
  json doc = ParseJson(text, source);
  Cursor root(doc, source);
  SpaceTable spaces;
  Cursor sc = root["spaces"];
  if (!sc.value().is_object() || sc.value().empty()) sc.Fail("expected named spaces");
  for (const auto& [name, value] : sc.value().items()) {
    spaces[name] = ParseSpace(sc[name]);
  }

  if (root.Has("joint")) {
    Cursor jc = root["joint"];
    Cursor fc = jc["factors"];
    std::vector<SpacePtr> factors;
    for (size_t i = 0; i < fc.ArraySize(); ++i) factors.push_back(LookupSpace(spaces, fc[i]));
    if (factors.size() < 2) fc.Fail("a state and at least one player are needed");
    std::vector<double> mass = jc["mass"].Numbers();
    JointMeasure joint = jc.Guard([&] { return JointMeasure(factors, std::move(mass)); });
    return Model{std::move(joint), std::nullopt, {}};
  }

  SpacePtr state = LookupSpace(spaces, root["state"]);
  Cursor pc = root["prior"];
  Measure prior = pc.Guard([&] { return Measure(state, pc.Numbers()); });
  Cursor cc = root["channels"];
  if (cc.ArraySize() == 0) cc.Fail("at least one channel is needed");
  std::vector<Channel> channels;
  for (size_t i = 0; i < cc.ArraySize(); ++i) {
    channels.push_back(ParseChannel(cc[i], spaces, state));
  }
  JointMeasure joint = root.Guard([&] { return Join(prior, channels); });
  return Model{std::move(joint), std::move(prior), std::move(channels)};
}

Model LoadModel(const std::string& path) { return ParseModel(ReadFile(path), path); }

Game ParseGame(std::string_view text, const SpacePtr& states, const std::string& source) {
  json doc = ParseJson(text, source);
  Cursor root(doc, source);
  std::string kind = root["kind"].String();
  Cursor ac = root["actions"];
  std::vector<SpacePtr> actions;
  for (size_t i = 0; i < ac.ArraySize(); ++i) {
    Cursor a = ac[i];
    if (a.value().is_string()) {
      if (a.String() != "state") a.Fail("the only named action space is 'state'");
      actions.push_back(states);
    } else {
      actions.push_back(ParseSpace(a));
    }
  }
  if (actions.empty()) ac.Fail("at least one player is needed");

  if (kind == "zero-sum" || kind == "team") {
    std::vector<double> cost = ParseCost(root["cost"], states, actions);
    return root.Guard([&] {
      if (kind == "team") return Game::Team(states, actions, std::move(cost));
      if (actions.size() != 2) root["actions"].Fail("zero-sum games have two players");
      return Game::ZeroSum(states, actions[0], actions[1], std::move(cost));
    });
  }
  if (kind != "general") root["kind"].Fail("kind must be zero-sum, team or general");
  Cursor cc = root["costs"];
  if (cc.ArraySize() != actions.size()) cc.Fail("one cost per player expected");
  std::vector<std::vector<double>> costs;
  for (size_t p = 0; p < actions.size(); ++p) costs.push_back(ParseCost(cc[p], states, actions));
  return root.Guard(
      [&] { return Game(states, actions, std::move(costs), GameKind::kGeneral); });
}

Game LoadGame(const std::string& path, const SpacePtr& states) {
  return ParseGame(ReadFile(path), states, path);
}

Channel PlayerChannel(const Model& model, int player) {
  if (player < 1 || player >= model.joint.num_factors()) {
    throw PreconditionError("player " + std::to_string(player) + " out of range");
  }
  if (!model.channels.empty()) return model.channels[player - 1];
  std::vector<double> first(model.joint.shape()[player], 0.0);
  first[0] = 1.0;
  return Disintegrate(model.joint, 0, player, first);
}

}  // namespace infolab
