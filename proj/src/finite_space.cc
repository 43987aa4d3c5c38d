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

#include "infolab/finite_space.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "infolab/errors.h"

namespace infolab {

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

MetricFiniteSpace::MetricFiniteSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> coords)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw PreconditionError("space must have a point");
  if (coords.size() != labels_.size()) {
    throw DimensionError("space has " + std::to_string(labels_.size()) +
                         " labels but " + std::to_string(coords.size()) +
                         " coordinate tuples");
  }
  dimension_ = static_cast<int>(coords.front().size());
  if (dimension_ < 1) throw DimensionError("coordinates need dimension >= 1");
  coords_.reserve(coords.size() * dimension_);
  for (const auto& c : coords) {
    if (static_cast<int>(c.size()) != dimension_) {
      throw DimensionError("coordinate tuples differ in dimension");
    }
    for (double v : c) {
      if (!std::isfinite(v)) throw PreconditionError("non-finite coordinate");
      coords_.push_back(v);
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw PreconditionError("duplicate label '" + l + "'");
    }
  }
  // Distinct coordinates keep the induced distance a metric.
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (Distance(i, j) == 0.0) {
        throw PreconditionError("points '" + labels_[i] + "' and '" +
                                labels_[j] + "' share coordinates");
      }
    }
  }
}

MetricFiniteSpace MetricFiniteSpace::Indexed(int count) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> coords;
  for (int i = 0; i < count; ++i) {
    labels.push_back(std::to_string(i));
    coords.push_back({static_cast<double>(i)});
  }
  return MetricFiniteSpace(std::move(labels), std::move(coords));
}

MetricFiniteSpace MetricFiniteSpace::Grid(double lo, double hi, int count) {
  if (count < 1) throw PreconditionError("grid needs at least one point");
  std::vector<double> points(count);
  for (int i = 0; i < count; ++i) {
    points[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return FromPoints(points);
}

MetricFiniteSpace MetricFiniteSpace::FromPoints(
    const std::vector<double>& points) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> coords;
  for (double p : points) {
    labels.push_back(FormatNumber(p));
    coords.push_back({p});
  }
  return MetricFiniteSpace(std::move(labels), std::move(coords));
}

double MetricFiniteSpace::Distance(int i, int j) const {
  double sum = 0.0;
  auto a = coord(i);
  auto b = coord(j);
  for (int k = 0; k < dimension_; ++k) {
    double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double MetricFiniteSpace::Diameter() const {
  double best = 0.0;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) best = std::max(best, Distance(i, j));
  }
  return best;
}

std::optional<int> MetricFiniteSpace::Find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

bool MetricFiniteSpace::operator==(const MetricFiniteSpace& other) const {
  return dimension_ == other.dimension_ && labels_ == other.labels_ &&
         coords_ == other.coords_;
}

}  // namespace infolab
