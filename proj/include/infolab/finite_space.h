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

#ifndef INFOLAB_FINITE_SPACE_H_
#define INFOLAB_FINITE_SPACE_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace infolab {

// A finite point set with labels and an embedding into R^d. The embedding
// gives every space a Euclidean metric, which is what Wasserstein-1 uses as
// ground cost. Immutable after construction.
class MetricFiniteSpace {
 public:
  // `coords` holds one tuple per label, all of the same dimension d >= 1.
  // Labels must be distinct and coordinate tuples pairwise distinct.
  MetricFiniteSpace(std::vector<std::string> labels,
                    std::vector<std::vector<double>> coords);

  // Points 0..count-1 on the real line, labelled by their index.
  static MetricFiniteSpace Indexed(int count);
  // `count` equally spaced points from `lo` to `hi` inclusive (count >= 2),
  // or the single point `lo` when count == 1.
  static MetricFiniteSpace Grid(double lo, double hi, int count);
  // One-dimensional space with the given coordinates; labels are the
  // coordinates printed with 12 significant digits.
  static MetricFiniteSpace FromPoints(const std::vector<double>& points);

  int size() const { return static_cast<int>(labels_.size()); }
  int dimension() const { return dimension_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const double> coord(int i) const {
    return {coords_.data() + static_cast<size_t>(i) * dimension_,
            static_cast<size_t>(dimension_)};
  }
  // First coordinate; the natural scalar for one-dimensional grids.
  double scalar(int i) const { return coords_[static_cast<size_t>(i) * dimension_]; }

  double Distance(int i, int j) const;
  // Largest pairwise distance (0 for a singleton).
  double Diameter() const;
  std::optional<int> Find(const std::string& label) const;

  bool operator==(const MetricFiniteSpace& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> coords_;
  int dimension_ = 1;
};

using SpacePtr = std::shared_ptr<const MetricFiniteSpace>;

inline SpacePtr MakeSpace(MetricFiniteSpace space) {
  return std::make_shared<const MetricFiniteSpace>(std::move(space));
}

// Pointer identity or structural equality.
inline bool SameSpace(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

std::string FormatNumber(double value);

}  // namespace infolab

#endif  // INFOLAB_FINITE_SPACE_H_
