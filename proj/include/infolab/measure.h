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

#ifndef INFOLAB_MEASURE_H_
#define INFOLAB_MEASURE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "infolab/finite_space.h"

namespace infolab {

// Tolerance for "sums to one" checks on measures and channel rows.
inline constexpr double kNormalizationTolerance = 1e-12;

// Probability measure on a MetricFiniteSpace.
class Measure {
 public:
  Measure(SpacePtr space, std::vector<double> mass);

  static Measure PointMass(SpacePtr space, int point);
  static Measure Uniform(SpacePtr space);

  const MetricFiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int size() const { return static_cast<int>(mass_.size()); }
  std::span<const double> mass() const { return mass_; }
  double operator[](int i) const { return mass_[i]; }

 private:
  SpacePtr space_;
  std::vector<double> mass_;
};

// Row-stochastic kernel from one space to another.
class Channel {
 public:
  // `rows` has one entry per point of `from`, each of length to->size().
  Channel(SpacePtr from, SpacePtr to, std::vector<std::vector<double>> rows);
  // Flat row-major weights.
  Channel(SpacePtr from, SpacePtr to, std::vector<double> weights);

  static Channel Identity(SpacePtr space);
  // Every source point maps to the same output distribution `row`.
  static Channel Constant(SpacePtr from, SpacePtr to, std::vector<double> row);

  const MetricFiniteSpace& from() const { return *from_; }
  const MetricFiniteSpace& to() const { return *to_; }
  const SpacePtr& from_ptr() const { return from_; }
  const SpacePtr& to_ptr() const { return to_; }
  int rows() const { return from_->size(); }
  int cols() const { return to_->size(); }

  double operator()(int source, int target) const {
    return weights_[static_cast<size_t>(source) * cols() + target];
  }
  std::span<const double> row(int source) const {
    return {weights_.data() + static_cast<size_t>(source) * cols(),
            static_cast<size_t>(cols())};
  }
  std::span<const double> weights() const { return weights_; }

  // Kernel composition: apply this channel, then `next`.
  Channel Then(const Channel& next) const;

 private:
  SpacePtr from_;
  SpacePtr to_;
  std::vector<double> weights_;
};

// Probability tensor over a product of spaces. Factor 0 is the state space
// and factor i >= 1 is player i's measurement space. Storage is row-major
// with factor 0 varying slowest.
class JointMeasure {
 public:
  JointMeasure(std::vector<SpacePtr> factors, std::vector<double> mass);
  explicit JointMeasure(const Measure& measure);

  int num_factors() const { return static_cast<int>(factors_.size()); }
  const MetricFiniteSpace& factor(int f) const { return *factors_[f]; }
  const SpacePtr& factor_ptr(int f) const { return factors_[f]; }
  const std::vector<SpacePtr>& factors() const { return factors_; }
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<size_t>& strides() const { return strides_; }
  size_t size() const { return mass_.size(); }

  std::span<const double> mass() const { return mass_; }
  double operator[](size_t flat) const { return mass_[flat]; }
  double at(std::span<const int> index) const;

  size_t Flatten(std::span<const int> index) const;
  void Unflatten(size_t flat, std::span<int> index) const;

  bool SameFactors(const JointMeasure& other) const;

 private:
  std::vector<SpacePtr> factors_;
  std::vector<int> shape_;
  std::vector<size_t> strides_;
  std::vector<double> mass_;
};

// mass(x, y1..yn) = prior(x) * prod_i channels[i](y_i | x). The measurements
// are conditionally independent given the state.
JointMeasure Join(const Measure& prior, std::span<const Channel> channels);

// Sums out every factor not in `keep`. The result lists the kept factors in
// ascending index order.
JointMeasure Marginal(const JointMeasure& joint, std::vector<int> keep);

// Marginal of a single factor as a Measure.
Measure FactorMarginal(const JointMeasure& joint, int factor);

// Conditional of `target` given `given`. Points of `given` with zero mass
// take `default_row` when supplied and otherwise raise
// DegenerateConditioningError.
Channel Disintegrate(const JointMeasure& joint, int given, int target,
                     const std::optional<std::vector<double>>& default_row =
                         std::nullopt);

// Replaces factor `player` (>= 1) by its image under `kernel`:
// (kappa mu)(.., b, ..) = sum_a kappa(b | a) mu(.., a, ..).
JointMeasure Garble(const JointMeasure& joint, int player,
                    const Channel& kernel);

// Total variation with the sup over |f| <= 1 convention, i.e. the L1
// distance of the mass vectors. Range [0, 2].
double TvDistance(const JointMeasure& p, const JointMeasure& q);
double TvDistance(const Measure& p, const Measure& q);
double TvDistance(std::span<const double> p, std::span<const double> q);

// Optimal-transport cost with Euclidean ground distance between coordinates.
double Wasserstein1(const Measure& p, const Measure& q);

// Wasserstein-1 over the product space; the ground distance between two
// cells is the sum over factors of the per-factor Euclidean distance.
double JointWasserstein1(const JointMeasure& p, const JointMeasure& q);

}  // namespace infolab

#endif  // INFOLAB_MEASURE_H_
