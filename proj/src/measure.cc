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

#include "infolab/measure.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "infolab/errors.h"
#include "infolab/transport.h"

namespace infolab {
namespace {

void CheckProbabilityVector(std::span<const double> mass, const char* what) {
  double total = 0.0;
  for (double m : mass) {
    if (!std::isfinite(m) || m < 0.0) {
      throw PreconditionError(std::string(what) +
                              " has a negative or non-finite entry");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw PreconditionError(std::string(what) + " sums to " +
                            FormatNumber(total) + ", not 1");
  }
}

std::vector<double> FlattenRows(const std::vector<std::vector<double>>& rows,
                                size_t cols) {
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("channel row has wrong length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

}  // namespace

// ---------------------------------------------------------------- Measure

Measure::Measure(SpacePtr space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw PreconditionError("measure needs a space");
  if (static_cast<int>(mass_.size()) != space_->size()) {
    throw DimensionError("measure has " + std::to_string(mass_.size()) +
                         " masses for a space of " +
                         std::to_string(space_->size()) + " points");
  }
  CheckProbabilityVector(mass_, "measure");
}

Measure Measure::PointMass(SpacePtr space, int point) {
  std::vector<double> mass(space->size(), 0.0);
  mass.at(point) = 1.0;
  return Measure(std::move(space), std::move(mass));
}

Measure Measure::Uniform(SpacePtr space) {
  int n = space->size();
  return Measure(std::move(space), std::vector<double>(n, 1.0 / n));
}

// ---------------------------------------------------------------- Channel

Channel::Channel(SpacePtr from, SpacePtr to,
                 std::vector<std::vector<double>> rows)
    : Channel(from, to, FlattenRows(rows, to ? to->size() : 0)) {
  if (static_cast<int>(rows.size()) != from_->size()) {
    throw DimensionError("channel has " + std::to_string(rows.size()) +
                         " rows for a source space of " +
                         std::to_string(from_->size()) + " points");
  }
}

Channel::Channel(SpacePtr from, SpacePtr to, std::vector<double> weights)
    : from_(std::move(from)), to_(std::move(to)), weights_(std::move(weights)) {
  if (!from_ || !to_) throw PreconditionError("channel needs two spaces");
  if (weights_.size() != static_cast<size_t>(from_->size()) * to_->size()) {
    throw DimensionError("channel weight count does not match its spaces");
  }
  for (int i = 0; i < rows(); ++i) CheckProbabilityVector(row(i), "channel row");
}

Channel Channel::Identity(SpacePtr space) {
  int n = space->size();
  std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i) * n + i] = 1.0;
  return Channel(space, space, std::move(w));
}

Channel Channel::Constant(SpacePtr from, SpacePtr to, std::vector<double> row) {
  std::vector<double> w;
  w.reserve(static_cast<size_t>(from->size()) * row.size());
  for (int i = 0; i < from->size(); ++i) w.insert(w.end(), row.begin(), row.end());
  return Channel(std::move(from), std::move(to), std::move(w));
}

Channel Channel::Then(const Channel& next) const {
  if (!SameSpace(to_, next.from_ptr())) {
    throw DimensionError("composed channels do not share the middle space");
  }
  std::vector<double> w(static_cast<size_t>(rows()) * next.cols(), 0.0);
  for (int i = 0; i < rows(); ++i) {
    for (int k = 0; k < cols(); ++k) {
      double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < next.cols(); ++j) {
        w[static_cast<size_t>(i) * next.cols() + j] += a * next(k, j);
      }
    }
  }
  return Channel(from_, next.to_ptr(), std::move(w));
}

// ----------------------------------------------------------- JointMeasure

JointMeasure::JointMeasure(std::vector<SpacePtr> factors,
                           std::vector<double> mass)
    : factors_(std::move(factors)), mass_(std::move(mass)) {
  if (factors_.empty()) throw PreconditionError("joint needs a factor");
  size_t total = 1;
  for (const auto& f : factors_) {
    if (!f) throw PreconditionError("joint factor is null");
    shape_.push_back(f->size());
    total *= f->size();
  }
  if (mass_.size() != total) {
    throw DimensionError("joint has " + std::to_string(mass_.size()) +
                         " cells, shape requires " + std::to_string(total));
  }
  strides_.assign(factors_.size(), 1);
  for (int f = num_factors() - 2; f >= 0; --f) {
    strides_[f] = strides_[f + 1] * shape_[f + 1];
  }
  CheckProbabilityVector(mass_, "joint measure");
}

JointMeasure::JointMeasure(const Measure& measure)
    : JointMeasure({measure.space_ptr()},
                   {measure.mass().begin(), measure.mass().end()}) {}

size_t JointMeasure::Flatten(std::span<const int> index) const {
  size_t flat = 0;
  for (int f = 0; f < num_factors(); ++f) flat += strides_[f] * index[f];
  return flat;
}

void JointMeasure::Unflatten(size_t flat, std::span<int> index) const {
  for (int f = 0; f < num_factors(); ++f) {
    index[f] = static_cast<int>(flat / strides_[f]);
    flat %= strides_[f];
  }
}

double JointMeasure::at(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != num_factors()) {
    throw DimensionError("index arity does not match the joint");
  }
  return mass_[Flatten(index)];
}

bool JointMeasure::SameFactors(const JointMeasure& other) const {
  if (num_factors() != other.num_factors()) return false;
  for (int f = 0; f < num_factors(); ++f) {
    if (!SameSpace(factors_[f], other.factors_[f])) return false;
  }
  return true;
}

// -------------------------------------------------------------- operations

JointMeasure Join(const Measure& prior, std::span<const Channel> channels) {
  std::vector<SpacePtr> factors{prior.space_ptr()};
  for (const auto& ch : channels) {
    if (!SameSpace(ch.from_ptr(), prior.space_ptr())) {
      throw DimensionError("channel source space differs from the prior space");
    }
    factors.push_back(ch.to_ptr());
  }
  size_t total = 1;
  for (const auto& f : factors) total *= f->size();
  std::vector<double> mass(total, 0.0);
  std::vector<int> index(factors.size(), 0);
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rest = flat;
    for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
      index[f] = static_cast<int>(rest % factors[f]->size());
      rest /= factors[f]->size();
    }
    double m = prior[index[0]];
    for (size_t c = 0; c < channels.size() && m != 0.0; ++c) {
      m *= channels[c](index[0], index[c + 1]);
    }
    mass[flat] = m;
  }
  return JointMeasure(std::move(factors), std::move(mass));
}

JointMeasure Marginal(const JointMeasure& joint, std::vector<int> keep) {
  if (keep.empty()) throw PreconditionError("marginal needs a kept factor");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw PreconditionError("marginal factor set has duplicates");
  }
  for (int k : keep) {
    if (k < 0 || k >= joint.num_factors()) {
      throw PreconditionError("marginal factor index " + std::to_string(k) +
                              " out of range");
    }
  }
  std::vector<SpacePtr> factors;
  std::vector<size_t> out_strides(keep.size(), 1);
  size_t total = 1;
  for (int k : keep) {
    factors.push_back(joint.factor_ptr(k));
    total *= joint.shape()[k];
  }
  for (int i = static_cast<int>(keep.size()) - 2; i >= 0; --i) {
    out_strides[i] = out_strides[i + 1] * joint.shape()[keep[i + 1]];
  }
  std::vector<double> mass(total, 0.0);
  std::vector<int> index(joint.num_factors());
  for (size_t flat = 0; flat < joint.size(); ++flat) {
    double m = joint[flat];
    if (m == 0.0) continue;
    joint.Unflatten(flat, index);
    size_t out = 0;
    for (size_t i = 0; i < keep.size(); ++i) out += out_strides[i] * index[keep[i]];
    mass[out] += m;
  }
  return JointMeasure(std::move(factors), std::move(mass));
}

Measure FactorMarginal(const JointMeasure& joint, int factor) {
  JointMeasure m = Marginal(joint, {factor});
  return Measure(m.factor_ptr(0), {m.mass().begin(), m.mass().end()});
}

Channel Disintegrate(const JointMeasure& joint, int given, int target,
                     const std::optional<std::vector<double>>& default_row) {
  if (given == target) throw PreconditionError("given and target coincide");
  JointMeasure pair = Marginal(joint, {given, target});
  // Marginal sorts factors; transpose when given > target.
  bool transposed = given > target;
  int rows = joint.shape()[given];
  int cols = joint.shape()[target];
  if (default_row && static_cast<int>(default_row->size()) != cols) {
    throw DimensionError("default row has the wrong length");
  }
  std::vector<double> w(static_cast<size_t>(rows) * cols, 0.0);
  for (int a = 0; a < rows; ++a) {
    double total = 0.0;
    for (int b = 0; b < cols; ++b) {
      double m = transposed ? pair[static_cast<size_t>(b) * rows + a]
                            : pair[static_cast<size_t>(a) * cols + b];
      w[static_cast<size_t>(a) * cols + b] = m;
      total += m;
    }
    if (total <= 0.0) {
      if (!default_row) {
        throw DegenerateConditioningError(
            "conditioning point '" + joint.factor(given).label(a) +
            "' has zero mass and no default row was supplied");
      }
      std::copy(default_row->begin(), default_row->end(),
                w.begin() + static_cast<ptrdiff_t>(a) * cols);
      continue;
    }
    for (int b = 0; b < cols; ++b) w[static_cast<size_t>(a) * cols + b] /= total;
  }
  return Channel(joint.factor_ptr(given), joint.factor_ptr(target), std::move(w));
}

JointMeasure Garble(const JointMeasure& joint, int player,
                    const Channel& kernel) {
  if (player < 1 || player >= joint.num_factors()) {
    throw PreconditionError("garbled factor must be a measurement factor");
  }
  if (!SameSpace(kernel.from_ptr(), joint.factor_ptr(player))) {
    throw DimensionError("kernel source space differs from the garbled factor");
  }
  std::vector<SpacePtr> factors = joint.factors();
  factors[player] = kernel.to_ptr();
  // View the tensor as (outer, a, inner) and produce (outer, b, inner).
  size_t inner = joint.strides()[player];
  size_t n_in = joint.shape()[player];
  size_t n_out = kernel.cols();
  size_t outer = joint.size() / (n_in * inner);
  std::vector<double> mass(outer * n_out * inner, 0.0);
  for (size_t o = 0; o < outer; ++o) {
    for (size_t a = 0; a < n_in; ++a) {
      const double* src = joint.mass().data() + (o * n_in + a) * inner;
      for (size_t b = 0; b < n_out; ++b) {
        double k = kernel(static_cast<int>(a), static_cast<int>(b));
        if (k == 0.0) continue;
        double* dst = mass.data() + (o * n_out + b) * inner;
        for (size_t i = 0; i < inner; ++i) dst[i] += k * src[i];
      }
    }
  }
  return JointMeasure(std::move(factors), std::move(mass));
}

double TvDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("TV operands differ in size");
  double sum = 0.0;
  for (size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return sum;
}

double TvDistance(const JointMeasure& p, const JointMeasure& q) {
  if (!p.SameFactors(q)) throw DimensionError("TV operands differ in factor spaces");
  return TvDistance(p.mass(), q.mass());
}

double TvDistance(const Measure& p, const Measure& q) {
  if (!SameSpace(p.space_ptr(), q.space_ptr())) {
    throw DimensionError("TV operands live on different spaces");
  }
  return TvDistance(p.mass(), q.mass());
}

namespace {

// W1 depends on p and q only through p - q, so the shared mass min(p, q)
// stays in place and only the surplus is transported.
double SurplusTransport(std::span<const double> p, std::span<const double> q,
                        const std::function<double(size_t, size_t)>& dist) {
  std::vector<size_t> src, dst;
  std::vector<double> supply, demand;
  for (size_t i = 0; i < p.size(); ++i) {
    double d = p[i] - q[i];
    if (d > 0) {
      src.push_back(i);
      supply.push_back(d);
    } else if (d < 0) {
      dst.push_back(i);
      demand.push_back(-d);
    }
  }
  if (src.empty() || dst.empty()) return 0.0;
  // Rescale the smaller side so both totals agree bit-for-bit.
  double s = std::accumulate(supply.begin(), supply.end(), 0.0);
  double t = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (s < t) {
    for (double& v : demand) v *= s / t;
  } else {
    for (double& v : supply) v *= t / s;
  }
  TransportPlan plan = SolveTransport(supply, demand, [&](int i, int j) {
    return dist(src[i], dst[j]);
  });
  return plan.cost;
}

}  // namespace

double Wasserstein1(const Measure& p, const Measure& q) {
  if (!SameSpace(p.space_ptr(), q.space_ptr())) {
    throw DimensionError("W1 operands live on different spaces");
  }
  const MetricFiniteSpace& space = p.space();
  return SurplusTransport(p.mass(), q.mass(), [&](size_t i, size_t j) {
    return space.Distance(static_cast<int>(i), static_cast<int>(j));
  });
}

double JointWasserstein1(const JointMeasure& p, const JointMeasure& q) {
  if (!p.SameFactors(q)) throw DimensionError("W1 operands differ in factor spaces");
  int nf = p.num_factors();
  std::vector<int> a(nf), b(nf);
  return SurplusTransport(p.mass(), q.mass(), [&](size_t i, size_t j) {
    p.Unflatten(i, a);
    p.Unflatten(j, b);
    double d = 0.0;
    for (int f = 0; f < nf; ++f) d += p.factor(f).Distance(a[f], b[f]);
    return d;
  });
}

}  // namespace infolab
