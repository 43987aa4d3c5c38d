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

#ifndef INFOLAB_INFO_COMPARE_H_
#define INFOLAB_INFO_COMPARE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "infolab/measure.h"

namespace infolab {

// Result of a kernel search. `kernels[k]` garbles player `players[k]`;
// `achieved` is the distance recomputed from the returned kernels and agrees
// with `deficiency` to kLpCertificateTolerance.
struct GarblingCertificate {
  double deficiency = 0.0;
  std::vector<Channel> kernels;
  std::vector<int> players;
  double achieved = 0.0;
};

inline constexpr double kLpCertificateTolerance = 1e-8;
inline constexpr double kDefaultCertificateTolerance = 1e-6;

// min over row-stochastic kappa of TV(Garble(source, player, kappa), target).
// Both joints must live on the same factor spaces.
GarblingCertificate GarblingDeficiency(const JointMeasure& source,
                                       const JointMeasure& target, int player);

// min over kappa1, kappa2 of TV(Garble(a, 1, kappa1), Garble(b, 2, kappa2))
// for two-player joints on common spaces.
GarblingCertificate CrossGarblingGap(const JointMeasure& a, const JointMeasure& b);

// Value distance for zero-sum games through its kernel characterization:
// max{CrossGarblingGap(mu, nu), CrossGarblingGap(nu, mu)}.
double PeskiD2(const JointMeasure& mu, const JointMeasure& nu);

struct SamplerOptions {
  int trials = 200;
  uint64_t seed = 0;
  // Action-space sizes of the sampled games; 0 picks max(2, |Y^i|).
  int actions = 0;
};

// Largest |J*(g, mu) - J*(g, nu)| over random zero-sum games with costs
// drawn uniformly from [-1, 1]. A lower bound on the value distance.
double D2LowerBoundSampler(const JointMeasure& mu, const JointMeasure& nu,
                           const SamplerOptions& options);

// Le Cam deficiency of q_mu with respect to q_nu:
// min over kappa of max_x TV(kappa o q_mu(.|x), q_nu(.|x)). The kernel maps
// q_mu's output space to q_nu's.
GarblingCertificate LeCamDeficiency(const MetricFiniteSpace& prior_space,
                                    const Channel& q_mu, const Channel& q_nu);

double LeCamDistance(const MetricFiniteSpace& prior_space, const Channel& q_mu,
                     const Channel& q_nu);

// Optimal expected cost of one decision maker observing y ~ channel(.|x)
// under `prior`; cost[x * num_actions + u].
double SinglePlayerValue(const Measure& prior, const Channel& channel,
                         const std::vector<double>& cost, int num_actions);

// Largest single-player value difference between the two channels over
// random cost tables drawn uniformly from [-1, 1].
double D1Sampler(const Measure& prior, const Channel& q_mu, const Channel& q_nu,
                 const SamplerOptions& options);

enum class SequenceKind { kMaximizerGarbling, kMinimizerGarbling, kNone };

std::string ToString(SequenceKind kind);

struct SequenceClassification {
  SequenceKind kind = SequenceKind::kNone;
  // Per consecutive pair (j, j + 1):
  // maximizer_gaps[j] = CrossGarblingGap(mu_{j+1}, mu_j), zero when the
  //   minimizer's information improves and the maximizer's degrades;
  // minimizer_gaps[j] = CrossGarblingGap(mu_j, mu_{j+1}), the mirror case.
  std::vector<double> maximizer_gaps;
  std::vector<double> minimizer_gaps;
};

// Tags a sequence of two-player joints sharing one prior. A step qualifies
// when its gap is at most `tolerance`; when every step qualifies for both
// tags the maximizer tag wins.
SequenceClassification ClassifySequence(const std::vector<JointMeasure>& sequence,
                                        double tolerance = kDefaultCertificateTolerance);

}  // namespace infolab

#endif  // INFOLAB_INFO_COMPARE_H_
