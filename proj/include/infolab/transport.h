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

#ifndef INFOLAB_TRANSPORT_H_
#define INFOLAB_TRANSPORT_H_

#include <functional>
#include <span>
#include <vector>

namespace infolab {

struct TransportPlan {
  double cost = 0.0;
  // (source, sink, amount) for every basic cell with positive flow.
  struct Flow {
    int source;
    int sink;
    double amount;
  };
  std::vector<Flow> flows;
  int pivots = 0;
};

// Balanced transportation problem
//   min sum_ij cost(i, j) f_ij  s.t.  sum_j f_ij = supply_i,
//                                     sum_i f_ij = demand_j,  f >= 0
// solved with the transportation simplex (northwest-corner start, u-v
// potentials, stepping-stone cycles). Supplies and demands must be
// nonnegative with equal totals up to 1e-9.
TransportPlan SolveTransport(std::span<const double> supply,
                             std::span<const double> demand,
                             const std::function<double(int, int)>& cost);

}  // namespace infolab

#endif  // INFOLAB_TRANSPORT_H_
