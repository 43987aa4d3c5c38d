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

#include "infolab/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "infolab/errors.h"

namespace infolab {
namespace {

struct Cell {
  int row;
  int col;
  double flow;
};

// Consecutive degenerate pivots tolerated under Dantzig's rule before
// switching to Bland's first-improving rule until the next strict decrease.
constexpr int kDegenerateStreak = 50;

}  // namespace

TransportPlan SolveTransport(std::span<const double> supply,
                             std::span<const double> demand,
                             const std::function<double(int, int)>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw PreconditionError("empty transport problem");
  for (double s : supply) {
    if (!(s >= 0)) throw PreconditionError("negative supply");
  }
  for (double d : demand) {
    if (!(d >= 0)) throw PreconditionError("negative demand");
  }
  double total_s = std::accumulate(supply.begin(), supply.end(), 0.0);
  double total_d = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::abs(total_s - total_d) > 1e-9) {
    throw PreconditionError("unbalanced transport problem");
  }

  std::vector<double> c(static_cast<size_t>(m) * n);
  double max_cost = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = cost(i, j);
      c[static_cast<size_t>(i) * n + j] = v;
      max_cost = std::max(max_cost, std::abs(v));
    }
  }
  const double eps = 1e-12 * std::max(1.0, max_cost);

  // Northwest corner start; always m + n - 1 basic cells.
  std::vector<Cell> basis;
  basis.reserve(m + n - 1);
  {
    std::vector<double> s(supply.begin(), supply.end());
    std::vector<double> d(demand.begin(), demand.end());
    int i = 0, j = 0;
    while (true) {
      double amount = std::min(s[i], d[j]);
      basis.push_back({i, j, amount});
      s[i] -= amount;
      d[j] -= amount;
      if (i == m - 1 && j == n - 1) break;
      if (j == n - 1 || (i < m - 1 && s[i] <= d[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  TransportPlan plan;
  std::vector<double> u(m), v(n);
  // Node ids: rows 0..m-1, columns m..m+n-1. adj holds basis cell indices.
  std::vector<std::vector<int>> adj(m + n);
  std::vector<int> parent_cell(m + n), parent_node(m + n);
  std::vector<char> seen(m + n);
  int degenerate_run = 0;
  const long max_pivots = 1000L + 50L * m * n;

  for (long iter = 0;; ++iter) {
    if (iter > max_pivots) throw SolverFailure("transport simplex did not terminate");
    for (auto& a : adj) a.clear();
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      adj[basis[k].row].push_back(k);
      adj[m + basis[k].col].push_back(k);
    }
    // Potentials: u_i + v_j = c_ij on basic cells, u_0 = 0.
    std::fill(seen.begin(), seen.end(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    u[0] = 0.0;
    while (!q.empty()) {
      int node = q.front();
      q.pop();
      for (int k : adj[node]) {
        const Cell& cell = basis[k];
        double cij = c[static_cast<size_t>(cell.row) * n + cell.col];
        if (node < m) {
          int other = m + cell.col;
          if (!seen[other]) {
            v[cell.col] = cij - u[cell.row];
            seen[other] = 1;
            q.push(other);
          }
        } else {
          int other = cell.row;
          if (!seen[other]) {
            u[cell.row] = cij - v[cell.col];
            seen[other] = 1;
            q.push(other);
          }
        }
      }
    }
    for (int k = 0; k < m + n; ++k) {
      if (!seen[k]) throw SolverFailure("transport basis is not a spanning tree");
    }

    bool bland = degenerate_run >= kDegenerateStreak;
    int enter_i = -1, enter_j = -1;
    double best = -eps;
    for (int i = 0; i < m && !(bland && enter_i >= 0); ++i) {
      for (int j = 0; j < n; ++j) {
        double r = c[static_cast<size_t>(i) * n + j] - u[i] - v[j];
        if (r < best) {
          best = bland ? -eps : r;
          enter_i = i;
          enter_j = j;
          if (bland) break;
        }
      }
    }
    if (enter_i < 0) break;

    // Path in the basis tree from column node of enter_j to row enter_i.
    std::fill(seen.begin(), seen.end(), 0);
    int start = m + enter_j;
    seen[start] = 1;
    parent_cell[start] = -1;
    q = {};
    q.push(start);
    while (!q.empty() && !seen[enter_i]) {
      int node = q.front();
      q.pop();
      for (int k : adj[node]) {
        int other = node < m ? m + basis[k].col : basis[k].row;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_cell[other] = k;
        parent_node[other] = node;
        q.push(other);
      }
    }
    // Walking back from the row node: the first cell touches row enter_i and
    // loses flow, then signs alternate.
    std::vector<int> cycle;
    for (int node = enter_i; node != start; node = parent_node[node]) {
      cycle.push_back(parent_cell[node]);
    }
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (size_t t = 0; t < cycle.size(); t += 2) {
      const Cell& cell = basis[cycle[t]];
      if (cell.flow < theta - 1e-15 ||
          (cell.flow <= theta + 1e-15 && leave >= 0 &&
           std::pair(cell.row, cell.col) <
               std::pair(basis[leave].row, basis[leave].col))) {
        theta = std::min(theta, cell.flow);
        leave = cycle[t];
      }
    }
    theta = std::max(theta, 0.0);
    for (size_t t = 0; t < cycle.size(); ++t) {
      Cell& cell = basis[cycle[t]];
      cell.flow += (t % 2 == 0) ? -theta : theta;
      if (cell.flow < 0) cell.flow = 0;
    }
    degenerate_run = theta > 0 ? 0 : degenerate_run + 1;
    basis[leave] = {enter_i, enter_j, theta};
    ++plan.pivots;
  }

  for (const Cell& cell : basis) {
    plan.cost += cell.flow * c[static_cast<size_t>(cell.row) * n + cell.col];
    if (cell.flow > 0) plan.flows.push_back({cell.row, cell.col, cell.flow});
  }
  return plan;
}

}  // namespace infolab
