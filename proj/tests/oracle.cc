// Copyright 2026 The dblp Authors
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

#include "oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace dblp::testing {

double OracleAccess(const VoterPopulation& pop, const std::vector<int>& selected) {
  double sum = 0.0;
  for (int j : selected) sum += pop.access.a[j];
  return (pop.access.v1 + sum) / (pop.access.v0 + pop.access.v1 + sum);
}

double OracleTourCost(const EdgeCosts& costs, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  if (k <= 1) return 0.0;
  if (k == 2) return 2.0 * costs(nodes[0], nodes[1]);
  // best[mask][last]: cheapest path from nodes[0] through mask ending at last.
  const int full = 1 << (k - 1);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(full, std::vector<double>(k - 1, inf));
  for (int i = 0; i < k - 1; ++i) best[1 << i][i] = costs(nodes[0], nodes[i + 1]);
  for (int mask = 1; mask < full; ++mask) {
    for (int last = 0; last < k - 1; ++last) {
      if (!(mask & (1 << last)) || best[mask][last] == inf) continue;
      for (int next = 0; next < k - 1; ++next) {
        if (mask & (1 << next)) continue;
        const int grown = mask | (1 << next);
        best[grown][next] = std::min(
            best[grown][next],
            best[mask][last] + costs(nodes[last + 1], nodes[next + 1]));
      }
    }
  }
  double tour = inf;
  for (int last = 0; last < k - 1; ++last) {
    tour = std::min(tour, best[full - 1][last] + costs(nodes[last + 1], nodes[0]));
  }
  return tour;
}

OracleResult BruteForce(const Instance& inst, const OracleQuery& query) {
  const int n = inst.num_locations();
  int required_mask = 0;
  for (int j = 0; j < n; ++j) {
    if (inst.locations[j].required) required_mask |= 1 << j;
  }
  const int coverage = query.max_coverage ? query.base_q : inst.q;

  OracleResult best;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if ((mask & required_mask) != required_mask) continue;
    std::vector<int> sel;
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) sel.push_back(j);
    }
    if (query.count && static_cast<int>(sel.size()) != *query.count) continue;

    bool ok = true;
    double covered_weight = 0.0;
    for (const VoterPopulation& pop : inst.populations) {
      int hits = 0;
      for (int j : pop.covering_set) hits += (mask >> j) & 1;
      if (hits < coverage || OracleAccess(pop, sel) < query.r - 1e-9) {
        ok = false;
        break;
      }
      if (hits >= inst.q) covered_weight += pop.weight;
    }
    if (!ok) continue;

    double fixed = 0.0;
    for (int j : sel) fixed += inst.locations[j].fixed_cost;
    const double tour = OracleTourCost(inst.edge_costs, sel);
    const double total = fixed + tour;
    if (query.budget && total > *query.budget + 1e-9) continue;
    if (query.cmax && tour > *query.cmax + 1e-9) continue;

    const double objective = query.max_coverage ? -covered_weight : total;
    if (!best.feasible || objective < best.objective - 1e-9) {
      best.feasible = true;
      best.objective = objective;
      best.total_cost = total;
      best.selected = sel;
    }
  }
  return best;
}

Instance RandomInstance(std::uint64_t seed, int num_locations,
                        int num_populations, int q, int num_required) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  Instance inst;
  inst.q = q;
  std::vector<Point> loc_pts(num_locations);
  for (int j = 0; j < num_locations; ++j) {
    loc_pts[j] = {coord(rng), coord(rng)};
    Location loc;
    loc.id = "L" + std::to_string(j);
    loc.fixed_cost = std::round(uniform(50.0, 150.0));
    loc.required = j < std::max(1, num_required);
    loc.coords = loc_pts[j];
    inst.locations.push_back(loc);
  }
  inst.start = 0;
  inst.edge_costs = EdgeCosts(num_locations);
  for (int i = 0; i < num_locations; ++i) {
    for (int j = i + 1; j < num_locations; ++j) {
      inst.edge_costs.Set(i, j, std::round(std::hypot(loc_pts[i].x - loc_pts[j].x,
                                                      loc_pts[i].y - loc_pts[j].y)));
    }
  }

  const int min_cover = std::min(num_locations, std::max(q, 1));
  for (int w = 0; w < num_populations; ++w) {
    VoterPopulation pop;
    pop.id = "P" + std::to_string(w);
    pop.weight = std::round(uniform(1.0, 100.0));
    const Point p{coord(rng), coord(rng)};
    pop.coords = p;
    pop.access.v1 = uniform(0.3, 0.9);
    pop.access.v0 = uniform(0.05, 0.6);
    std::vector<double> dist(num_locations);
    for (int j = 0; j < num_locations; ++j) {
      dist[j] = std::abs(p.x - loc_pts[j].x) + std::abs(p.y - loc_pts[j].y);
      pop.access.a.push_back(std::exp(1.0 - dist[j] / 30.0));
    }
    std::vector<int> order(num_locations);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return dist[a] < dist[b]; });
    const double radius = uniform(20.0, 60.0);
    for (int k = 0; k < num_locations; ++k) {
      if (k < min_cover || dist[order[k]] <= radius) {
        pop.covering_set.push_back(order[k]);
      }
    }
    std::sort(pop.covering_set.begin(), pop.covering_set.end());
    inst.populations.push_back(pop);
  }
  return inst;
}

bool NaiveConnectivityViolated(const Instance& inst,
                               const std::vector<std::vector<char>>& edges,
                               const std::vector<char>& selected) {
  const int n = inst.num_locations();
  for (int s = 1; s < (1 << n) - 1; ++s) {
    bool misses_required = false;
    for (int j = 0; j < n; ++j) {
      if (inst.locations[j].required && !(s & (1 << j))) misses_required = true;
    }
    if (!misses_required) continue;
    int cut = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (edges[i][j] && (((s >> i) & 1) != ((s >> j) & 1))) ++cut;
      }
    }
    for (int t = 0; t < n; ++t) {
      if ((s & (1 << t)) && selected[t] && cut < 2) return true;
    }
  }
  return false;
}

namespace {

void TwoFactorsFrom(int i, int j, const std::vector<char>& selected,
                    std::vector<std::vector<char>>& edges, std::vector<int>& degree,
                    const std::function<void(const std::vector<std::vector<char>>&)>& visit) {
  const int n = static_cast<int>(selected.size());
  if (i == n) {
    visit(edges);
    return;
  }
  if (j >= n) {
    if (degree[i] == (selected[i] ? 2 : 0)) {
      TwoFactorsFrom(i + 1, i + 2, selected, edges, degree, visit);
    }
    return;
  }
  TwoFactorsFrom(i, j + 1, selected, edges, degree, visit);
  if (selected[i] && selected[j] && degree[i] < 2 && degree[j] < 2) {
    edges[i][j] = edges[j][i] = 1;
    ++degree[i];
    ++degree[j];
    TwoFactorsFrom(i, j + 1, selected, edges, degree, visit);
    edges[i][j] = edges[j][i] = 0;
    --degree[i];
    --degree[j];
  }
}

}  // namespace

void ForEachTwoFactor(
    const std::vector<char>& selected,
    const std::function<void(const std::vector<std::vector<char>>&)>& visit) {
  const int n = static_cast<int>(selected.size());
  std::vector<std::vector<char>> edges(n, std::vector<char>(n, 0));
  std::vector<int> degree(n, 0);
  TwoFactorsFrom(0, 1, selected, edges, degree, visit);
}

}  // namespace dblp::testing
