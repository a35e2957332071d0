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

#include "dblp/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dblp/exact.h"

namespace dblp {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Non-driving reach: at least two of walk <= 15 min, transit <= 30 min and
// road distance <= 4 miles (other-mode minutes at 15 mph).
bool ReachableWithoutCar(const ModeDurations& md, int w, int j) {
  const double road_miles = md.other[w][j] / 60.0 * 15.0;
  const int met = (md.walk[w][j] <= 15.0) + (md.transit[w][j] <= 30.0) +
                  (road_miles <= 4.0);
  return met >= 2;
}

}  // namespace

CriteriaReport Criteria(const Instance& inst, const Solution& sol,
                        const std::vector<std::vector<double>>* distances) {
  const int m = inst.num_populations();
  CriteriaReport rep;
  rep.num_boxes = static_cast<int>(sol.selected.size());
  rep.fixed_cost = sol.fixed_cost;
  rep.operational_cost = sol.operational_cost;
  rep.total_cost = sol.total_cost;
  rep.min_access = MinAccess(inst, sol.selected);

  double total_weight = 0.0;
  for (const VoterPopulation& pop : inst.populations) total_weight += pop.weight;
  const bool equal_weights = total_weight <= 0.0;
  auto weight = [&](int w) {
    return equal_weights ? 1.0 : inst.populations[w].weight;
  };
  const double weight_sum = equal_weights ? m : total_weight;

  const std::vector<int> counts = CoverageCounts(inst, sol.selected);
  if (m == 0) {
    rep.frac_covered_1 = rep.frac_covered_q = 1.0;
    rep.avg_access = rep.min_access;
  } else {
    double covered_1 = 0.0;
    double covered_q = 0.0;
    double access = 0.0;
    for (int w = 0; w < m; ++w) {
      if (counts[w] >= 1) covered_1 += weight(w);
      if (counts[w] >= inst.q) covered_q += weight(w);
      access += weight(w) * AccessValue(inst.populations[w], sol.selected);
    }
    rep.frac_covered_1 = covered_1 / weight_sum;
    rep.frac_covered_q = covered_q / weight_sum;
    rep.avg_access = access / weight_sum;
  }

  if (inst.mode_durations) {
    const ModeDurations& md = *inst.mode_durations;
    double carless = 0.0;
    double covered = 0.0;
    for (int w = 0; w < m; ++w) {
      const double share = weight(w) * (1.0 - md.vehicle_fraction[w]);
      int reach = 0;
      for (int j : sol.selected) reach += ReachableWithoutCar(md, w, j);
      carless += share;
      if (reach >= inst.q) covered += share;
    }
    rep.frac_nondriving_covered = carless > 0.0 ? covered / carless : 1.0;
  }

  if (distances && !sol.selected.empty() && m > 0) {
    if (static_cast<int>(distances->size()) != m) {
      throw std::invalid_argument("distance matrix needs one row per population");
    }
    double max_closest = 0.0;
    double max_third = 0.0;
    double sum_closest = 0.0;
    double sum_closest3 = 0.0;
    std::vector<double> d;
    for (int w = 0; w < m; ++w) {
      const std::vector<double>& row = (*distances)[w];
      if (static_cast<int>(row.size()) != inst.num_locations()) {
        throw std::invalid_argument(
            "distance matrix needs one column per location");
      }
      d.clear();
      for (int j : sol.selected) d.push_back(row[j]);
      std::sort(d.begin(), d.end());
      const int k = std::min<int>(3, static_cast<int>(d.size()));
      max_closest = std::max(max_closest, d[0]);
      max_third = std::max(max_third, d[k - 1]);
      sum_closest += weight(w) * d[0];
      sum_closest3 +=
          weight(w) * std::accumulate(d.begin(), d.begin() + k, 0.0) / k;
    }
    rep.max_dist_closest = max_closest;
    rep.max_dist_third_closest = max_third;
    rep.avg_dist_closest = sum_closest / weight_sum;
    rep.avg_dist_closest3 = sum_closest3 / weight_sum;
  }
  return rep;
}

DeviationReport CostDeviation(std::span<const FrontierEntry> exact_entries,
                              const Frontier& heuristic) {
  DeviationReport rep;
  rep.heuristic_solutions = static_cast<int>(heuristic.entries.size());
  std::set<std::vector<int>> distinct;
  for (const FrontierEntry& e : exact_entries) distinct.insert(e.solution.selected);
  rep.exact_solutions = static_cast<int>(distinct.size());

  double total = 0.0;
  for (const FrontierEntry& h : heuristic.entries) {
    const double r = h.solution.min_access;
    const auto match = std::find_if(
        exact_entries.begin(), exact_entries.end(), [&](const FrontierEntry& e) {
          return std::abs(e.r_satisfied - r) <= 1e-12;
        });
    if (match == exact_entries.end()) continue;
    const double exact = match->solution.total_cost;
    rep.pairs.push_back({r, h.solution.total_cost, exact});
    total += (h.solution.total_cost - exact) / exact * 100.0;
  }
  if (!rep.pairs.empty()) rep.mean_percent_deviation = total / rep.pairs.size();
  return rep;
}

ExactSweepResult ExactSweep(const Instance& inst, const Frontier& heuristic,
                            const SolveOptions& base) {
  const auto start = Clock::now();
  ExactSweepResult out;
  for (const FrontierEntry& h : heuristic.entries) {
    SolveOptions options = base;
    options.r = h.solution.min_access;
    out.matched.push_back({SolveExact(inst, options), options.r});
  }
  out.seconds = Seconds(start);

  std::vector<CostAccess> points;
  std::vector<FrontierEntry> distinct;
  std::set<std::vector<int>> seen;
  for (const FrontierEntry& e : out.matched) {
    if (!seen.insert(e.solution.selected).second) continue;
    distinct.push_back(e);
    points.push_back({e.solution.total_cost, e.solution.min_access});
  }
  for (int idx : Nondominated(points)) out.frontier.entries.push_back(distinct[idx]);
  std::stable_sort(out.frontier.entries.begin(), out.frontier.entries.end(),
                   [](const FrontierEntry& a, const FrontierEntry& b) {
                     return a.solution.min_access < b.solution.min_access;
                   });
  return out;
}

DeviationReport CompareMethods(const Instance& inst,
                               std::optional<double> epsilon) {
  const auto start = Clock::now();
  const Frontier heuristic = BuildFrontier(inst, epsilon);
  const double heuristic_seconds = Seconds(start);
  const ExactSweepResult exact = ExactSweep(inst, heuristic);
  DeviationReport rep = CostDeviation(exact.matched, heuristic);
  rep.heuristic_seconds = heuristic_seconds;
  rep.exact_seconds = exact.seconds;
  return rep;
}

}  // namespace dblp
