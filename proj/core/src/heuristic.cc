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

#include "dblp/heuristic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dblp/tsp.h"

namespace dblp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Stand-in for a non-positive insertion cost in the greedy ratio.
constexpr double kMinInsertionCost = 1e-9;

struct Insertion {
  double cost = std::numeric_limits<double>::infinity();
  int after = -1;  // position in the tour the new node follows
};

Insertion CheapestInsertion(std::span<const int> tour, const EdgeCosts& costs,
                            int node) {
  Insertion best;
  const int len = static_cast<int>(tour.size());
  for (int p = 0; p < len; ++p) {
    const int u = tour[p];
    const int v = tour[(p + 1) % len];
    const double delta = costs(u, node) + costs(node, v) - costs(u, v);
    if (delta < best.cost) {
      best.cost = delta;
      best.after = p;
    }
  }
  return best;
}

double AccessFromSum(const AccessParams& ap, double sum) {
  return sum / (ap.v0 + sum);
}

}  // namespace

CoveringTour CtpConstruct(int start, std::span<const int> required,
                          std::span<const CoverDemand> demands,
                          const EdgeCosts& costs) {
  const int n = costs.size();
  if (std::find(required.begin(), required.end(), start) == required.end()) {
    throw std::invalid_argument("required set must contain the start");
  }
  for (const CoverDemand& d : demands) {
    if (d.covering_set.empty()) {
      throw InfeasibleError("population '" + d.id + "' has no covering location",
                            d.id);
    }
  }

  std::vector<char> chosen(n, 0);
  std::vector<int> sequence{start};
  chosen[start] = 1;
  for (int t : required) {
    if (chosen[t]) continue;
    const Insertion ins = CheapestInsertion(sequence, costs, t);
    sequence.insert(sequence.begin() + ins.after + 1, t);
    chosen[t] = 1;
  }

  // covers[j]: demands location j covers.
  std::vector<std::vector<int>> covers(n);
  for (int d = 0; d < static_cast<int>(demands.size()); ++d) {
    for (int j : demands[d].covering_set) covers[j].push_back(d);
  }
  std::vector<int> cover_count(demands.size(), 0);
  for (int j = 0; j < n; ++j) {
    if (!chosen[j]) continue;
    for (int d : covers[j]) ++cover_count[d];
  }

  while (true) {
    int best = -1;
    double best_ratio = -1.0;
    Insertion best_ins;
    for (int j = 0; j < n; ++j) {
      if (chosen[j]) continue;
      int gain = 0;
      for (int d : covers[j]) gain += cover_count[d] == 0;
      if (gain == 0) continue;
      const Insertion ins = CheapestInsertion(sequence, costs, j);
      const double ratio = gain / std::max(ins.cost, kMinInsertionCost);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = j;
        best_ins = ins;
      }
    }
    if (best < 0) break;
    sequence.insert(sequence.begin() + best_ins.after + 1, best);
    chosen[best] = 1;
    for (int d : covers[best]) ++cover_count[d];
  }
  for (int d = 0; d < static_cast<int>(demands.size()); ++d) {
    if (cover_count[d] == 0) {
      throw InfeasibleError(
          "population '" + demands[d].id + "' cannot be covered", demands[d].id);
    }
  }

  // Prune optional locations that cover nothing uniquely.
  std::vector<char> is_required(n, 0);
  for (int t : required) is_required[t] = 1;
  std::vector<int> optional;
  for (int j = 0; j < n; ++j) {
    if (chosen[j] && !is_required[j]) optional.push_back(j);
  }
  std::stable_sort(optional.begin(), optional.end(), [&](int a, int b) {
    return covers[a].size() > covers[b].size();
  });
  for (int j : optional) {
    const bool needed = std::any_of(covers[j].begin(), covers[j].end(),
                                    [&](int d) { return cover_count[d] == 1; });
    if (needed) continue;
    chosen[j] = 0;
    for (int d : covers[j]) --cover_count[d];
  }

  CoveringTour out;
  for (int j = 0; j < n; ++j) {
    if (chosen[j]) out.selected.push_back(j);
  }
  out.tour = RebuildTour(out.selected, costs, start);
  return out;
}

Solution InitialSolution(const Instance& inst) {
  const EdgeCosts costs = ReformulatedCosts(inst);
  for (const VoterPopulation& pop : inst.populations) {
    if (static_cast<int>(pop.covering_set.size()) < inst.q) {
      throw InfeasibleError("population '" + pop.id + "' has fewer than " +
                                std::to_string(inst.q) + " covering locations",
                            pop.id);
    }
  }

  std::vector<int> selected = inst.Required();
  std::vector<int> tour = RebuildTour(selected, costs, inst.start);
  for (int stage = 1; stage <= inst.q; ++stage) {
    const std::vector<int> counts = CoverageCounts(inst, selected);
    std::vector<char> in_selection(inst.num_locations(), 0);
    for (int j : selected) in_selection[j] = 1;
    std::vector<CoverDemand> demands;
    for (int w = 0; w < inst.num_populations(); ++w) {
      if (counts[w] >= stage) continue;
      CoverDemand d{inst.populations[w].id, {}};
      for (int j : inst.populations[w].covering_set) {
        if (!in_selection[j]) d.covering_set.push_back(j);
      }
      demands.push_back(std::move(d));
    }
    const CoveringTour ct = CtpConstruct(inst.start, selected, demands, costs);
    selected = ct.selected;
    tour = ct.tour;
  }
  return MakeSolution(inst, std::move(tour));
}

double Angle(double delta_access, double delta_cost) {
  const double norm = std::hypot(delta_access, delta_cost);
  if (norm == 0.0) {
    throw std::invalid_argument("angle of the zero vector is undefined");
  }
  const double c = std::clamp(-delta_access / norm, -1.0, 1.0);
  return delta_cost >= 0.0 ? kTwoPi - std::acos(c) : std::acos(c);
}

double EstimateDeltaCost(std::span<const int> tour, const EdgeCosts& costs,
                         std::optional<int> remove, std::optional<int> insert) {
  double delta = 0.0;
  std::vector<int> rest(tour.begin(), tour.end());
  if (remove) {
    const auto it = std::find(rest.begin(), rest.end(), *remove);
    if (it == rest.end()) {
      throw std::invalid_argument("removed location is not on the tour");
    }
    const int len = static_cast<int>(rest.size());
    const int p = static_cast<int>(it - rest.begin());
    const int pred = rest[(p + len - 1) % len];
    const int succ = rest[(p + 1) % len];
    delta += costs(pred, succ) - costs(pred, *remove) - costs(*remove, succ);
    rest.erase(it);
  }
  if (insert) {
    if (std::find(rest.begin(), rest.end(), *insert) != rest.end()) {
      throw std::invalid_argument("inserted location is already on the tour");
    }
    if (rest.empty()) return delta;
    delta += CheapestInsertion(rest, costs, *insert).cost;
  }
  return delta;
}

std::vector<SwapCandidate> FeasibleSwaps(const Instance& inst,
                                         const EdgeCosts& costs,
                                         std::span<const int> tour, double r,
                                         int q) {
  const int n = inst.num_locations();
  const int m = inst.num_populations();
  std::vector<char> in_tour(n, 0);
  for (int v : tour) in_tour[v] = 1;
  std::vector<char> is_required(n, 0);
  for (int t : inst.Required()) is_required[t] = 1;

  // Per population: coverage count and v1 + sum of selected a.
  std::vector<int> count(m, 0);
  std::vector<double> sum(m, 0.0);
  double min_before = 1.0;
  for (int w = 0; w < m; ++w) {
    const VoterPopulation& pop = inst.populations[w];
    for (int j : pop.covering_set) count[w] += in_tour[j];
    double s = pop.access.v1;
    for (int v : tour) s += pop.access.a[v];
    sum[w] = s;
    min_before = std::min(min_before, AccessFromSum(pop.access, s));
  }
  std::vector<std::vector<char>> covers(n, std::vector<char>(m, 0));
  for (int w = 0; w < m; ++w) {
    for (int j : inst.populations[w].covering_set) covers[j][w] = 1;
  }

  std::vector<int> removals{-1};
  std::vector<int> insertions{-1};
  for (int v : tour) {
    if (!is_required[v]) removals.push_back(v);
  }
  for (int j = 0; j < n; ++j) {
    if (!in_tour[j]) insertions.push_back(j);
  }

  std::vector<SwapCandidate> out;
  std::vector<int> critical;
  std::vector<int> rest;
  for (int i : removals) {
    // Populations whose coverage would fall below q without i.
    critical.clear();
    if (i >= 0) {
      for (int w = 0; w < m; ++w) {
        if (covers[i][w] && count[w] == q) critical.push_back(w);
      }
    }
    rest.assign(tour.begin(), tour.end());
    double removal_delta = 0.0;
    if (i >= 0) {
      const int len = static_cast<int>(rest.size());
      const int p = static_cast<int>(std::find(rest.begin(), rest.end(), i) -
                                     rest.begin());
      const int pred = rest[(p + len - 1) % len];
      const int succ = rest[(p + 1) % len];
      removal_delta = costs(pred, succ) - costs(pred, i) - costs(i, succ);
      rest.erase(rest.begin() + p);
    }

    for (int j : insertions) {
      if (i < 0 && j < 0) continue;
      // Coverage first: it is the cheaper test.
      if (!critical.empty() && j < 0) continue;
      if (j >= 0 && !std::all_of(critical.begin(), critical.end(),
                                 [&](int w) { return covers[j][w] != 0; })) {
        continue;
      }
      double min_after = 1.0;
      for (int w = 0; w < m; ++w) {
        const AccessParams& ap = inst.populations[w].access;
        double s = sum[w];
        if (i >= 0) s -= ap.a[i];
        if (j >= 0) s += ap.a[j];
        min_after = std::min(min_after, AccessFromSum(ap, s));
        if (min_after < r) break;
      }
      if (min_after < r) continue;

      SwapCandidate cand;
      if (i >= 0) cand.remove = i;
      if (j >= 0) cand.insert = j;
      cand.delta_cost = removal_delta;
      if (j >= 0 && !rest.empty()) {
        cand.delta_cost += CheapestInsertion(rest, costs, j).cost;
      }
      cand.delta_access = min_after - min_before;
      if (cand.delta_cost > 0.0 && cand.delta_access < 0.0) continue;
      cand.angle = cand.delta_cost == 0.0 && cand.delta_access == 0.0
                       ? kTwoPi
                       : Angle(cand.delta_access, cand.delta_cost);
      out.push_back(cand);
    }
  }
  return out;
}

std::optional<SwapCandidate> BestSwap(const Instance& inst,
                                      std::span<const SwapCandidate> candidates) {
  auto id_key = [&](const std::optional<int>& loc) {
    return loc ? std::make_pair(1, inst.locations[*loc].id)
               : std::make_pair(0, std::string());
  };
  std::optional<SwapCandidate> best;
  for (const SwapCandidate& c : candidates) {
    if (!best) {
      best = c;
      continue;
    }
    const auto lhs = std::make_tuple(c.angle, c.delta_cost, id_key(c.remove),
                                     id_key(c.insert));
    const auto rhs = std::make_tuple(best->angle, best->delta_cost,
                                     id_key(best->remove), id_key(best->insert));
    if (lhs < rhs) best = c;
  }
  return best;
}

std::vector<int> RebuildTour(std::span<const int> selected,
                             const EdgeCosts& costs, int start) {
  if (static_cast<int>(selected.size()) <= kExactTourLimit) {
    return HeldKarpTour(costs, selected, start);
  }
  return TwoOptTour(costs, selected, start);
}

std::vector<int> Nondominated(std::span<const CostAccess> points) {
  std::vector<int> kept;
  const int size = static_cast<int>(points.size());
  for (int a = 0; a < size; ++a) {
    bool drop = false;
    for (int b = 0; b < size && !drop; ++b) {
      if (a == b) continue;
      const CostAccess& pa = points[a];
      const CostAccess& pb = points[b];
      const bool weakly = pb.cost <= pa.cost && pb.access >= pa.access;
      const bool equal = pb.cost == pa.cost && pb.access == pa.access;
      drop = weakly && (!equal || b < a);
    }
    if (!drop) kept.push_back(a);
  }
  return kept;
}

Frontier BuildFrontier(const Instance& inst, std::optional<double> epsilon) {
  const double eps = epsilon ? *epsilon : EpsilonDefault(inst);
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const EdgeCosts costs = ReformulatedCosts(inst);
  const int n = inst.num_locations();

  Frontier frontier;
  std::vector<FrontierEntry> found;
  std::set<std::vector<int>> seen;

  Solution current = InitialSolution(inst);
  seen.insert(CanonicalTour(current.tour, inst.start));
  found.push_back({current, 0.0});
  double r = 0.0;

  // Each new tour raises r by epsilon or reaches the incumbent's minimum
  // access, and each re-found tour lifts r to that minimum; this cap only
  // guards against a broken invariant.
  const std::int64_t max_iterations =
      static_cast<std::int64_t>(std::ceil(2.0 / eps)) + 100LL * n * n + 1000;

  while (static_cast<int>(current.selected.size()) < n) {
    if (frontier.iterations >= max_iterations) {
      throw std::logic_error("frontier search exceeded its iteration bound");
    }
    ++frontier.iterations;
    const std::vector<SwapCandidate> candidates =
        FeasibleSwaps(inst, costs, current.tour, r, inst.q);
    const std::optional<SwapCandidate> swap = BestSwap(inst, candidates);
    if (!swap) {
      throw std::logic_error("no feasible swap although unselected locations remain");
    }

    std::vector<int> next = current.selected;
    if (swap->remove) std::erase(next, *swap->remove);
    if (swap->insert) {
      next.insert(std::upper_bound(next.begin(), next.end(), *swap->insert),
                  *swap->insert);
    }
    current = MakeSolution(inst, RebuildTour(next, costs, inst.start));

    // The incumbent must satisfy the bound it was chosen under.
    const std::vector<int> counts = CoverageCounts(inst, current.selected);
    if (std::any_of(counts.begin(), counts.end(),
                    [&](int c) { return c < inst.q; }) ||
        current.min_access < r - kAccessTolerance) {
      throw std::logic_error("swap produced an infeasible incumbent");
    }

    if (!seen.insert(CanonicalTour(current.tour, inst.start)).second) {
      ++frontier.refound_iterations;
      r = current.min_access;
    } else {
      found.push_back({current, r});
      r = std::min(current.min_access, r + eps);
    }
  }

  std::vector<CostAccess> points;
  points.reserve(found.size());
  for (const FrontierEntry& e : found) {
    points.push_back({e.solution.total_cost, e.solution.min_access});
  }
  for (int idx : Nondominated(points)) frontier.entries.push_back(found[idx]);
  std::stable_sort(frontier.entries.begin(), frontier.entries.end(),
                   [](const FrontierEntry& a, const FrontierEntry& b) {
                     return a.solution.min_access < b.solution.min_access;
                   });
  return frontier;
}

}  // namespace dblp
