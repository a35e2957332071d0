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

// Local search approximating the cost / minimum-access Pareto frontier.
//
// Starting from a covering tour that meets the coverage requirement, each
// iteration applies the feasible swap (drop one optional box, add one, or
// both) whose (access change, cost change) vector makes the smallest
// counter-clockwise angle with <-1, 0>, then raises the access bound r by at
// most epsilon. A re-found tour instead lifts r to the incumbent's minimum
// access, which ends cycling. The search stops once every location is
// selected.

#ifndef DBLP_HEURISTIC_H_
#define DBLP_HEURISTIC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dblp/model.h"

namespace dblp {

struct SwapCandidate {
  std::optional<int> remove;  // location index leaving the selection
  std::optional<int> insert;  // location index joining it
  double delta_cost = 0.0;    // estimated change in reformulated tour cost
  double delta_access = 0.0;  // change in minimum access
  double angle = 0.0;
};

struct FrontierEntry {
  Solution solution;
  double r_satisfied = 0.0;
};

struct Frontier {
  std::vector<FrontierEntry> entries;  // increasing min_access
  std::int64_t iterations = 0;
  std::int64_t refound_iterations = 0;  // swaps that led back to a known tour
};

// A population to cover once, with its (possibly reduced) covering set.
struct CoverDemand {
  std::string id;
  std::vector<int> covering_set;
};

struct CoveringTour {
  std::vector<int> selected;  // sorted
  std::vector<int> tour;      // starts at the start location
};

// Greedy covering tour: repeatedly adds the location covering the most
// uncovered demands per unit of cheapest-insertion cost, then drops optional
// locations (most demands covered first) that cover no demand uniquely.
// `required` must contain `start`. Throws InfeasibleError naming a demand
// that no location covers.
CoveringTour CtpConstruct(int start, std::span<const int> required,
                          std::span<const CoverDemand> demands,
                          const EdgeCosts& costs);

// A solution meeting the coverage requirement (access bound 0). With q = 0 it
// tours T; otherwise it stacks q covering tours, stage k covering each
// population still below k times with locations not yet selected.
Solution InitialSolution(const Instance& inst);

// Counter-clockwise angle in (0, 2 pi] from <-1, 0> to
// <delta_access, delta_cost>. Throws std::invalid_argument for the zero
// vector.
double Angle(double delta_access, double delta_cost);

// Shortcut-removal plus cheapest-insertion estimate of the change in tour
// cost; the insertion is evaluated on the tour after the removal.
double EstimateDeltaCost(std::span<const int> tour, const EdgeCosts& costs,
                         std::optional<int> remove, std::optional<int> insert);

// Every swap from the selection toured by `tour` keeping coverage >= q and
// minimum access >= r, except those that raise cost and lower access.
// `costs` are the reformulated costs.
std::vector<SwapCandidate> FeasibleSwaps(const Instance& inst,
                                         const EdgeCosts& costs,
                                         std::span<const int> tour, double r,
                                         int q);

// The candidate with the smallest angle; ties go to the smaller cost change,
// then to the lexicographically smaller (remove id, insert id) with an absent
// side ordered first. Empty input gives nullopt.
std::optional<SwapCandidate> BestSwap(const Instance& inst,
                                      std::span<const SwapCandidate> candidates);

// Optimal tour for up to kExactTourLimit locations, otherwise nearest
// neighbour plus 2-opt. Starts at `start`.
std::vector<int> RebuildTour(std::span<const int> selected,
                             const EdgeCosts& costs, int start);

struct CostAccess {
  double cost = 0.0;
  double access = 0.0;
};

// Indices of the points not dominated by another point (cost no larger,
// access no smaller, one strictly). Of several equal points the first is
// kept. Returned in input order.
std::vector<int> Nondominated(std::span<const CostAccess> points);

// Runs the search. `epsilon` defaults to EpsilonDefault(inst). Throws
// InfeasibleError when no initial solution exists.
Frontier BuildFrontier(const Instance& inst,
                       std::optional<double> epsilon = std::nullopt);

}  // namespace dblp

#endif  // DBLP_HEURISTIC_H_
