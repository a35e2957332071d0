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

// Reporting: per-solution comparison criteria and heuristic-versus-exact cost
// deviation.

#ifndef DBLP_EVAL_H_
#define DBLP_EVAL_H_

#include <optional>
#include <span>
#include <vector>

#include "dblp/heuristic.h"
#include "dblp/model.h"

namespace dblp {

// Population-weighted quantities use p_w; when every weight is zero all
// populations count equally.
struct CriteriaReport {
  int num_boxes = 0;
  double fixed_cost = 0.0;
  double operational_cost = 0.0;
  double total_cost = 0.0;
  double frac_covered_1 = 0.0;
  double frac_covered_q = 0.0;
  double min_access = 0.0;
  double avg_access = 0.0;
  // Share of voters without a vehicle having at least q selected boxes
  // reachable without driving; needs the instance's mode durations.
  std::optional<double> frac_nondriving_covered;
  // Present when a population-by-location distance matrix is supplied.
  std::optional<double> max_dist_closest;
  std::optional<double> max_dist_third_closest;
  std::optional<double> avg_dist_closest;
  std::optional<double> avg_dist_closest3;
};

// `distances` is indexed [population][location]. With fewer than three boxes
// the "third closest" and "closest 3" figures use all selected boxes.
CriteriaReport Criteria(const Instance& inst, const Solution& sol,
                        const std::vector<std::vector<double>>* distances = nullptr);

struct DeviationPair {
  double r = 0.0;
  double heuristic_cost = 0.0;
  double exact_cost = 0.0;
};

struct DeviationReport {
  std::vector<DeviationPair> pairs;
  // Mean of (heuristic - exact) / exact * 100 over the pairs; absent when
  // there are none.
  std::optional<double> mean_percent_deviation;
  double heuristic_seconds = 0.0;
  double exact_seconds = 0.0;
  int heuristic_solutions = 0;
  int exact_solutions = 0;  // distinct exact solutions
};

// Pairs each heuristic entry with the exact entry solved at r equal to the
// heuristic entry's minimum access.
DeviationReport CostDeviation(std::span<const FrontierEntry> exact_entries,
                              const Frontier& heuristic);

struct ExactSweepResult {
  // One entry per heuristic entry, solved at r = its minimum access.
  std::vector<FrontierEntry> matched;
  Frontier frontier;  // non-dominated, distinct solutions of `matched`
  double seconds = 0.0;
};

// Re-solves the exact problem at every heuristic entry's minimum access.
// Other fields of `base` (filter, node limit) are kept.
ExactSweepResult ExactSweep(const Instance& inst, const Frontier& heuristic,
                            const SolveOptions& base = {});

// Runs the heuristic and the exact sweep, timing both.
DeviationReport CompareMethods(const Instance& inst,
                               std::optional<double> epsilon = std::nullopt);

}  // namespace dblp

#endif  // DBLP_EVAL_H_
