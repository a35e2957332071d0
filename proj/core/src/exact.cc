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

#include "dblp/exact.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dblp {
namespace {

using bip::LinearRow;
using bip::Sense;

bool MaximizingCoverage(const SolveOptions& options) {
  return options.objective_mode == ObjectiveMode::kMaxCoverage;
}

int RequiredCoverage(const Instance& inst, const SolveOptions& options) {
  return MaximizingCoverage(options) ? options.base_coverage : inst.q;
}

// Weight of populations covered at least q times.
double CoveredWeight(const Instance& inst, std::span<const int> selected) {
  const std::vector<int> counts = CoverageCounts(inst, selected);
  double total = 0.0;
  for (int w = 0; w < inst.num_populations(); ++w) {
    if (counts[w] >= inst.q) total += inst.populations[w].weight;
  }
  return total;
}

// Value minimized by the solver for a finished solution.
double ObjectiveOf(const Instance& inst, const SolveOptions& options,
                   const Solution& sol) {
  if (MaximizingCoverage(options)) return -CoveredWeight(inst, sol.selected);
  return sol.total_cost;
}

void CheckReachable(const Instance& inst, const SolveOptions& options) {
  std::vector<int> all(inst.num_locations());
  std::iota(all.begin(), all.end(), 0);
  for (const VoterPopulation& pop : inst.populations) {
    const double best = AccessValue(pop, all);
    if (options.r > best + 1e-12) {
      std::ostringstream msg;
      msg << "access bound r = " << options.r << " exceeds the value "
          << best << " population '" << pop.id
          << "' reaches with every location selected";
      throw InfeasibleError(msg.str(), pop.id);
    }
  }
}

std::vector<int> TourFromAssignment(const Instance& inst,
                                    const DblpEncoding& encoding,
                                    std::span<const std::uint8_t> assignment) {
  const int n = inst.num_locations();
  std::vector<std::vector<int>> adjacent(n);
  for (int e = 0; e < encoding.num_edges(); ++e) {
    if (!assignment[e]) continue;
    const auto [i, j] = encoding.EdgeEnds(e);
    adjacent[i].push_back(j);
    adjacent[j].push_back(i);
  }
  std::vector<int> tour{inst.start};
  int prev = -1;
  int at = inst.start;
  while (true) {
    int next = -1;
    for (int v : adjacent[at]) {
      if (v != prev) {
        next = v;
        break;
      }
    }
    if (next < 0 || next == inst.start) break;
    tour.push_back(next);
    prev = at;
    at = next;
    if (static_cast<int>(tour.size()) > n) {
      throw std::logic_error("edge assignment does not form a cycle");
    }
  }
  return tour;
}

std::string SmallestId(const Instance& inst, const std::vector<int>& nodes) {
  std::string best = inst.locations[nodes.front()].id;
  for (int v : nodes) best = std::min(best, inst.locations[v].id);
  return best;
}

}  // namespace

DblpEncoding::DblpEncoding(int num_locations, int num_populations,
                           bool coverage_vars)
    : num_locations_(num_locations),
      num_populations_(num_populations),
      coverage_vars_(coverage_vars),
      num_edges_(num_locations * (num_locations - 1) / 2) {
  edges_.reserve(num_edges_);
  for (int i = 0; i < num_locations; ++i) {
    for (int j = i + 1; j < num_locations; ++j) edges_.emplace_back(i, j);
  }
  num_vars_ = num_edges_ + num_locations_ +
              (coverage_vars_ ? num_populations_ : 0);
}

int DblpEncoding::EdgeVar(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= num_locations_ ||
      j >= num_locations_) {
    throw std::out_of_range("no edge variable for this pair");
  }
  if (i > j) std::swap(i, j);
  // Offset of row i in the upper triangle, then the column within it.
  return i * (2 * num_locations_ - i - 1) / 2 + (j - i - 1);
}

EncodedProgram Encode(const Instance& inst, const SolveOptions& options) {
  const int n = inst.num_locations();
  const int m = inst.num_populations();
  const bool maxcov = MaximizingCoverage(options);
  EncodedProgram out{DblpEncoding(n, m, maxcov), {}, 0, 0};
  const DblpEncoding& enc = out.encoding;
  bip::BinaryProgram& bp = out.program;

  CheckReachable(inst, options);

  bp.num_vars = enc.num_vars();
  bp.objective.assign(bp.num_vars, 0.0);
  if (maxcov) {
    for (int w = 0; w < m; ++w) {
      bp.objective[enc.CoverageVar(w)] = -inst.populations[w].weight;
    }
  } else {
    for (int e = 0; e < enc.num_edges(); ++e) {
      const auto [i, j] = enc.EdgeEnds(e);
      bp.objective[e] = inst.edge_costs(i, j);
    }
    for (int j = 0; j < n; ++j) {
      bp.objective[enc.SelectVar(j)] = inst.locations[j].fixed_cost;
    }
  }

  // Access rows, divided through by v0 + v1:
  //   sum_j a_jw (1 - r) / (v0 + v1) y_j >= r - v1 / (v0 + v1).
  if (options.r > 0.0) {
    std::vector<char> dropped(m, 0);
    if (options.dominance_filter) {
      for (int w : DominanceFilter(inst)) dropped[w] = 1;
    }
    for (int w = 0; w < m; ++w) {
      const AccessParams& ap = inst.populations[w].access;
      const double total = ap.v0 + ap.v1;
      const double rhs = options.r - ap.v1 / total;
      if (rhs <= 0.0) continue;
      if (dropped[w]) {
        ++out.access_rows_filtered;
        continue;
      }
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j) {
        if (ap.a[j] > 0.0) {
          terms.emplace_back(enc.SelectVar(j), ap.a[j] * (1.0 - options.r) / total);
        }
      }
      bp.rows.push_back(LinearRow::Make(std::move(terms),
                                        Sense::kGreaterEqual, rhs));
      ++out.access_rows;
    }
  }

  // Coverage rows; identical covering sets need only one row.
  const int coverage = RequiredCoverage(inst, options);
  if (coverage > 0) {
    std::set<std::vector<int>> seen;
    for (const VoterPopulation& pop : inst.populations) {
      if (!seen.insert(pop.covering_set).second) continue;
      std::vector<std::pair<int, double>> terms;
      for (int j : pop.covering_set) terms.emplace_back(enc.SelectVar(j), 1.0);
      bp.rows.push_back(LinearRow::Make(std::move(terms),
                                        Sense::kGreaterEqual, coverage));
    }
  }

  for (int t : inst.Required()) {
    bp.rows.push_back(
        LinearRow::Make({{enc.SelectVar(t), 1.0}}, Sense::kEqual, 1.0));
  }

  // Degree rows: every selected location has exactly two tour edges.
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i) {
      if (i != j) terms.emplace_back(enc.EdgeVar(i, j), 1.0);
    }
    terms.emplace_back(enc.SelectVar(j), -2.0);
    bp.rows.push_back(LinearRow::Make(std::move(terms), Sense::kEqual, 0.0));
  }

  if (maxcov) {
    for (int w = 0; w < m; ++w) {
      std::vector<std::pair<int, double>> terms;
      terms.emplace_back(enc.CoverageVar(w), static_cast<double>(inst.q));
      for (int j : inst.populations[w].covering_set) {
        terms.emplace_back(enc.SelectVar(j), -1.0);
      }
      bp.rows.push_back(LinearRow::Make(std::move(terms), Sense::kLessEqual, 0.0));
    }
  }

  auto tour_terms = [&] {
    std::vector<std::pair<int, double>> terms;
    for (int e = 0; e < enc.num_edges(); ++e) {
      const auto [i, j] = enc.EdgeEnds(e);
      terms.emplace_back(e, inst.edge_costs(i, j));
    }
    return terms;
  };
  if (options.budget) {
    std::vector<std::pair<int, double>> terms = tour_terms();
    for (int j = 0; j < n; ++j) {
      terms.emplace_back(enc.SelectVar(j), inst.locations[j].fixed_cost);
    }
    bp.rows.push_back(LinearRow::Make(std::move(terms), Sense::kLessEqual,
                                      *options.budget));
  }
  if (options.tour_cost_cap) {
    bp.rows.push_back(LinearRow::Make(tour_terms(), Sense::kLessEqual,
                                      *options.tour_cost_cap));
  }
  if (options.fixed_count) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) terms.emplace_back(enc.SelectVar(j), 1.0);
    bp.rows.push_back(LinearRow::Make(std::move(terms), Sense::kEqual,
                                      *options.fixed_count));
  }

  // Decide locations before edges.
  bp.branch_priority.assign(bp.num_vars, 0);
  for (int j = 0; j < n; ++j) bp.branch_priority[enc.SelectVar(j)] = 1;

  bp.lazy_separator = [&inst, enc](std::span<const std::uint8_t> assignment) {
    return SeparateSubtours(inst, enc, assignment);
  };
  bp.fractional_separator = [&inst, enc](std::span<const double> values) {
    return SeparateFractionalSubtours(inst, enc, values);
  };
  return out;
}

std::vector<std::vector<int>> FindSubtours(
    const Instance& inst, const DblpEncoding& encoding,
    std::span<const std::uint8_t> assignment) {
  const int n = inst.num_locations();
  std::vector<std::vector<int>> adjacent(n);
  for (int e = 0; e < encoding.num_edges(); ++e) {
    if (!assignment[e]) continue;
    const auto [i, j] = encoding.EdgeEnds(e);
    adjacent[i].push_back(j);
    adjacent[j].push_back(i);
  }
  std::vector<char> visited(n, 0);
  std::vector<std::vector<int>> cycles;
  for (int root = 0; root < n; ++root) {
    if (visited[root]) continue;
    if (!assignment[encoding.SelectVar(root)] && adjacent[root].empty()) continue;
    std::vector<int> component;
    std::vector<int> stack{root};
    visited[root] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (int u : adjacent[v]) {
        if (!visited[u]) {
          visited[u] = 1;
          stack.push_back(u);
        }
      }
    }
    std::sort(component.begin(), component.end());
    cycles.push_back(std::move(component));
  }
  std::stable_sort(cycles.begin(), cycles.end(),
                   [&](const auto& a, const auto& b) {
                     return SmallestId(inst, a) < SmallestId(inst, b);
                   });
  return cycles;
}

std::vector<LinearRow> SeparateSubtours(
    const Instance& inst, const DblpEncoding& encoding,
    std::span<const std::uint8_t> assignment) {
  const int n = inst.num_locations();
  const std::vector<int> required = inst.Required();
  for (const std::vector<int>& cycle : FindSubtours(inst, encoding, assignment)) {
    std::vector<char> inside(n, 0);
    for (int v : cycle) inside[v] = 1;
    const bool misses_required = std::any_of(
        required.begin(), required.end(), [&](int t) { return !inside[t]; });
    if (!misses_required) continue;

    std::vector<std::pair<int, double>> cut;
    for (int i : cycle) {
      for (int j = 0; j < n; ++j) {
        if (!inside[j]) cut.emplace_back(encoding.EdgeVar(i, j), 1.0);
      }
    }
    std::vector<LinearRow> rows;
    rows.reserve(cycle.size());
    for (int t : cycle) {
      std::vector<std::pair<int, double>> terms = cut;
      terms.emplace_back(encoding.SelectVar(t), -2.0);
      rows.push_back(LinearRow::Make(std::move(terms), Sense::kGreaterEqual, 0.0));
    }
    return rows;
  }
  return {};
}

std::vector<LinearRow> SeparateFractionalSubtours(
    const Instance& inst, const DblpEncoding& encoding,
    std::span<const double> values) {
  constexpr double kMargin = 1e-3;
  const int n = inst.num_locations();
  std::vector<double> capacity(static_cast<std::size_t>(n) * n, 0.0);
  for (int e = 0; e < encoding.num_edges(); ++e) {
    if (values[e] <= 1e-9) continue;
    const auto [i, j] = encoding.EdgeEnds(e);
    capacity[i * n + j] = capacity[j * n + i] = values[e];
  }
  auto y = [&](int j) { return values[encoding.SelectVar(j)]; };

  std::vector<LinearRow> rows;
  std::set<std::vector<int>> emitted;
  std::vector<double> residual;
  std::vector<int> parent(n);
  std::vector<char> reach(n);
  for (int t = 0; t < n; ++t) {
    if (t == inst.start || y(t) <= kMargin) continue;
    residual = capacity;
    // Augmenting paths, stopping once the flow reaches 2 y_t.
    double flow = 0.0;
    const double target = 2.0 * y(t) - kMargin;
    while (flow < target) {
      std::fill(parent.begin(), parent.end(), -1);
      parent[inst.start] = inst.start;
      std::vector<int> queue{inst.start};
      for (std::size_t h = 0; h < queue.size() && parent[t] < 0; ++h) {
        const int u = queue[h];
        for (int v = 0; v < n; ++v) {
          if (parent[v] < 0 && residual[u * n + v] > 1e-9) {
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[t] < 0) break;
      double push = std::numeric_limits<double>::infinity();
      for (int v = t; v != inst.start; v = parent[v]) {
        push = std::min(push, residual[parent[v] * n + v]);
      }
      for (int v = t; v != inst.start; v = parent[v]) {
        residual[parent[v] * n + v] -= push;
        residual[v * n + parent[v]] += push;
      }
      flow += push;
    }
    if (flow >= target) continue;

    // The t side: everything the start can no longer reach.
    std::fill(reach.begin(), reach.end(), 0);
    std::vector<int> stack{inst.start};
    reach[inst.start] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (!reach[v] && residual[u * n + v] > 1e-9) {
          reach[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::vector<int> side;
    for (int v = 0; v < n; ++v) {
      if (!reach[v]) side.push_back(v);
    }
    std::vector<std::pair<int, double>> cut;
    for (int i : side) {
      for (int j = 0; j < n; ++j) {
        if (!reach[j]) continue;
        cut.emplace_back(encoding.EdgeVar(i, j), 1.0);
      }
    }
    // One row per side, for its member with the largest y.
    int strongest = t;
    for (int u : side) {
      if (y(u) > y(strongest)) strongest = u;
    }
    if (!emitted.insert(side).second) continue;
    cut.emplace_back(encoding.SelectVar(strongest), -2.0);
    rows.push_back(LinearRow::Make(std::move(cut), Sense::kGreaterEqual, 0.0));
  }
  return rows;
}

Solution SolveExact(const Instance& inst, const SolveOptions& options,
                    ExactStats* stats) {
  const int n = inst.num_locations();
  const int coverage = RequiredCoverage(inst, options);
  for (const VoterPopulation& pop : inst.populations) {
    if (static_cast<int>(pop.covering_set.size()) < coverage) {
      throw InfeasibleError("population '" + pop.id + "' has fewer than " +
                                std::to_string(coverage) +
                                " covering locations",
                            pop.id);
    }
  }
  for (const std::string& diag : ValidateInstance(inst)) {
    if (diag.find("covering locations but q") != std::string::npos) continue;
    throw std::invalid_argument("invalid instance: " + diag);
  }
  CheckReachable(inst, options);

  ExactStats local;
  ExactStats& st = stats ? *stats : local;
  st = ExactStats{};

  std::optional<Solution> best;
  double best_objective = std::numeric_limits<double>::infinity();
  auto consider = [&](Solution sol) {
    if (!ValidateSolution(inst, options, sol).empty()) return;
    const double objective = ObjectiveOf(inst, options, sol);
    if (objective < best_objective - 1e-9) {
      best_objective = objective;
      best = std::move(sol);
    }
  };

  // One or two locations: the tour is trivial and the program excludes it.
  const std::vector<int> required = inst.Required();
  if (required.size() == 1) {
    ++st.small_selections_checked;
    consider(MakeSolution(inst, {inst.start}));
    for (int j = 0; j < n; ++j) {
      if (j == inst.start) continue;
      ++st.small_selections_checked;
      consider(MakeSolution(inst, {inst.start, j}));
    }
  } else if (required.size() == 2) {
    ++st.small_selections_checked;
    const int other = required[0] == inst.start ? required[1] : required[0];
    consider(MakeSolution(inst, {inst.start, other}));
  }

  const bool program_possible =
      n >= 3 && (!options.fixed_count || *options.fixed_count >= 3);
  if (program_possible) {
    EncodedProgram encoded = Encode(inst, options);
    const bip::SolveResult result = bip::Solve(encoded.program, options.node_limit);
    st.nodes_explored = result.nodes_explored;
    st.lazy_rows_added = result.lazy_rows_added;
    st.cut_rows_added = result.cut_rows_added;
    if (result.status == bip::SolveStatus::kNodeLimit) {
      throw std::runtime_error("node limit reached before proving optimality");
    }
    if (result.status == bip::SolveStatus::kOptimal) {
      consider(MakeSolution(
          inst, TourFromAssignment(inst, encoded.encoding, *result.assignment)));
    }
  }

  if (!best) {
    throw InfeasibleError("no selection of locations satisfies the constraints",
                          "");
  }
  return *std::move(best);
}

std::vector<std::string> ValidateSolution(const Instance& inst,
                                          const SolveOptions& options,
                                          const Solution& sol) {
  std::vector<std::string> diags;
  const int n = inst.num_locations();

  std::vector<char> chosen(n, 0);
  for (int j : sol.selected) {
    if (j < 0 || j >= n) {
      diags.push_back("selected set references an unknown location");
      return diags;
    }
    if (chosen[j]) diags.push_back("location '" + inst.locations[j].id +
                                   "' selected twice");
    chosen[j] = 1;
  }
  for (int t : inst.Required()) {
    if (!chosen[t]) {
      diags.push_back("required location '" + inst.locations[t].id +
                      "' is not selected");
    }
  }

  // Tour: starts at s and visits exactly the selected set once each.
  if (sol.tour.empty() || sol.tour.front() != inst.start) {
    diags.push_back("tour does not start at the start location");
  }
  std::vector<int> visits(n, 0);
  for (int v : sol.tour) {
    if (v < 0 || v >= n) {
      diags.push_back("tour references an unknown location");
      return diags;
    }
    ++visits[v];
  }
  for (int j = 0; j < n; ++j) {
    if (visits[j] > 1) {
      diags.push_back("tour visits '" + inst.locations[j].id + "' more than once");
    } else if (visits[j] == 1 && !chosen[j]) {
      diags.push_back("tour visits unselected location '" +
                      inst.locations[j].id + "'");
    } else if (visits[j] == 0 && chosen[j]) {
      diags.push_back("tour is not a single cycle over the selected set: '" +
                      inst.locations[j].id + "' is not on it");
    }
  }

  const int coverage = RequiredCoverage(inst, options);
  const std::vector<int> counts = CoverageCounts(inst, sol.selected);
  for (int w = 0; w < inst.num_populations(); ++w) {
    if (counts[w] < coverage) {
      std::ostringstream msg;
      msg << "population '" << inst.populations[w].id << "' covered "
          << counts[w] << " times, needs " << coverage;
      diags.push_back(msg.str());
    }
  }

  if (static_cast<int>(sol.access_by_population.size()) !=
      inst.num_populations()) {
    diags.push_back("access values do not match the population count");
  } else {
    double min_access = 1.0;
    for (int w = 0; w < inst.num_populations(); ++w) {
      const double actual = AccessValue(inst.populations[w], sol.selected);
      min_access = std::min(min_access, actual);
      if (std::abs(actual - sol.access_by_population[w]) > 1e-9) {
        diags.push_back("reported access for '" + inst.populations[w].id +
                        "' does not match the selection");
      }
      if (actual < options.r - kAccessTolerance) {
        std::ostringstream msg;
        msg << "population '" << inst.populations[w].id << "' has access "
            << actual << " below r = " << options.r;
        diags.push_back(msg.str());
      }
    }
    if (std::abs(min_access - sol.min_access) > 1e-9) {
      diags.push_back("reported minimum access does not match");
    }
  }

  double fixed = 0.0;
  for (int j : sol.selected) fixed += inst.locations[j].fixed_cost;
  const double operational = TourCost(inst.edge_costs, sol.tour);
  if (std::abs(fixed - sol.fixed_cost) > kMoneyTolerance) {
    diags.push_back("fixed cost does not match the selection");
  }
  if (std::abs(operational - sol.operational_cost) > kMoneyTolerance) {
    diags.push_back("operational cost does not match the tour");
  }
  if (std::abs(sol.fixed_cost + sol.operational_cost - sol.total_cost) >
      kMoneyTolerance) {
    diags.push_back("total cost is not fixed plus operational cost");
  }

  if (options.budget && fixed + operational > *options.budget + kMoneyTolerance) {
    diags.push_back("total cost exceeds the budget");
  }
  if (options.tour_cost_cap &&
      operational > *options.tour_cost_cap + kMoneyTolerance) {
    diags.push_back("tour cost exceeds the cap");
  }
  if (options.fixed_count &&
      static_cast<int>(sol.selected.size()) != *options.fixed_count) {
    diags.push_back("selected count differs from the required count");
  }
  return diags;
}

}  // namespace dblp
