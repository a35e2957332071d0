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

// A small exact solver for minimization problems over binary variables with
// lazily separated rows.
//
// The search is best-first branch and bound on the linear relaxation (ties in
// bound are taken in creation order), branching on the most fractional
// variable of the highest branching priority present. Whenever a relaxation
// comes back integral the separator is asked for violated rows; any rows it
// returns are appended to the program for the rest of the search and the node
// is solved again. A candidate becomes the incumbent only once the separator
// has nothing more to say about it. An optional second separator may tighten
// the root relaxation for a bounded number of rounds before the first
// branching.

#ifndef DBLP_BIP_H_
#define DBLP_BIP_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dblp::bip {

inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kFeasibilityTolerance = 1e-6;

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LinearRow {
  // (variable index, coefficient), indices strictly increasing, no zeros.
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  // Sorts by index, merges duplicates and drops zero coefficients.
  static LinearRow Make(std::vector<std::pair<int, double>> terms, Sense sense,
                        double rhs);
  double Activity(std::span<const std::uint8_t> assignment) const;
  bool SatisfiedBy(std::span<const std::uint8_t> assignment,
                   double tolerance = kFeasibilityTolerance) const;
};

// Receives an integral assignment and returns rows it violates (or nothing).
// Called from the solving thread only.
using LazySeparator =
    std::function<std::vector<LinearRow>(std::span<const std::uint8_t>)>;

// Receives a fractional relaxation solution and returns rows it violates.
// Every returned row must hold for all feasible integral assignments; the
// rows only tighten the relaxation.
using FractionalSeparator =
    std::function<std::vector<LinearRow>(std::span<const double>)>;

struct BinaryProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  LazySeparator lazy_separator;
  FractionalSeparator fractional_separator;  // optional
  // Optional, one entry per variable. Branching picks the most fractional
  // variable among those of highest priority; empty means all equal.
  std::vector<int> branch_priority;
};

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit };

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Present when optimal; on a node limit holds the best incumbent, if any.
  std::optional<std::vector<std::uint8_t>> assignment;
  std::optional<double> objective_value;
  std::int64_t nodes_explored = 0;
  std::int64_t lazy_rows_added = 0;
  std::int64_t cut_rows_added = 0;  // from the fractional separator
};

// Throws std::invalid_argument if a row references a variable >= num_vars or
// the objective has the wrong length.
SolveResult Solve(const BinaryProgram& bp,
                  std::optional<std::int64_t> node_limit = std::nullopt);

// Lower bound on the best completion of a partial assignment: entries of
// `fixed` are 0, 1 or -1 (free). Uses the linear relaxation, falling back to
// the sum of the fixed costs and the negative free costs if the relaxation
// does not converge. Returns +infinity when the relaxation is infeasible.
double RelaxBound(const BinaryProgram& bp, std::span<const std::int8_t> fixed);

}  // namespace dblp::bip

#endif  // DBLP_BIP_H_
