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

// Exact solution of the drop box location problem.
//
// The instance is written as a binary program over edge variables x_ij (one
// per unordered location pair), selection variables y_j and, when maximizing
// coverage, indicators delta_w. Degree rows tie x to y; the exponential family
// of connectivity rows
//
//   sum_{e in cut(S)} x_e >= 2 y_t,   t in S, T \ S nonempty
//
// is left out and supplied by SeparateSubtours whenever the branch and bound
// finds an integral candidate. SeparateFractionalSubtours also offers rows of
// the same family to tighten fractional relaxations. The program only admits
// tours over three or more locations; selections of one or two locations are
// enumerated directly by SolveExact.

#ifndef DBLP_EXACT_H_
#define DBLP_EXACT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dblp/bip.h"
#include "dblp/model.h"

namespace dblp {

// Maps model symbols to program variable indices. Edge variables come first
// in (i, j), i < j order, then one selection variable per location, then one
// coverage indicator per population when maximizing coverage.
class DblpEncoding {
 public:
  DblpEncoding(int num_locations, int num_populations, bool coverage_vars);

  int num_locations() const { return num_locations_; }
  int num_edges() const { return num_edges_; }
  int num_vars() const { return num_vars_; }
  bool has_coverage_vars() const { return coverage_vars_; }

  int EdgeVar(int i, int j) const;
  int SelectVar(int j) const { return num_edges_ + j; }
  // Only valid when has_coverage_vars().
  int CoverageVar(int w) const { return num_edges_ + num_locations_ + w; }
  std::pair<int, int> EdgeEnds(int var) const { return edges_[var]; }

 private:
  int num_locations_;
  int num_populations_;
  bool coverage_vars_;
  int num_edges_;
  int num_vars_;
  std::vector<std::pair<int, int>> edges_;
};

struct EncodedProgram {
  DblpEncoding encoding;
  bip::BinaryProgram program;
  int access_rows = 0;
  int access_rows_filtered = 0;  // dropped by the dominance filter
};

// Builds the program for `inst` under `options`, with the connectivity
// separator attached. Throws InfeasibleError naming the population if some
// access bound cannot be met even with every location selected.
EncodedProgram Encode(const Instance& inst, const SolveOptions& options);

// Vertex sets of the cycles formed by the edges set in `assignment`, plus one
// singleton per selected location with no incident edge. Sorted by the
// smallest location id (string order) each contains.
std::vector<std::vector<int>> FindSubtours(const Instance& inst,
                                           const DblpEncoding& encoding,
                                           std::span<const std::uint8_t> assignment);

// For the first subtour missing part of T, one row per member t:
//   sum_{e in cut(S)} x_e - 2 y_t >= 0.
// Empty when no connectivity row is violated.
std::vector<bip::LinearRow> SeparateSubtours(
    const Instance& inst, const DblpEncoding& encoding,
    std::span<const std::uint8_t> assignment);

// Connectivity rows violated by a fractional relaxation point: for each
// location t with y_t > 0, a minimum cut between the start and t of value
// below 2 y_t (less a small margin) yields one row for the t side S of the
// cut, written for the member of S with the largest y.
std::vector<bip::LinearRow> SeparateFractionalSubtours(
    const Instance& inst, const DblpEncoding& encoding,
    std::span<const double> values);

struct ExactStats {
  std::int64_t nodes_explored = 0;
  std::int64_t lazy_rows_added = 0;
  std::int64_t cut_rows_added = 0;
  int small_selections_checked = 0;
};

// Optimal solution under `options`. Throws InfeasibleError when no selection
// satisfies the constraints and std::runtime_error when a node limit stops the
// search before optimality is proven.
Solution SolveExact(const Instance& inst, const SolveOptions& options,
                    ExactStats* stats = nullptr);

// Checks a solution against the instance and every active constraint.
std::vector<std::string> ValidateSolution(const Instance& inst,
                                          const SolveOptions& options,
                                          const Solution& sol);

}  // namespace dblp

#endif  // DBLP_EXACT_H_
