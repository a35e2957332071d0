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

// Dense dual simplex for linear programs whose structural columns all have
// finite bounds:
//
//   min  c'x   s.t.  row_lo <= A x <= row_hi,   col_lo <= x <= col_hi.
//
// Each row i gets a logical variable s_i = a_i x carrying the row bounds, so
// the equality system is [A  -I] (x, s) = 0. Because every structural column
// is boxed, any basis can be made dual feasible by parking each nonbasic
// structural at the bound matching the sign of its reduced cost. That makes
// warm starts after bound changes (branching) or appended rows (lazy cuts)
// free: the current basis is kept and the dual simplex repairs primal
// feasibility.

#ifndef DBLP_CORE_SRC_LP_H_
#define DBLP_CORE_SRC_LP_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dblp::internal {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

class DualSimplex {
 public:
  explicit DualSimplex(std::vector<double> cost);

  int num_cols() const { return num_cols_; }
  int num_rows() const { return num_rows_; }

  // Terms must reference existing columns. Either bound may be infinite but
  // not both.
  void AddRow(std::span<const std::pair<int, double>> terms, double lo,
              double hi);
  void SetColumnBounds(int col, double lo, double hi);

  LpStatus Solve(std::int64_t iteration_limit);

  // Basis snapshot, one status byte per variable. Restoring a snapshot taken
  // before rows were appended makes the newer rows' logicals basic.
  std::vector<std::uint8_t> SaveBasis() const;
  void RestoreBasis(std::span<const std::uint8_t> saved);

  double objective() const;
  std::vector<double> ColumnValues() const;
  std::int64_t total_iterations() const { return total_iterations_; }

 private:
  enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper };

  int num_vars() const { return num_cols_ + num_rows_; }
  bool IsStructural(int var) const { return var < num_cols_; }

  // Rebuilds the explicit basis inverse. Returns false if the basis is
  // numerically singular.
  bool Refactor();
  void ResetToSlackBasis();
  void ComputePrimal();
  void ComputeDuals();
  void ParkNonbasic();
  // B^{-1} times the column of `var`.
  void BasisColumn(int var, std::vector<double>& out) const;

  int num_cols_ = 0;
  int num_rows_ = 0;
  std::vector<double> cost_;  // structural costs
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> lo_;  // per variable (structural then logical)
  std::vector<double> hi_;
  std::vector<VarState> state_;
  std::vector<double> value_;
  std::vector<double> reduced_;
  std::vector<int> basis_;        // basic variable per row position
  std::vector<int> basis_pos_;    // row position per variable or -1
  std::vector<double> binv_;      // row-major num_rows_ x num_rows_
  int pivots_since_refactor_ = 0;
  bool needs_refactor_ = false;
  std::int64_t total_iterations_ = 0;

  // Scratch.
  std::vector<double> rho_;
  std::vector<double> alpha_row_;
  std::vector<double> alpha_col_;
  std::vector<int> nonzeros_;
};

}  // namespace dblp::internal

#endif  // DBLP_CORE_SRC_LP_H_
