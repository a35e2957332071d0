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

#include "lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dblp::internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-8;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;
constexpr int kRefactorInterval = 64;

}  // namespace

DualSimplex::DualSimplex(std::vector<double> cost)
    : num_cols_(static_cast<int>(cost.size())),
      cost_(std::move(cost)),
      columns_(num_cols_),
      lo_(num_cols_, 0.0),
      hi_(num_cols_, 1.0),
      state_(num_cols_, VarState::kAtLower),
      value_(num_cols_, 0.0),
      reduced_(num_cols_, 0.0),
      basis_pos_(num_cols_, -1) {
  for (int j = 0; j < num_cols_; ++j) reduced_[j] = cost_[j];
}

void DualSimplex::AddRow(std::span<const std::pair<int, double>> terms,
                         double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) {
    throw std::invalid_argument("free rows are not supported");
  }
  const int row = num_rows_;
  const int m = num_rows_;
  const int var = num_vars();

  // Coefficients of the new row on the current basic variables; logical
  // variables of older rows do not appear in it.
  std::vector<double> on_basis(m, 0.0);
  double activity = 0.0;
  for (const auto& [col, coef] : terms) {
    if (col < 0 || col >= num_cols_) {
      throw std::out_of_range("row references an unknown column");
    }
    columns_[col].emplace_back(row, coef);
    activity += coef * value_[col];
    if (basis_pos_[col] >= 0) on_basis[basis_pos_[col]] += coef;
  }

  // Grow the inverse: [B^-1 0; c_B' B^-1  -1].
  std::vector<double> grown(static_cast<size_t>(m + 1) * (m + 1), 0.0);
  for (int i = 0; i < m; ++i) {
    std::copy(binv_.begin() + static_cast<ptrdiff_t>(i) * m,
              binv_.begin() + static_cast<ptrdiff_t>(i + 1) * m,
              grown.begin() + static_cast<ptrdiff_t>(i) * (m + 1));
  }
  double* last = grown.data() + static_cast<size_t>(m) * (m + 1);
  for (int p = 0; p < m; ++p) {
    const double c = on_basis[p];
    if (c == 0.0) continue;
    const double* src = binv_.data() + static_cast<size_t>(p) * m;
    for (int k = 0; k < m; ++k) last[k] += c * src[k];
  }
  last[m] = -1.0;
  binv_ = std::move(grown);

  ++num_rows_;
  lo_.push_back(lo);
  hi_.push_back(hi);
  state_.push_back(VarState::kBasic);
  value_.push_back(activity);
  reduced_.push_back(0.0);
  basis_.push_back(var);
  basis_pos_.push_back(row);
  rho_.resize(num_rows_);
  alpha_col_.resize(num_rows_);
}

std::vector<std::uint8_t> DualSimplex::SaveBasis() const {
  std::vector<std::uint8_t> out(state_.size());
  for (std::size_t v = 0; v < state_.size(); ++v) {
    out[v] = static_cast<std::uint8_t>(state_[v]);
  }
  return out;
}

void DualSimplex::RestoreBasis(std::span<const std::uint8_t> saved) {
  const int total = num_vars();
  if (static_cast<int>(saved.size()) > total) {
    throw std::invalid_argument("basis snapshot has too many entries");
  }
  int basics = 0;
  for (int v = 0; v < total; ++v) {
    state_[v] = v < static_cast<int>(saved.size())
                    ? static_cast<VarState>(saved[v])
                    : VarState::kBasic;
    basics += state_[v] == VarState::kBasic;
  }
  if (basics != num_rows_) {
    ResetToSlackBasis();
    return;
  }
  int p = 0;
  for (int v = 0; v < total; ++v) {
    if (state_[v] == VarState::kBasic) {
      basis_[p] = v;
      basis_pos_[v] = p++;
    } else {
      basis_pos_[v] = -1;
    }
  }
  needs_refactor_ = true;
}

void DualSimplex::SetColumnBounds(int col, double lo, double hi) {
  lo_[col] = lo;
  hi_[col] = hi;
}

double DualSimplex::objective() const {
  double total = 0.0;
  for (int j = 0; j < num_cols_; ++j) total += cost_[j] * value_[j];
  return total;
}

std::vector<double> DualSimplex::ColumnValues() const {
  return {value_.begin(), value_.begin() + num_cols_};
}

void DualSimplex::BasisColumn(int var, std::vector<double>& out) const {
  const int m = num_rows_;
  std::fill(out.begin(), out.end(), 0.0);
  if (IsStructural(var)) {
    for (const auto& [row, coef] : columns_[var]) {
      for (int p = 0; p < m; ++p) {
        out[p] += coef * binv_[static_cast<size_t>(p) * m + row];
      }
    }
  } else {
    const int row = var - num_cols_;
    for (int p = 0; p < m; ++p) {
      out[p] = -binv_[static_cast<size_t>(p) * m + row];
    }
  }
}

bool DualSimplex::Refactor() {
  const int m = num_rows_;
  pivots_since_refactor_ = 0;
  needs_refactor_ = false;
  if (m == 0) return true;

  // Most basic variables are logicals, whose columns are -e_i. Ordering the
  // rows with a basic logical last, B = [B_SS 0; B_LS -I], so only the square
  // block B_SS of structural columns on the remaining rows needs inverting:
  //   B^-1 = [B_SS^-1 0; B_LS B_SS^-1 -I].
  std::vector<int> structural_pos;
  std::vector<int> free_rows;  // rows whose logical is nonbasic
  std::vector<int> block_index(m, -1);
  for (int p = 0; p < m; ++p) {
    if (IsStructural(basis_[p])) structural_pos.push_back(p);
  }
  for (int i = 0; i < m; ++i) {
    if (state_[num_cols_ + i] != VarState::kBasic) {
      block_index[i] = static_cast<int>(free_rows.size());
      free_rows.push_back(i);
    }
  }
  const int k = static_cast<int>(structural_pos.size());
  if (static_cast<int>(free_rows.size()) != k) return false;

  std::vector<double> mat(static_cast<size_t>(k) * k, 0.0);
  for (int b = 0; b < k; ++b) {
    for (const auto& [row, coef] : columns_[basis_[structural_pos[b]]]) {
      if (block_index[row] >= 0) {
        mat[static_cast<size_t>(block_index[row]) * k + b] += coef;
      }
    }
  }
  std::vector<double> inv(static_cast<size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) inv[static_cast<size_t>(i) * k + i] = 1.0;

  // Gauss-Jordan; pivot_row[c] is the row that ends up holding the unit
  // entry of column c.
  std::vector<int> pivot_row(k, -1);
  std::vector<char> used(k, 0);
  for (int c = 0; c < k; ++c) {
    int best = -1;
    double best_abs = kSingularTol;
    for (int i = 0; i < k; ++i) {
      if (used[i]) continue;
      const double v = std::abs(mat[static_cast<size_t>(i) * k + c]);
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (best < 0) return false;
    used[best] = 1;
    pivot_row[c] = best;
    double* prow = mat.data() + static_cast<size_t>(best) * k;
    double* pinv = inv.data() + static_cast<size_t>(best) * k;
    const double scale = 1.0 / prow[c];
    std::vector<int> nz;
    for (int j = 0; j < k; ++j) {
      prow[j] *= scale;
      pinv[j] *= scale;
      if (pinv[j] != 0.0) nz.push_back(j);
    }
    for (int i = 0; i < k; ++i) {
      if (i == best) continue;
      double* row = mat.data() + static_cast<size_t>(i) * k;
      const double f = row[c];
      if (f == 0.0) continue;
      double* irow = inv.data() + static_cast<size_t>(i) * k;
      for (int j = c; j < k; ++j) row[j] -= f * prow[j];
      for (int j : nz) irow[j] -= f * pinv[j];
    }
  }

  binv_.assign(static_cast<size_t>(m) * m, 0.0);
  for (int b = 0; b < k; ++b) {
    const double* src = inv.data() + static_cast<size_t>(pivot_row[b]) * k;
    double* dst = binv_.data() + static_cast<size_t>(structural_pos[b]) * m;
    for (int a = 0; a < k; ++a) dst[free_rows[a]] = src[a];
  }
  for (int i = 0; i < m; ++i) {
    if (block_index[i] < 0) {
      binv_[static_cast<size_t>(basis_pos_[num_cols_ + i]) * m + i] = -1.0;
    }
  }
  for (int b = 0; b < k; ++b) {
    const double* src = inv.data() + static_cast<size_t>(pivot_row[b]) * k;
    for (const auto& [row, coef] : columns_[basis_[structural_pos[b]]]) {
      if (block_index[row] >= 0) continue;
      double* dst =
          binv_.data() + static_cast<size_t>(basis_pos_[num_cols_ + row]) * m;
      for (int a = 0; a < k; ++a) dst[free_rows[a]] += coef * src[a];
    }
  }
  return true;
}

void DualSimplex::ResetToSlackBasis() {
  const int m = num_rows_;
  for (int j = 0; j < num_cols_; ++j) {
    state_[j] = VarState::kAtLower;
    basis_pos_[j] = -1;
  }
  for (int i = 0; i < m; ++i) {
    const int var = num_cols_ + i;
    basis_[i] = var;
    basis_pos_[var] = i;
    state_[var] = VarState::kBasic;
  }
  binv_.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv_[static_cast<size_t>(i) * m + i] = -1.0;
  pivots_since_refactor_ = 0;
  needs_refactor_ = false;
}

void DualSimplex::ComputeDuals() {
  const int m = num_rows_;
  std::vector<double> y(m, 0.0);
  for (int p = 0; p < m; ++p) {
    const int var = basis_[p];
    if (!IsStructural(var)) continue;
    const double c = cost_[var];
    if (c == 0.0) continue;
    const double* row = binv_.data() + static_cast<size_t>(p) * m;
    for (int k = 0; k < m; ++k) y[k] += c * row[k];
  }
  for (int j = 0; j < num_cols_; ++j) {
    if (state_[j] == VarState::kBasic) {
      reduced_[j] = 0.0;
      continue;
    }
    double d = cost_[j];
    for (const auto& [row, coef] : columns_[j]) d -= y[row] * coef;
    reduced_[j] = d;
  }
  for (int i = 0; i < m; ++i) {
    const int var = num_cols_ + i;
    reduced_[var] = state_[var] == VarState::kBasic ? 0.0 : y[i];
  }
}

void DualSimplex::ParkNonbasic() {
  for (int j = 0; j < num_cols_; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    if (reduced_[j] < -kDualTol) {
      state_[j] = VarState::kAtUpper;
    } else if (reduced_[j] > kDualTol) {
      state_[j] = VarState::kAtLower;
    }
    value_[j] = state_[j] == VarState::kAtUpper ? hi_[j] : lo_[j];
  }
  for (int i = 0; i < num_rows_; ++i) {
    const int var = num_cols_ + i;
    if (state_[var] == VarState::kBasic) continue;
    if (std::isinf(lo_[var])) state_[var] = VarState::kAtUpper;
    if (std::isinf(hi_[var])) state_[var] = VarState::kAtLower;
    value_[var] = state_[var] == VarState::kAtUpper ? hi_[var] : lo_[var];
  }
}

void DualSimplex::ComputePrimal() {
  const int m = num_rows_;
  std::vector<double> r(m, 0.0);
  for (int j = 0; j < num_cols_; ++j) {
    if (state_[j] == VarState::kBasic || value_[j] == 0.0) continue;
    for (const auto& [row, coef] : columns_[j]) r[row] += coef * value_[j];
  }
  for (int i = 0; i < m; ++i) {
    const int var = num_cols_ + i;
    if (state_[var] != VarState::kBasic) r[i] -= value_[var];
  }
  for (int p = 0; p < m; ++p) {
    const double* row = binv_.data() + static_cast<size_t>(p) * m;
    double v = 0.0;
    for (int k = 0; k < m; ++k) v += row[k] * r[k];
    value_[basis_[p]] = -v;
  }
}

LpStatus DualSimplex::Solve(std::int64_t iteration_limit) {
  const int m = num_rows_;
  const int total = num_vars();

  auto restart = [&](bool force_slack) {
    if (force_slack) {
      ResetToSlackBasis();
    } else if ((needs_refactor_ || pivots_since_refactor_ > 0) && !Refactor()) {
      ResetToSlackBasis();
    }
    ComputeDuals();
    // Nonbasic logicals with the wrong reduced-cost sign cannot be parked on
    // the other side; fall back to the all-logical basis, which is always
    // dual feasible here.
    for (int i = 0; i < m; ++i) {
      const int var = num_cols_ + i;
      if (state_[var] == VarState::kBasic || lo_[var] == hi_[var]) continue;
      const bool bad = (std::isinf(hi_[var]) && reduced_[var] < -1e-7) ||
                       (std::isinf(lo_[var]) && reduced_[var] > 1e-7);
      if (bad) {
        ResetToSlackBasis();
        ComputeDuals();
        break;
      }
    }
    ParkNonbasic();
    ComputePrimal();
  };

  if (pivots_since_refactor_ >= kRefactorInterval || needs_refactor_) {
    restart(false);
  } else {
    ComputeDuals();
    ParkNonbasic();
    ComputePrimal();
  }
  alpha_row_.assign(total, 0.0);

  for (std::int64_t iter = 0;; ++iter) {
    if (pivots_since_refactor_ >= kRefactorInterval || needs_refactor_) {
      restart(false);
    }

    // Leaving row: largest bound violation among basic variables.
    int leave = -1;
    double worst = kPrimalTol;
    bool to_lower = false;
    for (int p = 0; p < m; ++p) {
      const int var = basis_[p];
      const double v = value_[var];
      if (v < lo_[var] - kPrimalTol && lo_[var] - v > worst) {
        worst = lo_[var] - v;
        leave = p;
        to_lower = true;
      } else if (v > hi_[var] + kPrimalTol && v - hi_[var] > worst) {
        worst = v - hi_[var];
        leave = p;
        to_lower = false;
      }
    }
    if (leave < 0) {
      if (pivots_since_refactor_ > 0) {
        // Confirm with freshly computed basic values before declaring
        // optimality.
        ComputePrimal();
        bool clean = true;
        for (int p = 0; p < m && clean; ++p) {
          const int var = basis_[p];
          clean = value_[var] >= lo_[var] - kPrimalTol &&
                  value_[var] <= hi_[var] + kPrimalTol;
        }
        if (!clean) continue;
      }
      return LpStatus::kOptimal;
    }
    if (iter >= iteration_limit) return LpStatus::kIterationLimit;

    // Row of the tableau for the leaving position.
    const double* binv_row = binv_.data() + static_cast<size_t>(leave) * m;
    std::copy(binv_row, binv_row + m, rho_.begin());

    // Harris ratio test, pass one: the largest dual step keeping every
    // reduced cost within tolerance.
    double max_step = kInf;
    for (int var = 0; var < total; ++var) {
      if (state_[var] == VarState::kBasic) continue;
      double alpha;
      if (IsStructural(var)) {
        alpha = 0.0;
        for (const auto& [row, coef] : columns_[var]) alpha += rho_[row] * coef;
      } else {
        alpha = -rho_[var - num_cols_];
      }
      alpha_row_[var] = alpha;
      if (lo_[var] == hi_[var]) continue;
      const bool at_lower = state_[var] == VarState::kAtLower;
      const bool eligible = to_lower ? (at_lower ? alpha < -kPivotTol
                                                 : alpha > kPivotTol)
                                     : (at_lower ? alpha > kPivotTol
                                                 : alpha < -kPivotTol);
      if (!eligible) continue;
      const double d = at_lower ? std::max(reduced_[var], 0.0)
                                : std::max(-reduced_[var], 0.0);
      max_step = std::min(max_step, (d + kDualTol) / std::abs(alpha));
    }
    if (std::isinf(max_step)) return LpStatus::kInfeasible;

    // Pass two: among steps within the bound, the largest pivot magnitude.
    int enter = -1;
    double enter_abs = 0.0;
    for (int var = 0; var < total; ++var) {
      if (state_[var] == VarState::kBasic || lo_[var] == hi_[var]) continue;
      const double alpha = alpha_row_[var];
      const bool at_lower = state_[var] == VarState::kAtLower;
      const bool eligible = to_lower ? (at_lower ? alpha < -kPivotTol
                                                 : alpha > kPivotTol)
                                     : (at_lower ? alpha > kPivotTol
                                                 : alpha < -kPivotTol);
      if (!eligible) continue;
      const double d = at_lower ? std::max(reduced_[var], 0.0)
                                : std::max(-reduced_[var], 0.0);
      if (d / std::abs(alpha) <= max_step && std::abs(alpha) > enter_abs) {
        enter_abs = std::abs(alpha);
        enter = var;
      }
    }
    if (enter < 0) return LpStatus::kInfeasible;

    BasisColumn(enter, alpha_col_);
    const double pivot = alpha_col_[leave];
    if (std::abs(pivot) < kPivotTol ||
        std::abs(pivot - alpha_row_[enter]) >
            1e-6 * (1.0 + std::abs(pivot))) {
      // Row and column disagree; the inverse has drifted.
      if (pivots_since_refactor_ == 0) restart(true);
      else needs_refactor_ = true;
      continue;
    }

    // Dual update.
    const double dual_step = reduced_[enter] / pivot;
    for (int var = 0; var < total; ++var) {
      if (state_[var] == VarState::kBasic) continue;
      reduced_[var] -= dual_step * alpha_row_[var];
    }
    const int leaving_var = basis_[leave];
    reduced_[enter] = 0.0;
    reduced_[leaving_var] = -dual_step;

    // Primal update.
    const double bound = to_lower ? lo_[leaving_var] : hi_[leaving_var];
    const double primal_step = (value_[leaving_var] - bound) / pivot;
    for (int p = 0; p < m; ++p) {
      if (alpha_col_[p] != 0.0) value_[basis_[p]] -= primal_step * alpha_col_[p];
    }
    value_[enter] += primal_step;
    value_[leaving_var] = bound;

    // Inverse update: pivot on (leave, enter).
    double* prow = binv_.data() + static_cast<size_t>(leave) * m;
    const double inv_pivot = 1.0 / pivot;
    nonzeros_.clear();
    for (int k = 0; k < m; ++k) {
      prow[k] *= inv_pivot;
      if (prow[k] != 0.0) nonzeros_.push_back(k);
    }
    for (int p = 0; p < m; ++p) {
      if (p == leave) continue;
      const double f = alpha_col_[p];
      if (f == 0.0) continue;
      double* row = binv_.data() + static_cast<size_t>(p) * m;
      for (int k : nonzeros_) row[k] -= f * prow[k];
    }

    state_[leaving_var] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
    basis_pos_[leaving_var] = -1;
    state_[enter] = VarState::kBasic;
    basis_pos_[enter] = leave;
    basis_[leave] = enter;
    ++pivots_since_refactor_;
    ++total_iterations_;
  }
}

}  // namespace dblp::internal
