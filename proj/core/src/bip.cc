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

#include "dblp/bip.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

#include "lp.h"

namespace dblp::bip {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRootCutRounds = 100;

using internal::DualSimplex;
using internal::LpStatus;

void CheckProgram(const BinaryProgram& bp) {
  if (bp.num_vars < 0 ||
      static_cast<int>(bp.objective.size()) != bp.num_vars) {
    throw std::invalid_argument("objective length does not match num_vars");
  }
  if (!bp.branch_priority.empty() &&
      static_cast<int>(bp.branch_priority.size()) != bp.num_vars) {
    throw std::invalid_argument("branch_priority length does not match num_vars");
  }
  for (const LinearRow& row : bp.rows) {
    for (const auto& [var, coef] : row.terms) {
      if (var < 0 || var >= bp.num_vars) {
        throw std::invalid_argument("row references variable out of range");
      }
    }
  }
}

void AddToLp(DualSimplex& lp, const LinearRow& row) {
  switch (row.sense) {
    case Sense::kLessEqual:
      lp.AddRow(row.terms, -kInf, row.rhs);
      break;
    case Sense::kGreaterEqual:
      lp.AddRow(row.terms, row.rhs, kInf);
      break;
    case Sense::kEqual:
      lp.AddRow(row.terms, row.rhs, row.rhs);
      break;
  }
}

std::int64_t IterationLimit(const DualSimplex& lp) {
  return 50LL * (lp.num_rows() + lp.num_cols()) + 1000;
}

void ApplyFixings(DualSimplex& lp, std::span<const std::int8_t> fixed) {
  for (int j = 0; j < static_cast<int>(fixed.size()); ++j) {
    switch (fixed[j]) {
      case 0:
        lp.SetColumnBounds(j, 0.0, 0.0);
        break;
      case 1:
        lp.SetColumnBounds(j, 1.0, 1.0);
        break;
      default:
        lp.SetColumnBounds(j, 0.0, 1.0);
        break;
    }
  }
}

double FallbackBound(const BinaryProgram& bp,
                     std::span<const std::int8_t> fixed) {
  double bound = 0.0;
  for (int j = 0; j < bp.num_vars; ++j) {
    if (fixed[j] == 1) {
      bound += bp.objective[j];
    } else if (fixed[j] < 0) {
      bound += std::min(0.0, bp.objective[j]);
    }
  }
  return bound;
}

struct Node {
  std::vector<std::int8_t> fixed;
  double bound = -kInf;
  std::int64_t sequence = 0;
  // Final basis of the parent's relaxation, shared by both children.
  std::shared_ptr<const std::vector<std::uint8_t>> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.sequence > b.sequence;
  }
};

}  // namespace

LinearRow LinearRow::Make(std::vector<std::pair<int, double>> terms,
                          Sense sense, double rhs) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  LinearRow row{.terms = {}, .sense = sense, .rhs = rhs};
  for (const auto& [var, coef] : terms) {
    if (!row.terms.empty() && row.terms.back().first == var) {
      row.terms.back().second += coef;
    } else {
      row.terms.emplace_back(var, coef);
    }
  }
  std::erase_if(row.terms, [](const auto& t) { return t.second == 0.0; });
  return row;
}

double LinearRow::Activity(std::span<const std::uint8_t> assignment) const {
  double total = 0.0;
  for (const auto& [var, coef] : terms) {
    if (assignment[var]) total += coef;
  }
  return total;
}

bool LinearRow::SatisfiedBy(std::span<const std::uint8_t> assignment,
                            double tolerance) const {
  const double lhs = Activity(assignment);
  switch (sense) {
    case Sense::kLessEqual:
      return lhs <= rhs + tolerance;
    case Sense::kGreaterEqual:
      return lhs >= rhs - tolerance;
    case Sense::kEqual:
      return std::abs(lhs - rhs) <= tolerance;
  }
  return false;
}

SolveResult Solve(const BinaryProgram& bp,
                  std::optional<std::int64_t> node_limit) {
  CheckProgram(bp);
  const int n = bp.num_vars;

  DualSimplex lp(bp.objective);
  std::vector<LinearRow> rows = bp.rows;
  for (const LinearRow& row : rows) AddToLp(lp, row);

  SolveResult result;
  double incumbent = kInf;
  std::vector<std::uint8_t> best;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t sequence = 0;
  open.push(Node{std::vector<std::int8_t>(n, -1), -kInf, sequence++, nullptr});

  auto prune_tolerance = [&] { return 1e-9 + 1e-12 * std::abs(incumbent); };
  const std::vector<std::uint8_t>* loaded_basis = nullptr;
  auto branch = [&](const Node& node, int var, double bound) {
    auto basis = std::make_shared<const std::vector<std::uint8_t>>(lp.SaveBasis());
    loaded_basis = basis.get();
    for (std::int8_t value : {std::int8_t{0}, std::int8_t{1}}) {
      Node child{node.fixed, bound, sequence++, basis};
      child.fixed[var] = value;
      open.push(std::move(child));
    }
  };

  bool hit_limit = false;
  std::vector<std::uint8_t> candidate(n);
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - prune_tolerance()) continue;
    if (node_limit && result.nodes_explored >= *node_limit) {
      hit_limit = true;
      break;
    }
    ++result.nodes_explored;
    if (node.basis && node.basis.get() != loaded_basis) {
      lp.RestoreBasis(*node.basis);
    }
    loaded_basis = nullptr;
    ApplyFixings(lp, node.fixed);
    int cut_rounds = 0;
    // Cuts pay off at the root; deeper in the tree they mostly grow the
    // relaxation.
    const int max_cut_rounds = result.nodes_explored == 1 ? kRootCutRounds : 0;

    while (true) {
      const LpStatus status = lp.Solve(IterationLimit(lp));
      if (status == LpStatus::kInfeasible) break;
      if (status == LpStatus::kIterationLimit) {
        const double bound = FallbackBound(bp, node.fixed);
        if (bound >= incumbent - prune_tolerance()) break;
        const auto free_it =
            std::find(node.fixed.begin(), node.fixed.end(), std::int8_t{-1});
        if (free_it == node.fixed.end()) {
          // Fully fixed: the assignment is decided, check it directly.
          for (int j = 0; j < n; ++j) candidate[j] = node.fixed[j] == 1;
          bool ok = std::all_of(rows.begin(), rows.end(), [&](const auto& r) {
            return r.SatisfiedBy(candidate);
          });
          if (!ok) break;
          // Treat it like an integral relaxation below.
        } else {
          branch(node, static_cast<int>(free_it - node.fixed.begin()), bound);
          break;
        }
      }

      const double value = status == LpStatus::kOptimal
                               ? lp.objective()
                               : FallbackBound(bp, node.fixed);
      if (value >= incumbent - prune_tolerance()) break;

      int branch_var = -1;
      std::vector<double> x;
      if (status == LpStatus::kOptimal) {
        x = lp.ColumnValues();
        double best_frac = kIntegralityTolerance;
        int best_priority = std::numeric_limits<int>::min();
        for (int j = 0; j < n; ++j) {
          candidate[j] = x[j] > 0.5 ? 1 : 0;
          const double frac = std::min(x[j] - std::floor(x[j]),
                                       std::ceil(x[j]) - x[j]);
          if (frac <= kIntegralityTolerance) continue;
          const int priority =
              bp.branch_priority.empty() ? 0 : bp.branch_priority[j];
          if (priority > best_priority ||
              (priority == best_priority && frac > best_frac)) {
            best_priority = priority;
            best_frac = frac;
            branch_var = j;
          }
        }
      }
      if (branch_var >= 0) {
        if (bp.fractional_separator && cut_rounds < max_cut_rounds) {
          std::vector<LinearRow> cuts = bp.fractional_separator(x);
          if (!cuts.empty()) {
            ++cut_rounds;
            for (LinearRow& cut : cuts) {
              for (const auto& [var, coef] : cut.terms) {
                if (var < 0 || var >= n) {
                  throw std::invalid_argument(
                      "separator row references variable out of range");
                }
              }
              AddToLp(lp, cut);
              rows.push_back(std::move(cut));
              ++result.cut_rows_added;
            }
            continue;
          }
        }
        branch(node, branch_var, value);
        break;
      }

      const bool rows_ok =
          std::all_of(rows.begin(), rows.end(),
                      [&](const auto& r) { return r.SatisfiedBy(candidate); });
      if (!rows_ok) {
        // Rounding broke a row; keep splitting on a free variable.
        const auto free_it =
            std::find(node.fixed.begin(), node.fixed.end(), std::int8_t{-1});
        if (free_it != node.fixed.end()) {
          branch(node, static_cast<int>(free_it - node.fixed.begin()), value);
        }
        break;
      }

      if (bp.lazy_separator) {
        std::vector<LinearRow> cuts = bp.lazy_separator(candidate);
        if (!cuts.empty()) {
          for (LinearRow& cut : cuts) {
            for (const auto& [var, coef] : cut.terms) {
              if (var < 0 || var >= n) {
                throw std::invalid_argument(
                    "separator row references variable out of range");
              }
            }
            AddToLp(lp, cut);
            rows.push_back(std::move(cut));
            ++result.lazy_rows_added;
          }
          continue;
        }
      }

      double exact = 0.0;
      for (int j = 0; j < n; ++j) {
        if (candidate[j]) exact += bp.objective[j];
      }
      if (exact < incumbent) {
        incumbent = exact;
        best = candidate;
      }
      break;
    }
  }

  if (!best.empty() || (n == 0 && incumbent < kInf)) {
    result.assignment = best;
    result.objective_value = incumbent;
  }
  if (hit_limit) {
    result.status = SolveStatus::kNodeLimit;
  } else {
    result.status = std::isinf(incumbent) ? SolveStatus::kInfeasible
                                          : SolveStatus::kOptimal;
  }
  return result;
}

double RelaxBound(const BinaryProgram& bp, std::span<const std::int8_t> fixed) {
  CheckProgram(bp);
  if (static_cast<int>(fixed.size()) != bp.num_vars) {
    throw std::invalid_argument("fixed assignment has the wrong length");
  }
  DualSimplex lp(bp.objective);
  for (const LinearRow& row : bp.rows) AddToLp(lp, row);
  ApplyFixings(lp, fixed);
  switch (lp.Solve(IterationLimit(lp))) {
    case LpStatus::kOptimal:
      return lp.objective();
    case LpStatus::kInfeasible:
      return kInf;
    case LpStatus::kIterationLimit:
      break;
  }
  return FallbackBound(bp, fixed);
}

}  // namespace dblp::bip
