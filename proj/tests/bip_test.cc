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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace dblp::bip {
namespace {

// Best objective over all 2^n assignments satisfying `rows`, or +inf.
double Enumerate(const BinaryProgram& bp, const std::vector<LinearRow>& rows) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> x(bp.num_vars);
  for (int mask = 0; mask < (1 << bp.num_vars); ++mask) {
    for (int i = 0; i < bp.num_vars; ++i) x[i] = (mask >> i) & 1;
    bool ok = true;
    for (const LinearRow& row : rows) ok = ok && row.SatisfiedBy(x);
    if (!ok) continue;
    double value = 0.0;
    for (int i = 0; i < bp.num_vars; ++i) value += bp.objective[i] * x[i];
    best = std::min(best, value);
  }
  return best;
}

BinaryProgram RandomProgram(std::mt19937_64& rng, int n, int m) {
  std::uniform_int_distribution<int> coef(-5, 9);
  std::uniform_int_distribution<int> sense(0, 2);
  BinaryProgram bp;
  bp.num_vars = n;
  for (int i = 0; i < n; ++i) bp.objective.push_back(coef(rng));
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, double>> terms;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const int c = coef(rng);
      if (c != 0 && rng() % 2) {
        terms.push_back({i, static_cast<double>(c)});
        total += std::max(c, 0);
      }
    }
    const int s = sense(rng);
    const double rhs = std::floor(total * 0.4);
    bp.rows.push_back(LinearRow::Make(
        terms, s == 0 ? Sense::kLessEqual : s == 1 ? Sense::kGreaterEqual : Sense::kEqual,
        s == 2 ? std::floor(total * 0.3) : rhs));
  }
  return bp;
}

TEST(LinearRowTest, MakeMergesAndDropsZeros) {
  const LinearRow row =
      LinearRow::Make({{3, 1.0}, {1, 2.0}, {3, -1.0}, {0, 4.0}}, Sense::kEqual, 1.0);
  ASSERT_EQ(row.terms.size(), 2u);
  EXPECT_EQ(row.terms[0], (std::pair<int, double>{0, 4.0}));
  EXPECT_EQ(row.terms[1], (std::pair<int, double>{1, 2.0}));
  const std::vector<std::uint8_t> x = {0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(row.Activity(x), 2.0);
  EXPECT_FALSE(row.SatisfiedBy(x));
}

TEST(SolveTest, KnapsackAsMinimization) {
  // Maximize 6a + 5b + 4c subject to 3a + 2b + 2c <= 4: take b and c.
  BinaryProgram bp;
  bp.num_vars = 3;
  bp.objective = {-6, -5, -4};
  bp.rows = {LinearRow::Make({{0, 3}, {1, 2}, {2, 2}}, Sense::kLessEqual, 4)};
  const SolveResult r = Solve(bp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(*r.objective_value, -9.0);
  EXPECT_EQ(*r.assignment, (std::vector<std::uint8_t>{0, 1, 1}));
}

TEST(SolveTest, ReportsInfeasibility) {
  BinaryProgram bp;
  bp.num_vars = 2;
  bp.objective = {1, 1};
  bp.rows = {LinearRow::Make({{0, 1}, {1, 1}}, Sense::kGreaterEqual, 3)};
  EXPECT_EQ(Solve(bp).status, SolveStatus::kInfeasible);
}

TEST(SolveTest, RejectsMalformedPrograms) {
  BinaryProgram bp;
  bp.num_vars = 2;
  bp.objective = {1};
  EXPECT_THROW(Solve(bp), std::invalid_argument);
  bp.objective = {1, 1};
  bp.rows = {LinearRow::Make({{2, 1}}, Sense::kLessEqual, 1)};
  EXPECT_THROW(Solve(bp), std::invalid_argument);
}

TEST(SolveTest, MatchesEnumerationOnRandomPrograms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 8;
    const BinaryProgram bp = RandomProgram(rng, n, 1 + trial % 5);
    const double expected = Enumerate(bp, bp.rows);
    const SolveResult r = Solve(bp);
    if (std::isinf(expected)) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(*r.objective_value, expected, 1e-6) << "trial " << trial;
      for (const LinearRow& row : bp.rows) EXPECT_TRUE(row.SatisfiedBy(*r.assignment));
    }
  }
}

// Rows known only to the separator are enforced on every incumbent.
TEST(SolveTest, LazyRowsAreEnforced) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + trial % 6;
    BinaryProgram bp = RandomProgram(rng, n, 1);
    const std::vector<LinearRow> hidden = RandomProgram(rng, n, 3).rows;
    bp.lazy_separator = [&](std::span<const std::uint8_t> x) {
      std::vector<LinearRow> out;
      for (const LinearRow& row : hidden) {
        if (!row.SatisfiedBy(x)) out.push_back(row);
      }
      return out;
    };
    std::vector<LinearRow> all = bp.rows;
    all.insert(all.end(), hidden.begin(), hidden.end());
    const double expected = Enumerate(bp, all);
    const SolveResult r = Solve(bp);
    if (std::isinf(expected)) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(*r.objective_value, expected, 1e-6) << "trial " << trial;
      for (const LinearRow& row : all) EXPECT_TRUE(row.SatisfiedBy(*r.assignment));
    }
  }
}

TEST(SolveTest, BranchPriorityDoesNotChangeTheOptimum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    BinaryProgram bp = RandomProgram(rng, 8, 3);
    const SolveResult plain = Solve(bp);
    bp.branch_priority.assign(8, 0);
    for (int i = 0; i < 8; i += 2) bp.branch_priority[i] = 1;
    const SolveResult prioritized = Solve(bp);
    ASSERT_EQ(plain.status, prioritized.status);
    if (plain.status == SolveStatus::kOptimal) {
      EXPECT_NEAR(*plain.objective_value, *prioritized.objective_value, 1e-6);
    }
  }
  BinaryProgram bp = RandomProgram(rng, 4, 1);
  bp.branch_priority = {1, 0};
  EXPECT_THROW(Solve(bp), std::invalid_argument);
}

TEST(SolveTest, NodeLimitStopsEarly) {
  // The relaxation picks the two best ratios, 21 + 19, and needs one more.
  BinaryProgram bp;
  bp.num_vars = 10;
  std::vector<std::pair<int, double>> terms;
  for (int i = 0; i < 10; ++i) {
    bp.objective.push_back(1.0 + 0.1 * i);
    terms.push_back({i, 2.0 * i + 3.0});
  }
  bp.rows = {LinearRow::Make(terms, Sense::kEqual, 41.0)};
  const SolveResult limited = Solve(bp, 1);
  EXPECT_EQ(limited.status, SolveStatus::kNodeLimit);
  EXPECT_EQ(Solve(bp).status, Enumerate(bp, bp.rows) < 1e9
                                  ? SolveStatus::kOptimal
                                  : SolveStatus::kInfeasible);
}

TEST(RelaxBoundTest, NeverExceedsBestCompletion) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6;
    const BinaryProgram bp = RandomProgram(rng, n, 2);
    std::vector<std::int8_t> fixed(n, -1);
    fixed[0] = static_cast<std::int8_t>(rng() % 2);
    fixed[3] = static_cast<std::int8_t>(rng() % 2);
    std::vector<LinearRow> rows = bp.rows;
    for (int i : {0, 3}) {
      rows.push_back(LinearRow::Make({{i, 1.0}}, Sense::kEqual, fixed[i]));
    }
    const double best = Enumerate(bp, rows);
    const double bound = RelaxBound(bp, fixed);
    if (std::isinf(best)) continue;
    EXPECT_LE(bound, best + 1e-6) << "trial " << trial;
  }
}

}  // namespace
}  // namespace dblp::bip
