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

// Reference implementations used to check the library. They share no code
// with it beyond the Instance data types: brute force over selections, a
// separate Held-Karp, and enumeration of cut sets.

#ifndef DBLP_TESTS_ORACLE_H_
#define DBLP_TESTS_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dblp/model.h"

namespace dblp::testing {

// Plain access formula (v1 + sum a) / (v0 + v1 + sum a).
double OracleAccess(const VoterPopulation& pop, const std::vector<int>& selected);

// Cost of the cheapest closed walk visiting every node once; 0 for one node
// and twice the edge for two.
double OracleTourCost(const EdgeCosts& costs, const std::vector<int>& nodes);

struct OracleQuery {
  double r = 0.0;
  std::optional<double> budget;
  std::optional<double> cmax;
  std::optional<int> count;
  bool max_coverage = false;
  int base_q = 0;
};

struct OracleResult {
  bool feasible = false;
  // Total cost, or minus the weight covered q times when maximizing coverage.
  double objective = 0.0;
  double total_cost = 0.0;
  std::vector<int> selected;
};

// Exhaustive search over every selection containing T.
OracleResult BruteForce(const Instance& inst, const OracleQuery& query);

// Random instance with Euclidean travel costs and random covering sets; every
// covering set has at least max(q, 1) members.
Instance RandomInstance(std::uint64_t seed, int num_locations,
                        int num_populations, int q, int num_required);

// True when some S with T \ S nonempty and some selected t in S has fewer
// than two chosen edges crossing S. `edges[i][j]` marks chosen edges.
bool NaiveConnectivityViolated(const Instance& inst,
                               const std::vector<std::vector<char>>& edges,
                               const std::vector<char>& selected);

// Calls `visit` with every edge set in which each selected node has exactly
// two chosen edges and every other node none.
void ForEachTwoFactor(
    const std::vector<char>& selected,
    const std::function<void(const std::vector<std::vector<char>>&)>& visit);

}  // namespace dblp::testing

#endif  // DBLP_TESTS_ORACLE_H_
