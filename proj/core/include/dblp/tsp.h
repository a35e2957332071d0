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

// Tour construction over a subset of locations.

#ifndef DBLP_TSP_H_
#define DBLP_TSP_H_

#include <span>
#include <vector>

#include "dblp/model.h"

namespace dblp {

// Largest node count solved exactly by RebuildTour.
inline constexpr int kExactTourLimit = 13;

// Optimal cycle through `nodes` (which must contain `start`) by dynamic
// programming over subsets. Exponential; meant for small node counts.
std::vector<int> HeldKarpTour(const EdgeCosts& costs, std::span<const int> nodes,
                              int start);

// Nearest-neighbour construction from `start` improved by 2-opt until no
// improving exchange remains.
std::vector<int> TwoOptTour(const EdgeCosts& costs, std::span<const int> nodes,
                            int start);

// Rotation- and reflection-normalized form: `start` first, and of the two
// traversal directions the one whose second entry is smaller.
std::vector<int> CanonicalTour(std::span<const int> tour, int start);

}  // namespace dblp

#endif  // DBLP_TSP_H_
