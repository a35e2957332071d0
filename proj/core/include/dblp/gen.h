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

// Synthetic instances and access-parameter construction from travel data.
//
// Random stream. Generate() draws every random quantity from one
// std::mt19937_64 seeded with GenConfig::seed, consuming raw 64-bit outputs
// x in exactly this order:
//
//   1. location coordinates: x then y for locations 0..|N|-1
//   2. population coordinates: x then y for populations 0..|W|-1
//   3. |T|, an integer in [1, ceil(|N|/4)]
//   4. T: a partial Fisher-Yates shuffle of 0..|N|-1; step i swaps position
//      i with an integer position in [i, |N|-1]; the first |T| positions
//      form T and the first of them is the start location
//   5. fixed costs for locations 0..|N|-1
//   6. one operational cost scale for the whole instance
//   7. per population: coverage threshold, then v1, then weight
//
// A real draw in [lo, hi] is lo + u (hi - lo) with u = (x >> 11) * 2^-53.
// An integer draw in [lo, hi] is lo + floor(u (hi - lo + 1)), clamped to hi.
// Any other implementation following these rules reproduces the instances
// exactly.

#ifndef DBLP_GEN_H_
#define DBLP_GEN_H_

#include <cstdint>
#include <vector>

#include "dblp/model.h"

namespace dblp {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GenConfig {
  int num_populations = 100;
  int num_locations = 30;
  std::uint64_t seed = 1;
  double grid = 100.0;  // side of the square
  Range fixed_cost_range{5000.0, 12000.0};
  Range op_scale_range{0.5, 1.5};
  Range threshold_range{15.0, 50.0};
  Range v1_range{50.0, 95.0};
  Range weight_range{500.0, 1500.0};  // integer population counts
  int q = 2;
};

inline constexpr char kGeneratorRng[] = "mt19937_64";
inline constexpr char kThresholdPolicy[] = "per-population";

// Requires num_locations >= 4, num_populations >= 0 and q <= num_locations;
// throws std::invalid_argument otherwise. Money values are rounded to 1e-4.
Instance Generate(const GenConfig& cfg);

// Manhattan distance between two grid points.
double GridDistance(const Point& a, const Point& b);

// a = e^{2.5 - max(d, 1) / 30}.
double GeneratedAccess(double distance);

// Travel data for building access parameters and covering sets from real
// durations. Duration matrices are indexed [population][location], minutes.
struct DurationInputs {
  std::vector<std::vector<double>> walk;
  std::vector<std::vector<double>> transit;
  std::vector<std::vector<double>> drive;
  std::vector<std::vector<double>> other;
  std::vector<double> vehicle_fraction;          // per population
  std::vector<std::vector<double>> work_weight;  // [population][work place]
  // Walking minutes from each location to each work place, [location][place].
  std::vector<std::vector<double>> work_walk;
  std::vector<double> v1;  // turnout fraction in (0, 1]
};

// AccessParams per population with v0 = 1 - v1 and
//   a_nw = (0.04 / v1) (1/walk^2 + 1/transit^2 + vehicle/drive^2
//                       + 1/other^2 + sum_q work_q / work_walk^2).
// Throws std::invalid_argument on a zero duration or mismatched sizes.
std::vector<AccessParams> BuildAccessParams(const DurationInputs& inputs);

// N_w: locations meeting at least two of walk <= 15 factor,
// drive <= 15 factor, transit <= 30 factor and road distance <= 4 factor
// miles, with road distance taken as `other` minutes at 15 mph.
std::vector<std::vector<int>> BuildCoveringSets(const DurationInputs& inputs,
                                                double factor);

struct Table5Row {
  double distance = 0.0;
  double marginal_increase = 0.0;
  double one_mile_benefit = 0.0;
};

// Marginal access gain of one box at distance D (a = e^{2.5 - D}, v0 = 30,
// v1 = 70) for D = 0.2, 0.4, ..., 3.0, and the gain lost by moving it one
// mile further away.
std::vector<Table5Row> Table5Family();

}  // namespace dblp

#endif  // DBLP_GEN_H_
