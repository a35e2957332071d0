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

// Domain types for the drop box location problem: candidate locations, the
// symmetric operational cost matrix, voter populations with their covering
// sets and access parameters, and the cost-model helpers used to build
// instances from travel data.
//
// Locations and populations carry string ids for file I/O. Everything inside
// the library works on dense indices (position in `Instance::locations` and
// `Instance::populations`).

#ifndef DBLP_MODEL_H_
#define DBLP_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dblp {

// Absolute tolerance for money comparisons (fixed, operational, total cost).
inline constexpr double kMoneyTolerance = 1e-6;
// Absolute tolerance for access-function comparisons against a bound r. The
// relaxation works to 1e-8 on normalized access rows, so exact solutions can
// undershoot r by about that much.
inline constexpr double kAccessTolerance = 1e-7;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Location {
  std::string id;
  double fixed_cost = 0.0;  // f_j, money per planning horizon
  std::optional<Point> coords;
  bool required = false;  // member of T
  bool operator==(const Location&) const = default;
};

// Operational travel cost c_ij between two locations. Stored as a full square
// matrix so that asymmetric input can be detected by validation; the setters
// used by the generator and the file reader always write both directions.
class EdgeCosts {
 public:
  EdgeCosts() = default;
  explicit EdgeCosts(int size);
  // Row-major square matrix. Throws std::invalid_argument if not square.
  explicit EdgeCosts(const std::vector<std::vector<double>>& full);

  int size() const { return size_; }
  double operator()(int i, int j) const { return data_[i * size_ + j]; }
  void Set(int i, int j, double cost);
  void SetDirected(int i, int j, double cost);

  bool operator==(const EdgeCosts&) const = default;

 private:
  int size_ = 0;
  std::vector<double> data_;
};

// Parameters of the access function
//   A_w(S) = (v1 + sum_{j in S} a_jw) / (v0 + v1 + sum_{j in S} a_jw).
// `a` is indexed by location index; a zero entry means the location has no
// effect on this population.
struct AccessParams {
  double v0 = 1.0;
  double v1 = 1.0;
  std::vector<double> a;
  bool operator==(const AccessParams&) const = default;
};

struct VoterPopulation {
  std::string id;
  std::vector<int> covering_set;  // N_w, sorted location indices
  AccessParams access;
  double weight = 0.0;  // p_w; only used by reported metrics
  std::optional<Point> coords;
  bool operator==(const VoterPopulation&) const = default;
};

// Optional per-mode travel durations (minutes) from each population to each
// location, plus the share of each population with a vehicle. Only consumed by
// the reporting code; indexed [population][location].
struct ModeDurations {
  std::vector<std::vector<double>> walk;
  std::vector<std::vector<double>> transit;
  std::vector<std::vector<double>> drive;
  std::vector<std::vector<double>> other;
  std::vector<double> vehicle_fraction;
  bool operator==(const ModeDurations&) const = default;
};

// Provenance recorded by the instance generator.
struct GeneratorInfo {
  std::uint64_t seed = 0;
  std::string rng;
  std::string threshold_policy;
  std::vector<double> thresholds;  // per population, after expansion
  bool operator==(const GeneratorInfo&) const = default;
};

struct Instance {
  std::vector<Location> locations;
  int start = 0;  // s, index into locations
  EdgeCosts edge_costs;
  std::vector<VoterPopulation> populations;
  int q = 0;
  std::optional<ModeDurations> mode_durations;
  std::optional<GeneratorInfo> generator;

  int num_locations() const { return static_cast<int>(locations.size()); }
  int num_populations() const { return static_cast<int>(populations.size()); }

  // Throws std::out_of_range for unknown ids.
  int LocationIndex(std::string_view id) const;
  int PopulationIndex(std::string_view id) const;

  // Sorted indices of T.
  std::vector<int> Required() const;

  bool operator==(const Instance&) const = default;
};

enum class ObjectiveMode { kMinCost, kMaxCoverage };

struct SolveOptions {
  double r = 0.0;
  ObjectiveMode objective_mode = ObjectiveMode::kMinCost;
  std::optional<double> budget;         // B, on fixed + operational cost
  std::optional<double> tour_cost_cap;  // c_max, on operational cost
  std::optional<int> fixed_count;       // k
  bool dominance_filter = true;
  // q' kept through the covering rows when maximizing coverage; coverage
  // counted by the objective uses the instance's q.
  int base_coverage = 0;
  std::optional<std::int64_t> node_limit;
};

struct Solution {
  std::vector<int> selected;  // sorted location indices
  std::vector<int> tour;      // cyclic order starting at the start location
  double total_cost = 0.0;
  double fixed_cost = 0.0;
  double operational_cost = 0.0;
  double min_access = 1.0;
  std::vector<double> access_by_population;
};

// Raised when an instance admits no solution under the given options.
// `binding_population()` names the population whose coverage or access bound
// cannot be met, or is empty when no single population is to blame.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::string binding_population)
      : std::runtime_error(what),
        binding_population_(std::move(binding_population)) {}
  const std::string& binding_population() const { return binding_population_; }

 private:
  std::string binding_population_;
};

// Every violated structural invariant, one human-readable line each.
std::vector<std::string> ValidateInstance(const Instance& inst);

// A_w(selected). Throws std::out_of_range if a selected index has no a-value
// slot for this population.
double AccessValue(const VoterPopulation& pop, std::span<const int> selected);

// min_w A_w(selected); 1.0 when there are no populations.
double MinAccess(const Instance& inst, std::span<const int> selected);

// c_hat_ij = c_ij + f_i/2 + f_j/2, zero on the diagonal.
EdgeCosts ReformulatedCosts(const Instance& inst);

// Populations whose access row is implied by another retained population's
// row for every selection containing T. Sorted indices.
std::vector<int> DominanceFilter(const Instance& inst);

// True if `dominating` satisfies the three coordinate-wise conditions against
// `dominated` (v0 not smaller, v1 plus required-set a-sum not larger, and every
// a on a non-required location not larger).
bool Dominates(const Instance& inst, int dominating, int dominated);

// min over (w, n) of A_w(N) - A_w(N \ {n}) for pairs with a_nw > 0.
double EpsilonDefault(const Instance& inst);

// Straight-line annualization. Throws std::invalid_argument if
// lifetime_years < 1.
double AnnualizeFixed(double purchase_cost, int lifetime_years);

// per_tour_cost * collections_per_year * mean_{t < L} (1 + g)^t.
double AnnualizeOperational(double per_tour_cost, double collections_per_year,
                            double growth_rate, int lifetime_years);

// Staff time for the whole team plus mileage for one traversal.
double EdgeCostFromTravel(double duration_minutes, double speed_mph,
                          double hourly_rate, int team_size,
                          double mileage_rate);

// Sum of c over consecutive tour edges including the closing edge. A single
// location costs 0 and two locations cost 2 * c_ij.
double TourCost(const EdgeCosts& costs, std::span<const int> tour);

// Fills in the selected set, cost decomposition and access values for a tour.
Solution MakeSolution(const Instance& inst, std::vector<int> tour);

// Coverage count |N_w ∩ selected| for each population.
std::vector<int> CoverageCounts(const Instance& inst,
                                std::span<const int> selected);

}  // namespace dblp

#endif  // DBLP_MODEL_H_
