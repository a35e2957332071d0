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

#include "dblp/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace dblp {

EdgeCosts::EdgeCosts(int size)
    : size_(size), data_(static_cast<size_t>(size) * size, 0.0) {}

EdgeCosts::EdgeCosts(const std::vector<std::vector<double>>& full)
    : EdgeCosts(static_cast<int>(full.size())) {
  for (int i = 0; i < size_; ++i) {
    if (static_cast<int>(full[i].size()) != size_) {
      throw std::invalid_argument("edge cost matrix is not square");
    }
    for (int j = 0; j < size_; ++j) data_[i * size_ + j] = full[i][j];
  }
}

void EdgeCosts::Set(int i, int j, double cost) {
  data_[i * size_ + j] = cost;
  data_[j * size_ + i] = cost;
}

void EdgeCosts::SetDirected(int i, int j, double cost) {
  data_[i * size_ + j] = cost;
}

int Instance::LocationIndex(std::string_view id) const {
  for (int i = 0; i < num_locations(); ++i) {
    if (locations[i].id == id) return i;
  }
  throw std::out_of_range("unknown location id '" + std::string(id) + "'");
}

int Instance::PopulationIndex(std::string_view id) const {
  for (int i = 0; i < num_populations(); ++i) {
    if (populations[i].id == id) return i;
  }
  throw std::out_of_range("unknown population id '" + std::string(id) + "'");
}

std::vector<int> Instance::Required() const {
  std::vector<int> out;
  for (int i = 0; i < num_locations(); ++i) {
    if (locations[i].required) out.push_back(i);
  }
  return out;
}

std::vector<std::string> ValidateInstance(const Instance& inst) {
  std::vector<std::string> diags;
  const int n = inst.num_locations();

  std::set<std::string> seen;
  for (const Location& loc : inst.locations) {
    if (!seen.insert(loc.id).second) {
      diags.push_back("duplicate location id '" + loc.id + "'");
    }
    if (!(loc.fixed_cost >= 0.0)) {
      diags.push_back("location '" + loc.id + "' has negative fixed cost");
    }
  }
  if (n == 0) diags.push_back("instance has no locations");

  if (inst.start < 0 || inst.start >= n) {
    diags.push_back("start location index out of range");
  } else if (!inst.locations[inst.start].required) {
    diags.push_back("start location '" + inst.locations[inst.start].id +
                    "' is not marked required");
  }

  if (inst.edge_costs.size() != n) {
    diags.push_back("edge cost matrix size does not match location count");
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double cij = inst.edge_costs(i, j);
        const double cji = inst.edge_costs(j, i);
        if (cij != cji) {
          diags.push_back("asymmetric edge cost between '" +
                          inst.locations[i].id + "' and '" +
                          inst.locations[j].id + "'");
        }
        if (!(cij >= 0.0) || !(cji >= 0.0)) {
          diags.push_back("negative edge cost between '" +
                          inst.locations[i].id + "' and '" +
                          inst.locations[j].id + "'");
        }
      }
    }
  }

  if (inst.q < 0) diags.push_back("q must be nonnegative");

  seen.clear();
  for (const VoterPopulation& pop : inst.populations) {
    if (!seen.insert(pop.id).second) {
      diags.push_back("duplicate population id '" + pop.id + "'");
    }
    if (!(pop.access.v0 > 0.0) || !(pop.access.v1 > 0.0)) {
      diags.push_back("population '" + pop.id +
                      "' has non-positive v0 or v1");
    }
    if (static_cast<int>(pop.access.a.size()) != n) {
      diags.push_back("population '" + pop.id +
                      "' has an access vector of the wrong length");
    } else if (std::any_of(pop.access.a.begin(), pop.access.a.end(),
                           [](double a) { return !(a >= 0.0); })) {
      diags.push_back("population '" + pop.id +
                      "' has a negative access parameter");
    }
    if (!(pop.weight >= 0.0)) {
      diags.push_back("population '" + pop.id + "' has negative weight");
    }
    bool in_range = true;
    for (int j : pop.covering_set) {
      if (j < 0 || j >= n) in_range = false;
    }
    if (!in_range) {
      diags.push_back("population '" + pop.id +
                      "' covering set references an unknown location");
    }
    if (static_cast<int>(pop.covering_set.size()) < inst.q) {
      std::ostringstream msg;
      msg << "population '" << pop.id << "' has " << pop.covering_set.size()
          << " covering locations but q = " << inst.q;
      diags.push_back(msg.str());
    }
  }
  return diags;
}

double AccessValue(const VoterPopulation& pop, std::span<const int> selected) {
  double sum = 0.0;
  for (int j : selected) {
    if (j < 0 || j >= static_cast<int>(pop.access.a.size())) {
      throw std::out_of_range("location index has no access parameter for '" +
                              pop.id + "'");
    }
    sum += pop.access.a[j];
  }
  const double num = pop.access.v1 + sum;
  return num / (pop.access.v0 + num);
}

double MinAccess(const Instance& inst, std::span<const int> selected) {
  double best = 1.0;
  for (const VoterPopulation& pop : inst.populations) {
    best = std::min(best, AccessValue(pop, selected));
  }
  return best;
}

EdgeCosts ReformulatedCosts(const Instance& inst) {
  const int n = inst.num_locations();
  EdgeCosts out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.Set(i, j,
              inst.edge_costs(i, j) + inst.locations[i].fixed_cost / 2.0 +
                  inst.locations[j].fixed_cost / 2.0);
    }
  }
  return out;
}

namespace {

double RequiredSum(const Instance& inst, const VoterPopulation& pop) {
  double sum = pop.access.v1;
  for (int j = 0; j < inst.num_locations(); ++j) {
    if (inst.locations[j].required) sum += pop.access.a[j];
  }
  return sum;
}

bool DominatesWith(const Instance& inst, const VoterPopulation& hat,
                   double hat_required, const VoterPopulation& w,
                   double w_required) {
  if (hat.access.v0 < w.access.v0) return false;
  if (hat_required > w_required) return false;
  for (int j = 0; j < inst.num_locations(); ++j) {
    if (inst.locations[j].required) continue;
    if (hat.access.a[j] > w.access.a[j]) return false;
  }
  return true;
}

}  // namespace

bool Dominates(const Instance& inst, int dominating, int dominated) {
  const VoterPopulation& hat = inst.populations[dominating];
  const VoterPopulation& w = inst.populations[dominated];
  return DominatesWith(inst, hat, RequiredSum(inst, hat), w,
                       RequiredSum(inst, w));
}

std::vector<int> DominanceFilter(const Instance& inst) {
  const int m = inst.num_populations();
  std::vector<double> required(m);
  for (int w = 0; w < m; ++w) {
    required[w] = RequiredSum(inst, inst.populations[w]);
  }
  // The relation is a preorder, so removing every population that is strictly
  // dominated, or tied with a smaller id, always leaves a retained dominator.
  std::vector<int> removable;
  for (int w = 0; w < m; ++w) {
    const VoterPopulation& pop = inst.populations[w];
    for (int hat = 0; hat < m; ++hat) {
      if (hat == w) continue;
      const VoterPopulation& other = inst.populations[hat];
      if (!DominatesWith(inst, other, required[hat], pop, required[w])) {
        continue;
      }
      const bool mutual =
          DominatesWith(inst, pop, required[w], other, required[hat]);
      if (!mutual || other.id < pop.id) {
        removable.push_back(w);
        break;
      }
    }
  }
  return removable;
}

double EpsilonDefault(const Instance& inst) {
  const int n = inst.num_locations();
  double best = std::numeric_limits<double>::infinity();
  for (const VoterPopulation& pop : inst.populations) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += pop.access.a[j];
    const double full = (pop.access.v1 + sum) / (pop.access.v0 + pop.access.v1 + sum);
    for (int j = 0; j < n; ++j) {
      if (!(pop.access.a[j] > 0.0)) continue;
      const double rest = sum - pop.access.a[j];
      const double without =
          (pop.access.v1 + rest) / (pop.access.v0 + pop.access.v1 + rest);
      best = std::min(best, full - without);
    }
  }
  if (!std::isfinite(best) || best <= 0.0) {
    // No population reacts to any location; any positive step terminates.
    return 1.0;
  }
  return best;
}

double AnnualizeFixed(double purchase_cost, int lifetime_years) {
  if (lifetime_years < 1) {
    throw std::invalid_argument("lifetime_years must be at least 1");
  }
  return purchase_cost / lifetime_years;
}

double AnnualizeOperational(double per_tour_cost, double collections_per_year,
                            double growth_rate, int lifetime_years) {
  if (lifetime_years < 1) {
    throw std::invalid_argument("lifetime_years must be at least 1");
  }
  double multiplier = 0.0;
  double factor = 1.0;
  for (int t = 0; t < lifetime_years; ++t) {
    multiplier += factor;
    factor *= 1.0 + growth_rate;
  }
  return per_tour_cost * collections_per_year * multiplier / lifetime_years;
}

double EdgeCostFromTravel(double duration_minutes, double speed_mph,
                          double hourly_rate, int team_size,
                          double mileage_rate) {
  const double hours = duration_minutes / 60.0;
  return hours * hourly_rate * team_size + hours * speed_mph * mileage_rate;
}

double TourCost(const EdgeCosts& costs, std::span<const int> tour) {
  const size_t k = tour.size();
  if (k < 2) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) {
    total += costs(tour[i], tour[(i + 1) % k]);
  }
  return total;
}

Solution MakeSolution(const Instance& inst, std::vector<int> tour) {
  Solution sol;
  sol.selected = tour;
  std::sort(sol.selected.begin(), sol.selected.end());
  sol.tour = std::move(tour);
  for (int j : sol.selected) sol.fixed_cost += inst.locations[j].fixed_cost;
  sol.operational_cost = TourCost(inst.edge_costs, sol.tour);
  sol.total_cost = sol.fixed_cost + sol.operational_cost;
  sol.access_by_population.reserve(inst.populations.size());
  sol.min_access = 1.0;
  for (const VoterPopulation& pop : inst.populations) {
    const double value = AccessValue(pop, sol.selected);
    sol.access_by_population.push_back(value);
    sol.min_access = std::min(sol.min_access, value);
  }
  return sol;
}

std::vector<int> CoverageCounts(const Instance& inst,
                                std::span<const int> selected) {
  std::vector<char> chosen(inst.num_locations(), 0);
  for (int j : selected) chosen[j] = 1;
  std::vector<int> counts;
  counts.reserve(inst.populations.size());
  for (const VoterPopulation& pop : inst.populations) {
    int c = 0;
    for (int j : pop.covering_set) c += chosen[j];
    counts.push_back(c);
  }
  return counts;
}

}  // namespace dblp
