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

#include "dblp/gen.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace dblp {
namespace {

// Cost-model constants for generated operational costs.
constexpr double kSpeedMph = 30.0;
constexpr double kHourlyRate = 40.0;
constexpr int kTeamSize = 2;
constexpr double kMileageRate = 0.56;
constexpr double kCollectionsPerYear = 50.0;
constexpr double kGrowthRate = 0.02;
constexpr int kLifetimeYears = 15;

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Real(Range range) { return range.lo + Unit() * (range.hi - range.lo); }
  int Int(int lo, int hi) {
    const int value =
        lo + static_cast<int>(std::floor(Unit() * (hi - lo + 1.0)));
    return std::min(value, hi);
  }

 private:
  std::mt19937_64 engine_;
};

double RoundTo(double value, double unit) {
  return std::round(value / unit) * unit;
}

double RoundMoney(double value) { return RoundTo(value, 1e-4); }

void CheckShape(const std::vector<std::vector<double>>& m, std::size_t rows,
                std::size_t cols, const char* name) {
  if (m.size() != rows) {
    throw std::invalid_argument(std::string(name) + " has the wrong row count");
  }
  for (const auto& row : m) {
    if (row.size() != cols) {
      throw std::invalid_argument(std::string(name) +
                                  " has the wrong column count");
    }
  }
}

double InverseSquare(double minutes) {
  if (minutes <= 0.0) {
    throw std::invalid_argument("travel durations must be positive");
  }
  return 1.0 / (minutes * minutes);
}

}  // namespace

double GridDistance(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double GeneratedAccess(double distance) {
  return std::exp(2.5 - std::max(distance, 1.0) / 30.0);
}

Instance Generate(const GenConfig& cfg) {
  if (cfg.num_locations < 4) {
    throw std::invalid_argument("at least 4 locations are required");
  }
  if (cfg.num_populations < 0) {
    throw std::invalid_argument("population count must be nonnegative");
  }
  if (cfg.q < 0 || cfg.q > cfg.num_locations) {
    throw std::invalid_argument("q must lie in [0, number of locations]");
  }
  const int n = cfg.num_locations;
  const int m = cfg.num_populations;
  Stream rng(cfg.seed);
  const Range axis{0.0, cfg.grid};

  Instance inst;
  inst.q = cfg.q;
  inst.locations.resize(n);
  for (int j = 0; j < n; ++j) {
    inst.locations[j].id = "n" + std::to_string(j);
    const double x = rng.Real(axis);
    const double y = rng.Real(axis);
    inst.locations[j].coords = Point{x, y};
  }
  inst.populations.resize(m);
  for (int w = 0; w < m; ++w) {
    inst.populations[w].id = "w" + std::to_string(w);
    const double x = rng.Real(axis);
    const double y = rng.Real(axis);
    inst.populations[w].coords = Point{x, y};
  }

  const int num_required = rng.Int(1, (n + 3) / 4);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < num_required; ++i) {
    std::swap(order[i], order[rng.Int(i, n - 1)]);
    inst.locations[order[i]].required = true;
  }
  inst.start = order[0];

  for (int j = 0; j < n; ++j) {
    inst.locations[j].fixed_cost = RoundMoney(rng.Real(cfg.fixed_cost_range));
  }
  const double scale = rng.Real(cfg.op_scale_range);
  inst.edge_costs = EdgeCosts(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double miles = std::max(
          GridDistance(*inst.locations[i].coords, *inst.locations[j].coords),
          1.0);
      const double minutes = miles / kSpeedMph * 60.0;
      const double per_tour = EdgeCostFromTravel(minutes, kSpeedMph, kHourlyRate,
                                                 kTeamSize, kMileageRate);
      const double annual = AnnualizeOperational(
          per_tour, kCollectionsPerYear, kGrowthRate, kLifetimeYears);
      inst.edge_costs.Set(i, j, RoundMoney(annual * scale));
    }
  }

  GeneratorInfo info;
  info.seed = cfg.seed;
  info.rng = kGeneratorRng;
  info.threshold_policy = kThresholdPolicy;
  const int min_cover = std::max(2, cfg.q);
  for (int w = 0; w < m; ++w) {
    VoterPopulation& pop = inst.populations[w];
    double threshold = rng.Real(cfg.threshold_range);
    const double v1 = RoundTo(rng.Real(cfg.v1_range), 1e-4);
    pop.weight = rng.Int(static_cast<int>(cfg.weight_range.lo),
                         static_cast<int>(cfg.weight_range.hi));

    std::vector<double> dist(n);
    for (int j = 0; j < n; ++j) {
      dist[j] = GridDistance(*pop.coords, *inst.locations[j].coords);
    }
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    threshold = std::max(threshold, sorted[min_cover - 1]);
    info.thresholds.push_back(threshold);

    pop.access.v1 = v1;
    pop.access.v0 = 100.0 - v1;
    pop.access.a.resize(n);
    for (int j = 0; j < n; ++j) {
      pop.access.a[j] = GeneratedAccess(dist[j]);
      if (dist[j] <= threshold) pop.covering_set.push_back(j);
    }
  }
  inst.generator = std::move(info);
  return inst;
}

std::vector<AccessParams> BuildAccessParams(const DurationInputs& inputs) {
  const std::size_t m = inputs.v1.size();
  const std::size_t n = m == 0 ? 0 : inputs.walk.at(0).size();
  CheckShape(inputs.walk, m, n, "walk");
  CheckShape(inputs.transit, m, n, "transit");
  CheckShape(inputs.drive, m, n, "drive");
  CheckShape(inputs.other, m, n, "other");
  if (inputs.vehicle_fraction.size() != m) {
    throw std::invalid_argument("vehicle_fraction has the wrong length");
  }
  const bool has_work = !inputs.work_weight.empty();
  const std::size_t places = has_work ? inputs.work_weight[0].size() : 0;
  if (has_work) {
    CheckShape(inputs.work_weight, m, places, "work_weight");
    CheckShape(inputs.work_walk, n, places, "work_walk");
  }

  std::vector<AccessParams> out(m);
  for (std::size_t w = 0; w < m; ++w) {
    const double v1 = inputs.v1[w];
    if (!(v1 > 0.0 && v1 <= 1.0)) {
      throw std::invalid_argument("v1 must lie in (0, 1]");
    }
    out[w].v1 = v1;
    out[w].v0 = 1.0 - v1;
    out[w].a.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      double sum = InverseSquare(inputs.walk[w][j]) +
                   InverseSquare(inputs.transit[w][j]) +
                   inputs.vehicle_fraction[w] * InverseSquare(inputs.drive[w][j]) +
                   InverseSquare(inputs.other[w][j]);
      for (std::size_t p = 0; p < places; ++p) {
        if (inputs.work_weight[w][p] == 0.0) continue;
        sum += inputs.work_weight[w][p] * InverseSquare(inputs.work_walk[j][p]);
      }
      out[w].a[j] = 0.04 / v1 * sum;
    }
  }
  return out;
}

std::vector<std::vector<int>> BuildCoveringSets(const DurationInputs& inputs,
                                                double factor) {
  if (factor <= 0.0) throw std::invalid_argument("factor must be positive");
  constexpr double kRoadMph = 15.0;
  std::vector<std::vector<int>> sets(inputs.walk.size());
  for (std::size_t w = 0; w < inputs.walk.size(); ++w) {
    for (std::size_t j = 0; j < inputs.walk[w].size(); ++j) {
      const double road_miles = inputs.other[w][j] / 60.0 * kRoadMph;
      const int met = (inputs.walk[w][j] <= 15.0 * factor) +
                      (inputs.drive[w][j] <= 15.0 * factor) +
                      (inputs.transit[w][j] <= 30.0 * factor) +
                      (road_miles <= 4.0 * factor);
      if (met >= 2) sets[w].push_back(static_cast<int>(j));
    }
  }
  return sets;
}

std::vector<Table5Row> Table5Family() {
  auto marginal = [](double d) {
    const double a = std::exp(2.5 - d);
    return (70.0 + a) / (100.0 + a) - 0.70;
  };
  std::vector<Table5Row> rows;
  for (int step = 1; step <= 15; ++step) {
    const double d = 0.2 * step;
    rows.push_back({d, marginal(d), marginal(d) - marginal(d + 1.0)});
  }
  return rows;
}

}  // namespace dblp
