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
#include <vector>

#include "gtest/gtest.h"

namespace dblp {
namespace {

TEST(GenerateTest, ShapeAndRanges) {
  GenConfig cfg;
  cfg.seed = 11;
  cfg.num_locations = 25;
  cfg.num_populations = 60;
  const Instance inst = Generate(cfg);
  ASSERT_EQ(inst.num_locations(), 25);
  ASSERT_EQ(inst.num_populations(), 60);
  EXPECT_TRUE(ValidateInstance(inst).empty());
  EXPECT_EQ(inst.q, 2);

  const int required = static_cast<int>(inst.Required().size());
  EXPECT_GE(required, 1);
  EXPECT_LE(required, 25 / 4 + 1);
  EXPECT_TRUE(inst.locations[inst.start].required);

  for (const Location& loc : inst.locations) {
    EXPECT_GE(loc.fixed_cost, 5000.0);
    EXPECT_LE(loc.fixed_cost, 12000.0);
    ASSERT_TRUE(loc.coords.has_value());
    EXPECT_GE(loc.coords->x, 0.0);
    EXPECT_LE(loc.coords->x, 100.0);
  }
  ASSERT_TRUE(inst.generator.has_value());
  EXPECT_EQ(inst.generator->seed, 11u);
  EXPECT_EQ(inst.generator->rng, kGeneratorRng);
  ASSERT_EQ(inst.generator->thresholds.size(), 60u);

  for (int w = 0; w < inst.num_populations(); ++w) {
    const VoterPopulation& pop = inst.populations[w];
    EXPECT_GE(pop.covering_set.size(), 2u);
    EXPECT_NEAR(pop.access.v0 + pop.access.v1, 100.0, 1e-12);
    EXPECT_GE(pop.access.v1, 50.0);
    EXPECT_LE(pop.access.v1, 95.0);
    EXPECT_EQ(pop.weight, std::round(pop.weight));
    ASSERT_TRUE(pop.coords.has_value());
    const double threshold = inst.generator->thresholds[w];
    EXPECT_GE(threshold, 15.0);
    for (int j = 0; j < inst.num_locations(); ++j) {
      const double d = GridDistance(*pop.coords, *inst.locations[j].coords);
      EXPECT_DOUBLE_EQ(pop.access.a[j], GeneratedAccess(d));
      const bool in_set = std::binary_search(pop.covering_set.begin(),
                                             pop.covering_set.end(), j);
      EXPECT_EQ(in_set, d <= threshold) << "population " << w << " location " << j;
    }
  }
}

TEST(GenerateTest, ThresholdGrowsOnlyToReachTwoLocations) {
  GenConfig cfg;
  cfg.seed = 4;
  cfg.num_locations = 8;
  cfg.num_populations = 80;
  const Instance inst = Generate(cfg);
  for (int w = 0; w < inst.num_populations(); ++w) {
    const double threshold = inst.generator->thresholds[w];
    if (threshold <= 50.0) continue;
    // An expanded threshold equals the second-nearest location's distance.
    std::vector<double> d;
    for (const Location& loc : inst.locations) {
      d.push_back(GridDistance(*inst.populations[w].coords, *loc.coords));
    }
    std::sort(d.begin(), d.end());
    EXPECT_DOUBLE_EQ(threshold, d[1]);
  }
}

TEST(GenerateTest, SymmetricNonnegativeCosts) {
  const Instance inst = Generate({});
  for (int i = 0; i < inst.num_locations(); ++i) {
    for (int j = 0; j < inst.num_locations(); ++j) {
      EXPECT_EQ(inst.edge_costs(i, j), inst.edge_costs(j, i));
      if (i != j) {
        EXPECT_GT(inst.edge_costs(i, j), 0.0);
      }
    }
  }
}

TEST(GenerateTest, DeterministicPerSeed) {
  GenConfig cfg;
  cfg.seed = 99;
  EXPECT_EQ(Generate(cfg), Generate(cfg));
  GenConfig other = cfg;
  other.seed = 100;
  EXPECT_FALSE(Generate(cfg) == Generate(other));
}

TEST(GenerateTest, RejectsBadConfigs) {
  GenConfig cfg;
  cfg.num_locations = 3;
  EXPECT_THROW(Generate(cfg), std::invalid_argument);
  cfg.num_locations = 5;
  cfg.q = 6;
  EXPECT_THROW(Generate(cfg), std::invalid_argument);
}

TEST(GeneratedAccessTest, ExponentialDecay) {
  EXPECT_NEAR(GeneratedAccess(30.0), std::exp(1.5), 1e-12);
  EXPECT_NEAR(GeneratedAccess(0.0), std::exp(2.5 - 1.0 / 30.0), 1e-12);
  EXPECT_DOUBLE_EQ(GridDistance({1, 2}, {4, -2}), 7.0);
}

DurationInputs TwoByTwoInputs() {
  DurationInputs in;
  in.walk = {{10, 40}, {20, 5}};
  in.transit = {{25, 60}, {35, 20}};
  in.drive = {{5, 12}, {8, 3}};
  in.other = {{10, 30}, {12, 8}};
  in.vehicle_fraction = {0.9, 0.5};
  in.work_weight = {{1.0}, {1.0}};
  in.work_walk = {{10}, {20}};
  in.v1 = {0.7, 0.6};
  return in;
}

TEST(BuildAccessParamsTest, PropensitiesAndPositiveValues) {
  const std::vector<AccessParams> params = BuildAccessParams(TwoByTwoInputs());
  ASSERT_EQ(params.size(), 2u);
  EXPECT_DOUBLE_EQ(params[0].v1, 0.7);
  EXPECT_NEAR(params[0].v0, 0.3, 1e-15);
  for (const AccessParams& p : params) {
    ASSERT_EQ(p.a.size(), 2u);
    for (double a : p.a) EXPECT_GT(a, 0.0);
  }
  // Location 0 is closer for population 0 by every mode.
  EXPECT_GT(params[0].a[0], params[0].a[1]);
  EXPECT_GT(params[1].a[1], params[1].a[0]);

  DurationInputs bad = TwoByTwoInputs();
  bad.v1[0] = 0.0;
  EXPECT_THROW(BuildAccessParams(bad), std::invalid_argument);
  bad = TwoByTwoInputs();
  bad.walk[1][0] = 0.0;
  EXPECT_THROW(BuildAccessParams(bad), std::invalid_argument);
}

TEST(BuildCoveringSetsTest, TwoOfFourRules) {
  const DurationInputs in = TwoByTwoInputs();
  // Population 0, location 0: walk 10 <= 15, drive 5 <= 15 -> covered.
  // Population 0, location 1: only drive 12 <= 15 -> not covered.
  // Population 1, location 0: drive 8, road 12/60*15 = 3 miles -> covered.
  // Population 1, location 1: walk, transit, drive, road all pass.
  const std::vector<std::vector<int>> sets = BuildCoveringSets(in, 1.0);
  EXPECT_EQ(sets[0], (std::vector<int>{0}));
  EXPECT_EQ(sets[1], (std::vector<int>{0, 1}));
  // Doubling every threshold lets population 0 reach location 1 by walk
  // (40 > 30), transit (60 <= 60), drive and road (30/60*15 = 7.5 <= 8).
  EXPECT_EQ(BuildCoveringSets(in, 2.0)[0], (std::vector<int>{0, 1}));
}

TEST(MarginalAccessTableTest, MatchesPublishedValues) {
  const double marginal[] = {0.027, 0.023, 0.019, 0.016, 0.013, 0.011, 0.009, 0.007,
                             0.006, 0.005, 0.004, 0.003, 0.003, 0.002, 0.002};
  const double benefit[] = {0.017, 0.014, 0.012, 0.010, 0.008, 0.007, 0.005, 0.005,
                            0.004, 0.003, 0.003, 0.002, 0.002, 0.001, 0.001};
  const std::vector<Table5Row> rows = Table5Family();
  ASSERT_EQ(rows.size(), 15u);
  double mean = 0.0;
  for (int k = 0; k < 15; ++k) {
    EXPECT_NEAR(rows[k].distance, 0.2 * (k + 1), 1e-12);
    EXPECT_NEAR(rows[k].marginal_increase, marginal[k], 0.0005);
    EXPECT_NEAR(rows[k].one_mile_benefit, benefit[k], 0.0005);
    mean += rows[k].one_mile_benefit / 15.0;
  }
  EXPECT_NEAR(mean, 0.0061, 0.0005);
}

}  // namespace
}  // namespace dblp
