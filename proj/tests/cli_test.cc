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

#include "cli.h"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "dblp/heuristic.h"
#include "gtest/gtest.h"
#include "io.h"
#include "json.hpp"

namespace dblp::cli {
namespace {

namespace fs = std::filesystem;

std::string Data(const std::string& name) {
  return std::string(DBLP_TEST_DATA_DIR) + "/" + name;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dblp_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  std::vector<std::vector<std::string>> Rows(const std::string& csv_path) {
    std::istringstream in(io::ReadFile(csv_path));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::istringstream cells_in(line);
      std::string cell;
      while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, GenerateWritesRequestedSizesDeterministically) {
  ASSERT_EQ(Run({"generate", "--seed", "1", "--populations", "100", "--locations",
                 "50", "--out", Path("a.json")}),
            kExitOk);
  ASSERT_EQ(Run({"generate", "--seed", "1", "--populations", "100", "--locations",
                 "50", "--out", Path("b.json")}),
            kExitOk);
  const Instance inst = io::ReadInstance(Path("a.json"));
  EXPECT_EQ(inst.num_populations(), 100);
  EXPECT_EQ(inst.num_locations(), 50);
  EXPECT_EQ(io::ReadFile(Path("a.json")), io::ReadFile(Path("b.json")));
}

TEST_F(CliTest, GenerateRejectsTooFewLocationsAndBadPaths) {
  EXPECT_EQ(Run({"generate", "--locations", "3", "--out", Path("x.json")}), kExitUsage);
  EXPECT_EQ(Run({"generate", "--out", Path("no/such/dir/x.json")}), kExitUsage);
  EXPECT_EQ(Run({"generate"}), kExitUsage);
  EXPECT_EQ(Run({"bogus"}), kExitUsage);
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);
}

TEST_F(CliTest, SolveMatchesBruteForceFixture) {
  ASSERT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--r", "0", "--q", "1",
                 "--out", Path("sol.json")}),
            kExitOk)
      << err_.str();
  const auto oracle = nlohmann::json::parse(io::ReadFile(Data("tiny_oracle.json")));
  const auto sol = nlohmann::json::parse(io::ReadFile(Path("sol.json")));
  EXPECT_EQ(sol["selected"], oracle["selected"]);
  EXPECT_NEAR(sol["total_cost"].get<double>(), oracle["total_cost"].get<double>(), 1e-6);
  EXPECT_NE(out_.str().find("total cost"), std::string::npos);
}

TEST_F(CliTest, SolveReportsUnreachableAccessAsInfeasible) {
  // Best achievable minimum access on the fixture, from selecting everything.
  const Instance inst = io::ReadInstance(Data("tiny.json"));
  std::vector<int> all(inst.num_locations());
  for (int j = 0; j < inst.num_locations(); ++j) all[j] = j;
  ASSERT_LT(MinAccess(inst, all), 0.99);
  EXPECT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--r", "0.99"}),
            kExitInfeasible);
  EXPECT_NE(err_.str().find("population"), std::string::npos);
}

TEST_F(CliTest, SolveVariationFlags) {
  ASSERT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--count", "5", "--out",
                 Path("c3.json")}),
            kExitOk)
      << err_.str();
  const auto sol = nlohmann::json::parse(io::ReadFile(Path("c3.json")));
  EXPECT_EQ(sol["selected"].size(), 5u);
  EXPECT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--count", "3"}), kExitInfeasible);

  EXPECT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--max-coverage",
                 "--budget", "600", "--q", "1"}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--cmax", "1"}),
            kExitInfeasible);
  EXPECT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--r", "1.5"}), kExitUsage);
  EXPECT_EQ(Run({"solve", "--instance", Path("missing.json")}), kExitUsage);
}

TEST_F(CliTest, FrontierHeuristicRowsAreNondominated) {
  ASSERT_EQ(Run({"frontier", "--instance", Data("n20.json"), "--out", Path("f.csv")}),
            kExitOk);
  const auto rows = Rows(Path("f.csv"));
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "r");
  std::vector<CostAccess> pts;
  for (size_t k = 1; k < rows.size(); ++k) {
    pts.push_back({std::stod(rows[k][2]), std::stod(rows[k][1])});
  }
  EXPECT_EQ(Nondominated(pts).size(), pts.size());
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(),
                             [](auto& a, auto& b) { return a.access < b.access; }));
}

TEST_F(CliTest, FrontierExactSweepNeverCostlier) {
  ASSERT_EQ(Run({"frontier", "--instance", Data("n20.json"), "--method", "exact-sweep",
                 "--out", Path("x.csv")}),
            kExitOk)
      << err_.str();
  const auto matched = Rows(Path("x_matched.csv"));
  ASSERT_GE(matched.size(), 2u);
  for (size_t k = 1; k < matched.size(); ++k) {
    EXPECT_LE(std::stod(matched[k][2]), std::stod(matched[k][1]) + 1e-6);
  }
  EXPECT_EQ(Rows(Path("x.csv"))[0].size(), 8u);
}

TEST_F(CliTest, FrontierHugeEpsilonGivesFewFeasibleRows) {
  ASSERT_EQ(Run({"frontier", "--instance", Data("n20.json"), "--epsilon", "0.5",
                 "--out", Path("e.csv")}),
            kExitOk);
  const auto coarse = Rows(Path("e.csv"));
  EXPECT_GE(coarse.size(), 2u);
  EXPECT_EQ(Run({"frontier", "--instance", Data("n20.json"), "--epsilon", "0",
                 "--out", Path("z.csv")}),
            kExitUsage);
  EXPECT_EQ(Run({"frontier", "--instance", Data("n20.json"), "--method", "magic",
                 "--out", Path("z.csv")}),
            kExitUsage);
}

TEST_F(CliTest, CompareReportsFiniteDeviation) {
  ASSERT_EQ(Run({"compare", "--instance", Data("n20.json"), "--out", Path("d.csv")}),
            kExitOk);
  const auto rows = Rows(Path("d.csv"));
  ASSERT_GE(rows.size(), 2u);
  for (size_t k = 1; k < rows.size(); ++k) {
    EXPECT_GE(std::stod(rows[k][3]), -1e-9);
  }
  EXPECT_NE(out_.str().find("mean deviation"), std::string::npos);
  EXPECT_EQ(Run({"compare", "--instance", Data("n20.json"), "--max-locations", "10",
                 "--out", Path("d2.csv")}),
            kExitUsage);
  EXPECT_EQ(Run({"compare", "--out", Path("d3.csv")}), kExitUsage);
}

TEST_F(CliTest, EvaluateRoundTripAndDistanceRows) {
  ASSERT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--out", Path("s.json")}),
            kExitOk);
  const std::string summary = out_.str();
  ASSERT_EQ(Run({"evaluate", "--instance", Data("tiny.json"), "--solution",
                 Path("s.json"), "--out", Path("c.csv")}),
            kExitOk);
  EXPECT_EQ(out_.str(), summary.substr(0, summary.find("solved in")));
  EXPECT_EQ(io::ReadFile(Path("c.csv")), io::ReadFile(Data("tiny_criteria.csv")));

  ASSERT_EQ(Run({"evaluate", "--instance", Data("tiny.json"), "--solution",
                 Path("s.json"), "--distances", Data("tiny_distances.csv"), "--out",
                 Path("cd.csv")}),
            kExitOk);
  EXPECT_EQ(Rows(Path("cd.csv")).size(), Rows(Path("c.csv")).size() + 4);
}

TEST_F(CliTest, EvaluateFlagsTamperedAndMismatchedSolutions) {
  ASSERT_EQ(Run({"solve", "--instance", Data("tiny.json"), "--out", Path("s.json")}),
            kExitOk);
  auto sol = nlohmann::json::parse(io::ReadFile(Path("s.json")));
  sol["selected"].erase(sol["selected"].size() - 1);
  io::WriteFile(Path("bad.json"), sol.dump());
  EXPECT_EQ(Run({"evaluate", "--instance", Data("tiny.json"), "--solution",
                 Path("bad.json")}),
            kExitInvalid);
  EXPECT_NE(err_.str().find("invalid solution"), std::string::npos);

  EXPECT_EQ(Run({"evaluate", "--instance", Data("n20.json"), "--solution",
                 Path("s.json")}),
            kExitUsage);
}

}  // namespace
}  // namespace dblp::cli
