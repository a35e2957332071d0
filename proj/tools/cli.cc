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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "dblp/eval.h"
#include "dblp/exact.h"
#include "dblp/gen.h"
#include "dblp/heuristic.h"
#include "io.h"

namespace dblp::cli {
namespace {

// A failure mapped to an exit code by Run.
struct CommandError {
  int code;
  std::string message;
};

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

void PrintSummary(std::ostream& out, const CriteriaReport& c) {
  out << "boxes: " << c.num_boxes << "\n"
      << "total cost: " << Format("%.2f", c.total_cost)
      << " (fixed " << Format("%.2f", c.fixed_cost) << ", operational "
      << Format("%.2f", c.operational_cost) << ")\n"
      << "covered once: " << Format("%.4f", c.frac_covered_1)
      << ", covered q times: " << Format("%.4f", c.frac_covered_q) << "\n"
      << "access: min " << Format("%.6f", c.min_access) << ", average "
      << Format("%.6f", c.avg_access) << "\n";
}

std::string MatchedPath(const std::string& out_path) {
  std::filesystem::path p(out_path);
  std::filesystem::path matched = p.parent_path() /
                                  (p.stem().string() + "_matched.csv");
  return matched.string();
}

struct GenerateFlags {
  std::uint64_t seed = 1;
  int populations = 100;
  int locations = 30;
  int q = 2;
  std::string out;
};

int Generate(const GenerateFlags& f, std::ostream& out) {
  if (f.locations < 4) throw CommandError{kExitUsage, "--locations must be at least 4"};
  GenConfig cfg;
  cfg.seed = f.seed;
  cfg.num_populations = f.populations;
  cfg.num_locations = f.locations;
  cfg.q = f.q;
  const Instance inst = dblp::Generate(cfg);
  io::WriteInstance(f.out, inst);
  out << "wrote " << inst.num_locations() << " locations and "
      << inst.num_populations() << " populations to " << f.out << "\n";
  return kExitOk;
}

struct SolveFlags {
  std::string instance;
  double r = 0.0;
  std::optional<int> q;
  std::optional<double> budget;
  std::optional<double> cmax;
  std::optional<int> count;
  bool max_coverage = false;
  int base_q = 0;
  std::string out;
};

int Solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  Instance inst = io::ReadInstance(f.instance);
  if (f.q) inst.q = *f.q;
  if (f.r < 0.0 || f.r >= 1.0) throw CommandError{kExitUsage, "--r must lie in [0, 1)"};
  SolveOptions options;
  options.r = f.r;
  options.budget = f.budget;
  options.tour_cost_cap = f.cmax;
  options.fixed_count = f.count;
  if (f.max_coverage) {
    options.objective_mode = ObjectiveMode::kMaxCoverage;
    options.base_coverage = f.base_q;
  }

  const auto start = std::chrono::steady_clock::now();
  const Solution sol = SolveExact(inst, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::vector<std::string> diags = ValidateSolution(inst, options, sol);
  for (const std::string& d : diags) err << "invalid solution: " << d << "\n";
  if (!f.out.empty()) {
    io::WriteFile(f.out, io::SolutionToJson(inst, {sol, options, inst.q}));
  }
  PrintSummary(out, Criteria(inst, sol));
  out << "solved in " << Format("%.3f", seconds) << " s\n";
  return diags.empty() ? kExitOk : kExitInvalid;
}

struct FrontierFlags {
  std::string instance;
  std::optional<double> epsilon;
  std::string method = "heuristic";
  std::string out;
};

int RunFrontier(const FrontierFlags& f, std::ostream& out) {
  const Instance inst = io::ReadInstance(f.instance);
  if (f.epsilon && !(*f.epsilon > 0.0)) {
    throw CommandError{kExitUsage, "--epsilon must be positive"};
  }
  const Frontier heuristic = BuildFrontier(inst, f.epsilon);
  if (f.method == "heuristic") {
    io::WriteFile(f.out, io::FrontierCsv(inst, heuristic.entries));
    out << heuristic.entries.size() << " frontier entries after "
        << heuristic.iterations << " iterations\n";
    return kExitOk;
  }
  const ExactSweepResult sweep = ExactSweep(inst, heuristic);
  const DeviationReport dev = CostDeviation(sweep.matched, heuristic);
  const std::string matched = MatchedPath(f.out);
  io::WriteFile(f.out, io::FrontierCsv(inst, sweep.frontier.entries));
  io::WriteFile(matched, io::DeviationCsv(dev));
  out << sweep.frontier.entries.size() << " exact frontier entries from "
      << sweep.matched.size() << " solves; matched costs in " << matched << "\n";
  return kExitOk;
}

struct CompareFlags {
  std::string instance;
  std::optional<double> epsilon;
  int max_locations = 60;
  std::string out;
};

int Compare(const CompareFlags& f, std::ostream& out) {
  const Instance inst = io::ReadInstance(f.instance);
  if (inst.num_locations() > f.max_locations) {
    throw CommandError{kExitUsage,
                       "instance has " + std::to_string(inst.num_locations()) +
                           " locations; raise --max-locations to compare"};
  }
  const DeviationReport rep = CompareMethods(inst, f.epsilon);
  io::WriteFile(f.out, io::DeviationCsv(rep));
  out << "heuristic solutions: " << rep.heuristic_solutions
      << ", exact solutions: " << rep.exact_solutions << ", mean deviation: "
      << (rep.mean_percent_deviation
              ? Format("%.4f", *rep.mean_percent_deviation) + "%"
              : std::string("n/a"))
      << ", heuristic " << Format("%.3f", rep.heuristic_seconds) << " s, exact "
      << Format("%.3f", rep.exact_seconds) << " s\n";
  return kExitOk;
}

struct EvaluateFlags {
  std::string instance;
  std::string solution;
  std::string distances;
  std::string out;
};

int Evaluate(const EvaluateFlags& f, std::ostream& out, std::ostream& err) {
  Instance inst = io::ReadInstance(f.instance);
  const io::SolutionRecord rec =
      io::SolutionFromJson(inst, io::ReadFile(f.solution));
  inst.q = rec.q;
  std::optional<std::vector<std::vector<double>>> distances;
  if (!f.distances.empty()) {
    distances = io::DistancesFromCsv(inst, io::ReadFile(f.distances));
  }

  const std::vector<std::string> diags =
      ValidateSolution(inst, rec.options, rec.solution);
  for (const std::string& d : diags) err << "invalid solution: " << d << "\n";
  if (!diags.empty()) return kExitInvalid;

  const CriteriaReport report =
      Criteria(inst, rec.solution, distances ? &*distances : nullptr);
  const std::string csv = io::CriteriaCsv(report);
  if (f.out.empty()) {
    out << csv;
  } else {
    io::WriteFile(f.out, csv);
    PrintSummary(out, report);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Ballot drop box location planning"};
  app.require_subcommand(1);

  GenerateFlags gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--populations", gen.populations, "Number of voter populations")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--locations", gen.locations, "Number of candidate locations");
  generate->add_option("--q", gen.q, "Required coverage per population")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--out", gen.out, "Instance file to write")->required();

  SolveFlags sf;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance to optimality");
  solve->add_option("--instance", sf.instance, "Instance file")->required();
  solve->add_option("--r", sf.r, "Minimum access bound");
  solve->add_option("--q", sf.q, "Override the instance's coverage level")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--budget", sf.budget, "Cap on total cost");
  solve->add_option("--cmax", sf.cmax, "Cap on operational cost");
  solve->add_option("--count", sf.count, "Exact number of boxes")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--max-coverage", sf.max_coverage,
                  "Maximize weight covered q times instead of minimizing cost");
  solve->add_option("--base-q", sf.base_q,
                    "Coverage kept for every population under --max-coverage")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--out", sf.out, "Solution file to write");

  FrontierFlags ff;
  CLI::App* frontier = app.add_subcommand("frontier", "Trace the cost/access frontier");
  frontier->add_option("--instance", ff.instance, "Instance file")->required();
  frontier->add_option("--epsilon", ff.epsilon, "Access step");
  frontier->add_option("--method", ff.method, "heuristic or exact-sweep")
      ->check(CLI::IsMember({"heuristic", "exact-sweep"}));
  frontier->add_option("--out", ff.out, "Frontier CSV to write")->required();

  CompareFlags cf;
  CLI::App* compare = app.add_subcommand("compare", "Heuristic versus exact costs");
  compare->add_option("--instance", cf.instance, "Instance file")->required();
  compare->add_option("--epsilon", cf.epsilon, "Access step");
  compare->add_option("--max-locations", cf.max_locations,
                      "Largest instance the exact sweep is run on");
  compare->add_option("--out", cf.out, "Deviation CSV to write")->required();

  EvaluateFlags ef;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Report criteria for a solution");
  evaluate->add_option("--instance", ef.instance, "Instance file")->required();
  evaluate->add_option("--solution", ef.solution, "Solution file")->required();
  evaluate->add_option("--distances", ef.distances, "Population by location distance CSV");
  evaluate->add_option("--out", ef.out, "Criteria CSV to write");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*generate) return Generate(gen, out);
    if (*solve) return Solve(sf, out, err);
    if (*frontier) return RunFrontier(ff, out);
    if (*compare) return Compare(cf, out);
    return Evaluate(ef, out, err);
  } catch (const CommandError& e) {
    err << e.message << "\n";
    return e.code;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const io::FileError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dblp::cli
