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

// File formats used by the command-line tool.
//
// Instances are JSON documents (schema version 1):
//
//   {
//     "version": 1,
//     "locations": [{"id": "n0", "fixed_cost": 700.0, "required": true,
//                    "coords": [3.0, 4.0]}, ...],
//     "start": "n0",
//     "edge_costs": [[], [c10], [c20, c21], ...],   // lower triangle
//     "populations": [{"id": "w0", "weight": 812, "covering_set": ["n0"],
//                      "v0": 0.3, "v1": 0.7, "a": {"n0": 1.2, ...},
//                      "coords": [1.0, 2.0]}, ...],
//     "q": 2,
//     "mode_durations": {"walk": [[...]], "transit": ..., "drive": ...,
//                        "other": ..., "vehicle_fraction": [...]},
//     "generator": {"seed": 1, "rng": "mt19937_64",
//                   "threshold_policy": "per-population",
//                   "thresholds": [...]}
//   }
//
// "coords", "mode_durations" and "generator" are optional. Duration matrices
// are indexed [population][location]. Numbers are written with enough digits
// to read back bit-identical.

#ifndef DBLP_TOOLS_IO_H_
#define DBLP_TOOLS_IO_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dblp/eval.h"
#include "dblp/heuristic.h"
#include "dblp/model.h"

namespace dblp::io {

inline constexpr int kSchemaVersion = 1;

// Malformed or inconsistent file contents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file that cannot be opened, read or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string InstanceToJson(const Instance& inst);
Instance InstanceFromJson(std::string_view text);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

Instance ReadInstance(const std::string& path);
void WriteInstance(const std::string& path, const Instance& inst);

// A solution together with the settings it was solved under, so that it can
// be validated again later.
struct SolutionRecord {
  Solution solution;
  SolveOptions options;
  int q = 0;
};

// Ids replace location and population indices. Parsing keeps the stored cost
// and access figures as written; it does not recompute them.
std::string SolutionToJson(const Instance& inst, const SolutionRecord& record);
SolutionRecord SolutionFromJson(const Instance& inst, std::string_view text);

// Header r,min_access,total_cost,fixed_cost,operational_cost,num_boxes,
// selected,tour; rows sorted by min_access; id lists joined by ';'.
std::string FrontierCsv(const Instance& inst,
                        std::span<const FrontierEntry> entries);

// Header criterion,value. Optional criteria are omitted when absent.
std::string CriteriaCsv(const CriteriaReport& report);

// Header r,heuristic_cost,exact_cost,percent_deviation; one row per pair.
std::string DeviationCsv(const DeviationReport& report);

// Distance matrix CSV: header "population,<location ids>", then one row per
// population id. Rows and columns may come in any order; the result is
// indexed [population][location] of `inst`.
std::vector<std::vector<double>> DistancesFromCsv(const Instance& inst,
                                                  std::string_view text);

}  // namespace dblp::io

#endif  // DBLP_TOOLS_IO_H_
