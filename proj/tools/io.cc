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

#include "io.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "json.hpp"

namespace dblp::io {
namespace {

using Json = nlohmann::ordered_json;

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

Json PointToJson(const Point& p) { return Json::array({p.x, p.y}); }

Point PointFromJson(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw FormatError("coords must be a two-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw FormatError(where + " is missing \"" + key + "\"");
  }
  return obj.at(key);
}

Json MatrixToJson(const std::vector<std::vector<double>>& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

std::vector<std::vector<double>> MatrixFromJson(const Json& j, int rows,
                                                int cols,
                                                const std::string& name) {
  auto m = j.get<std::vector<std::vector<double>>>();
  bool ok = static_cast<int>(m.size()) == rows;
  for (const auto& row : m) ok = ok && static_cast<int>(row.size()) == cols;
  if (!ok) {
    throw FormatError("mode duration matrix \"" + name +
                      "\" must be populations by locations");
  }
  return m;
}

std::string JoinIds(const Instance& inst, std::span<const int> indices) {
  std::string out;
  for (size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += ';';
    out += inst.locations[indices[k]].id;
  }
  return out;
}

std::vector<int> LocationIndices(const Instance& inst, const Json& ids,
                                 const std::string& where) {
  std::vector<int> out;
  for (const Json& id : ids) {
    const auto name = id.get<std::string>();
    try {
      out.push_back(inst.LocationIndex(name));
    } catch (const std::out_of_range&) {
      throw FormatError(where + " names unknown location '" + name + "'");
    }
  }
  return out;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    cells.push_back(cell);
  }
  return cells;
}

Instance ParseInstance(const Json& doc) {
  if (Field(doc, "version", "instance").get<int>() != kSchemaVersion) {
    throw FormatError("unsupported instance version");
  }
  Instance inst;
  for (const Json& lj : Field(doc, "locations", "instance")) {
    Location loc;
    loc.id = Field(lj, "id", "location").get<std::string>();
    loc.fixed_cost = Field(lj, "fixed_cost", "location '" + loc.id + "'").get<double>();
    loc.required = lj.value("required", false);
    if (lj.contains("coords")) loc.coords = PointFromJson(lj.at("coords"));
    inst.locations.push_back(std::move(loc));
  }
  const int n = inst.num_locations();
  std::unordered_map<std::string, int> seen;
  for (int j = 0; j < n; ++j) {
    if (!seen.emplace(inst.locations[j].id, j).second) {
      throw FormatError("duplicate location id '" + inst.locations[j].id + "'");
    }
  }
  const auto start = Field(doc, "start", "instance").get<std::string>();
  if (!seen.count(start)) {
    throw FormatError("start names unknown location '" + start + "'");
  }
  inst.start = seen[start];

  const Json& edges = Field(doc, "edge_costs", "instance");
  if (!edges.is_array() || static_cast<int>(edges.size()) != n) {
    throw FormatError("edge_costs must have one row per location");
  }
  inst.edge_costs = EdgeCosts(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(edges[i].size()) != i) {
      throw FormatError("edge_costs row " + std::to_string(i) + " must hold " +
                        std::to_string(i) + " values");
    }
    for (int j = 0; j < i; ++j) inst.edge_costs.Set(i, j, edges[i][j].get<double>());
  }

  for (const Json& pj : Field(doc, "populations", "instance")) {
    VoterPopulation pop;
    pop.id = Field(pj, "id", "population").get<std::string>();
    const std::string where = "population '" + pop.id + "'";
    pop.weight = pj.value("weight", 0.0);
    pop.covering_set = LocationIndices(inst, Field(pj, "covering_set", where), where);
    std::sort(pop.covering_set.begin(), pop.covering_set.end());
    pop.access.v0 = Field(pj, "v0", where).get<double>();
    pop.access.v1 = Field(pj, "v1", where).get<double>();
    const Json& a = Field(pj, "a", where);
    if (!a.is_object()) throw FormatError(where + ": \"a\" must be an object");
    if (!a.empty()) {
      pop.access.a.assign(n, 0.0);
      std::vector<char> given(n, 0);
      for (const auto& [id, value] : a.items()) {
        if (!seen.count(id)) {
          throw FormatError(where + " has access for unknown location '" + id + "'");
        }
        pop.access.a[seen[id]] = value.get<double>();
        given[seen[id]] = 1;
      }
      for (int j = 0; j < n; ++j) {
        if (!given[j]) {
          throw FormatError(where + " lacks access for location '" +
                            inst.locations[j].id + "'");
        }
      }
    }
    if (pj.contains("coords")) pop.coords = PointFromJson(pj.at("coords"));
    inst.populations.push_back(std::move(pop));
  }
  std::unordered_map<std::string, int> pop_ids;
  for (const VoterPopulation& pop : inst.populations) {
    if (!pop_ids.emplace(pop.id, 0).second) {
      throw FormatError("duplicate population id '" + pop.id + "'");
    }
  }
  inst.q = Field(doc, "q", "instance").get<int>();

  const int m = inst.num_populations();
  if (doc.contains("mode_durations")) {
    const Json& md = doc.at("mode_durations");
    ModeDurations d;
    d.walk = MatrixFromJson(Field(md, "walk", "mode_durations"), m, n, "walk");
    d.transit = MatrixFromJson(Field(md, "transit", "mode_durations"), m, n, "transit");
    d.drive = MatrixFromJson(Field(md, "drive", "mode_durations"), m, n, "drive");
    d.other = MatrixFromJson(Field(md, "other", "mode_durations"), m, n, "other");
    d.vehicle_fraction =
        Field(md, "vehicle_fraction", "mode_durations").get<std::vector<double>>();
    if (static_cast<int>(d.vehicle_fraction.size()) != m) {
      throw FormatError("vehicle_fraction must have one value per population");
    }
    inst.mode_durations = std::move(d);
  }
  if (doc.contains("generator")) {
    const Json& g = doc.at("generator");
    GeneratorInfo info;
    info.seed = Field(g, "seed", "generator").get<std::uint64_t>();
    info.rng = g.value("rng", "");
    info.threshold_policy = g.value("threshold_policy", "");
    info.thresholds = g.value("thresholds", std::vector<double>{});
    inst.generator = std::move(info);
  }
  return inst;
}

}  // namespace

std::string InstanceToJson(const Instance& inst) {
  const int n = inst.num_locations();
  Json doc;
  doc["version"] = kSchemaVersion;
  Json locations = Json::array();
  for (const Location& loc : inst.locations) {
    Json lj;
    lj["id"] = loc.id;
    lj["fixed_cost"] = loc.fixed_cost;
    lj["required"] = loc.required;
    if (loc.coords) lj["coords"] = PointToJson(*loc.coords);
    locations.push_back(std::move(lj));
  }
  doc["locations"] = std::move(locations);
  doc["start"] = inst.locations.at(inst.start).id;

  Json edges = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < i; ++j) row.push_back(inst.edge_costs(i, j));
    edges.push_back(std::move(row));
  }
  doc["edge_costs"] = std::move(edges);

  Json populations = Json::array();
  for (const VoterPopulation& pop : inst.populations) {
    Json pj;
    pj["id"] = pop.id;
    pj["weight"] = pop.weight;
    Json cover = Json::array();
    for (int j : pop.covering_set) cover.push_back(inst.locations[j].id);
    pj["covering_set"] = std::move(cover);
    pj["v0"] = pop.access.v0;
    pj["v1"] = pop.access.v1;
    Json a = Json::object();
    for (size_t j = 0; j < pop.access.a.size(); ++j) {
      a[inst.locations[j].id] = pop.access.a[j];
    }
    pj["a"] = std::move(a);
    if (pop.coords) pj["coords"] = PointToJson(*pop.coords);
    populations.push_back(std::move(pj));
  }
  doc["populations"] = std::move(populations);
  doc["q"] = inst.q;

  if (inst.mode_durations) {
    const ModeDurations& md = *inst.mode_durations;
    doc["mode_durations"] = {{"walk", MatrixToJson(md.walk)},
                             {"transit", MatrixToJson(md.transit)},
                             {"drive", MatrixToJson(md.drive)},
                             {"other", MatrixToJson(md.other)},
                             {"vehicle_fraction", md.vehicle_fraction}};
  }
  if (inst.generator) {
    const GeneratorInfo& g = *inst.generator;
    doc["generator"] = {{"seed", g.seed},
                        {"rng", g.rng},
                        {"threshold_policy", g.threshold_policy},
                        {"thresholds", g.thresholds}};
  }
  return doc.dump(1) + "\n";
}

Instance InstanceFromJson(std::string_view text) {
  try {
    return ParseInstance(Json::parse(text));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("instance: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("error while reading '" + path + "'");
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw FileError("error while writing '" + path + "'");
}

Instance ReadInstance(const std::string& path) {
  return InstanceFromJson(ReadFile(path));
}

void WriteInstance(const std::string& path, const Instance& inst) {
  WriteFile(path, InstanceToJson(inst));
}

std::string SolutionToJson(const Instance& inst, const SolutionRecord& record) {
  const Solution& sol = record.solution;
  const SolveOptions& opt = record.options;
  Json doc;
  doc["version"] = kSchemaVersion;
  Json selected = Json::array();
  for (int j : sol.selected) selected.push_back(inst.locations[j].id);
  doc["selected"] = std::move(selected);
  Json tour = Json::array();
  for (int j : sol.tour) tour.push_back(inst.locations[j].id);
  doc["tour"] = std::move(tour);
  doc["total_cost"] = sol.total_cost;
  doc["fixed_cost"] = sol.fixed_cost;
  doc["operational_cost"] = sol.operational_cost;
  doc["min_access"] = sol.min_access;
  Json access = Json::object();
  for (size_t w = 0; w < sol.access_by_population.size(); ++w) {
    access[inst.populations.at(w).id] = sol.access_by_population[w];
  }
  doc["access_by_population"] = std::move(access);

  Json options;
  options["r"] = opt.r;
  options["q"] = record.q;
  options["objective"] =
      opt.objective_mode == ObjectiveMode::kMaxCoverage ? "max_coverage" : "min_cost";
  if (opt.objective_mode == ObjectiveMode::kMaxCoverage) {
    options["base_q"] = opt.base_coverage;
  }
  if (opt.budget) options["budget"] = *opt.budget;
  if (opt.tour_cost_cap) options["cmax"] = *opt.tour_cost_cap;
  if (opt.fixed_count) options["count"] = *opt.fixed_count;
  doc["options"] = std::move(options);
  return doc.dump(1) + "\n";
}

SolutionRecord SolutionFromJson(const Instance& inst, std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    SolutionRecord rec;
    Solution& sol = rec.solution;
    sol.selected = LocationIndices(inst, Field(doc, "selected", "solution"),
                                   "solution");
    std::sort(sol.selected.begin(), sol.selected.end());
    sol.tour = LocationIndices(inst, Field(doc, "tour", "solution"), "solution");
    sol.total_cost = Field(doc, "total_cost", "solution").get<double>();
    sol.fixed_cost = Field(doc, "fixed_cost", "solution").get<double>();
    sol.operational_cost = Field(doc, "operational_cost", "solution").get<double>();
    sol.min_access = Field(doc, "min_access", "solution").get<double>();
    const Json& access = Field(doc, "access_by_population", "solution");
    sol.access_by_population.assign(inst.num_populations(), 0.0);
    std::vector<char> given(inst.num_populations(), 0);
    for (const auto& [id, value] : access.items()) {
      int w;
      try {
        w = inst.PopulationIndex(id);
      } catch (const std::out_of_range&) {
        throw FormatError("solution names unknown population '" + id + "'");
      }
      sol.access_by_population[w] = value.get<double>();
      given[w] = 1;
    }
    if (std::count(given.begin(), given.end(), 0) > 0) {
      throw FormatError("solution lacks access values for some populations");
    }

    rec.q = inst.q;
    if (doc.contains("options")) {
      const Json& o = doc.at("options");
      rec.options.r = o.value("r", 0.0);
      rec.q = o.value("q", inst.q);
      if (o.value("objective", "min_cost") == "max_coverage") {
        rec.options.objective_mode = ObjectiveMode::kMaxCoverage;
        rec.options.base_coverage = o.value("base_q", 0);
      }
      if (o.contains("budget")) rec.options.budget = o.at("budget").get<double>();
      if (o.contains("cmax")) rec.options.tour_cost_cap = o.at("cmax").get<double>();
      if (o.contains("count")) rec.options.fixed_count = o.at("count").get<int>();
    }
    return rec;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("solution: ") + e.what());
  }
}

std::string FrontierCsv(const Instance& inst,
                        std::span<const FrontierEntry> entries) {
  std::vector<const FrontierEntry*> rows;
  for (const FrontierEntry& e : entries) rows.push_back(&e);
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) {
    return a->solution.min_access < b->solution.min_access;
  });
  std::string out =
      "r,min_access,total_cost,fixed_cost,operational_cost,num_boxes,selected,"
      "tour\n";
  for (const FrontierEntry* e : rows) {
    const Solution& s = e->solution;
    out += Fixed6(e->r_satisfied) + ',' + Fixed6(s.min_access) + ',' +
           Fixed6(s.total_cost) + ',' + Fixed6(s.fixed_cost) + ',' +
           Fixed6(s.operational_cost) + ',' + std::to_string(s.selected.size()) +
           ',' + JoinIds(inst, s.selected) + ',' + JoinIds(inst, s.tour) + '\n';
  }
  return out;
}

std::string CriteriaCsv(const CriteriaReport& report) {
  std::string out = "criterion,value\n";
  auto row = [&](const char* name, const std::string& value) {
    out += std::string(name) + ',' + value + '\n';
  };
  row("num_boxes", std::to_string(report.num_boxes));
  row("fixed_cost", Fixed6(report.fixed_cost));
  row("operational_cost", Fixed6(report.operational_cost));
  row("total_cost", Fixed6(report.total_cost));
  row("frac_covered_1", Fixed6(report.frac_covered_1));
  row("frac_covered_q", Fixed6(report.frac_covered_q));
  row("min_access", Fixed6(report.min_access));
  row("avg_access", Fixed6(report.avg_access));
  if (report.frac_nondriving_covered) {
    row("frac_nondriving_covered", Fixed6(*report.frac_nondriving_covered));
  }
  if (report.max_dist_closest) {
    row("max_dist_closest", Fixed6(*report.max_dist_closest));
    row("max_dist_third_closest", Fixed6(*report.max_dist_third_closest));
    row("avg_dist_closest", Fixed6(*report.avg_dist_closest));
    row("avg_dist_closest3", Fixed6(*report.avg_dist_closest3));
  }
  return out;
}

std::string DeviationCsv(const DeviationReport& report) {
  std::string out = "r,heuristic_cost,exact_cost,percent_deviation\n";
  for (const DeviationPair& p : report.pairs) {
    out += Fixed6(p.r) + ',' + Fixed6(p.heuristic_cost) + ',' +
           Fixed6(p.exact_cost) + ',' +
           Fixed6((p.heuristic_cost - p.exact_cost) / p.exact_cost * 100.0) + '\n';
  }
  return out;
}

std::vector<std::vector<double>> DistancesFromCsv(const Instance& inst,
                                                  std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("distance file is empty");
  const std::vector<std::string> header = SplitCsvLine(line);
  if (header.empty() || header[0] != "population") {
    throw FormatError("distance file must start with a \"population\" column");
  }
  std::vector<int> column(header.size(), -1);
  std::vector<char> has_column(inst.num_locations(), 0);
  for (size_t c = 1; c < header.size(); ++c) {
    try {
      column[c] = inst.LocationIndex(header[c]);
    } catch (const std::out_of_range&) {
      throw FormatError("distance file names unknown location '" + header[c] + "'");
    }
    has_column[column[c]] = 1;
  }
  if (std::count(has_column.begin(), has_column.end(), 0) > 0) {
    throw FormatError("distance file lacks a column for some location");
  }

  std::vector<std::vector<double>> out(inst.num_populations(),
                                       std::vector<double>(inst.num_locations()));
  std::vector<char> has_row(inst.num_populations(), 0);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw FormatError("distance row has the wrong number of cells");
    }
    int w;
    try {
      w = inst.PopulationIndex(cells[0]);
    } catch (const std::out_of_range&) {
      throw FormatError("distance file names unknown population '" + cells[0] + "'");
    }
    for (size_t c = 1; c < cells.size(); ++c) {
      try {
        out[w][column[c]] = std::stod(cells[c]);
      } catch (const std::exception&) {
        throw FormatError("distance value '" + cells[c] + "' is not a number");
      }
    }
    has_row[w] = 1;
  }
  if (std::count(has_row.begin(), has_row.end(), 0) > 0) {
    throw FormatError("distance file lacks a row for some population");
  }
  return out;
}

}  // namespace dblp::io
