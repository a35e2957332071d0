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

#include "dblp/tsp.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dblp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> OthersThan(std::span<const int> nodes, int start) {
  std::vector<int> others;
  bool found = false;
  for (int v : nodes) {
    if (v == start) {
      found = true;
    } else {
      others.push_back(v);
    }
  }
  if (!found) throw std::invalid_argument("tour nodes must contain start");
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  return others;
}

}  // namespace

std::vector<int> HeldKarpTour(const EdgeCosts& costs, std::span<const int> nodes,
                              int start) {
  const std::vector<int> others = OthersThan(nodes, start);
  const int k = static_cast<int>(others.size());
  if (k <= 2) {
    std::vector<int> tour{start};
    tour.insert(tour.end(), others.begin(), others.end());
    return tour;
  }
  if (k > 20) throw std::invalid_argument("too many nodes for Held-Karp");

  const size_t subsets = size_t{1} << k;
  // best[mask * k + j]: cheapest path from start through `mask`, ending at j.
  std::vector<double> best(subsets * k, kInf);
  std::vector<int> parent(subsets * k, -1);
  for (int j = 0; j < k; ++j) best[(size_t{1} << j) * k + j] = costs(start, others[j]);
  for (size_t mask = 1; mask < subsets; ++mask) {
    for (int j = 0; j < k; ++j) {
      if (!(mask & (size_t{1} << j))) continue;
      const double here = best[mask * k + j];
      if (here == kInf) continue;
      for (int next = 0; next < k; ++next) {
        if (mask & (size_t{1} << next)) continue;
        const size_t grown = mask | (size_t{1} << next);
        const double cand = here + costs(others[j], others[next]);
        if (cand < best[grown * k + next]) {
          best[grown * k + next] = cand;
          parent[grown * k + next] = j;
        }
      }
    }
  }
  const size_t full = subsets - 1;
  int last = 0;
  double total = kInf;
  for (int j = 0; j < k; ++j) {
    const double cand = best[full * k + j] + costs(others[j], start);
    if (cand < total) {
      total = cand;
      last = j;
    }
  }
  std::vector<int> reversed;
  size_t mask = full;
  for (int j = last; j >= 0;) {
    reversed.push_back(others[j]);
    const int prev = parent[mask * k + j];
    mask &= ~(size_t{1} << j);
    j = prev;
  }
  std::vector<int> tour{start};
  tour.insert(tour.end(), reversed.rbegin(), reversed.rend());
  return tour;
}

std::vector<int> TwoOptTour(const EdgeCosts& costs, std::span<const int> nodes,
                            int start) {
  std::vector<int> others = OthersThan(nodes, start);
  std::vector<int> tour{start};
  std::vector<char> used(others.size(), 0);
  for (size_t step = 0; step < others.size(); ++step) {
    const int from = tour.back();
    size_t pick = 0;
    double pick_cost = kInf;
    for (size_t i = 0; i < others.size(); ++i) {
      if (used[i]) continue;
      const double c = costs(from, others[i]);
      if (c < pick_cost) {
        pick_cost = c;
        pick = i;
      }
    }
    used[pick] = 1;
    tour.push_back(others[pick]);
  }

  const int k = static_cast<int>(tour.size());
  if (k < 4) return tour;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < k - 1; ++i) {
      for (int j = i + 2; j < k; ++j) {
        if (i == 0 && j == k - 1) continue;
        const int a = tour[i];
        const int b = tour[i + 1];
        const int c = tour[j];
        const int d = tour[(j + 1) % k];
        const double delta =
            costs(a, c) + costs(b, d) - costs(a, b) - costs(c, d);
        if (delta < -1e-10) {
          std::reverse(tour.begin() + i + 1, tour.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  return tour;
}

std::vector<int> CanonicalTour(std::span<const int> tour, int start) {
  const auto it = std::find(tour.begin(), tour.end(), start);
  if (it == tour.end()) throw std::invalid_argument("tour must contain start");
  std::vector<int> out(tour.begin(), tour.end());
  std::rotate(out.begin(), out.begin() + (it - tour.begin()), out.end());
  if (out.size() > 2 && out.back() < out[1]) {
    std::reverse(out.begin() + 1, out.end());
  }
  return out;
}

}  // namespace dblp
