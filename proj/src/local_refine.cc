// Copyright 2026 The btlcpd Authors.
//
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

#include "btlcpd/local_refine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace btlcpd {

RefineWindow refine_window(int prev, int eta, int next, int t_max) {
  // floor and ceil of the (2/3, 1/3) weighted endpoints; all inputs >= 1.
  int s = (2 * prev + eta) / 3;
  int e = (eta + 2 * next + 2) / 3;
  s = std::clamp(s, 1, t_max);
  e = std::clamp(e, 1, t_max);
  return {s, e};
}

RefineResult refine(IntervalCosts& costs, const Segmentation& prelim,
                    const RefineOptions& options) {
  if (options.stride < 1) throw std::invalid_argument("refine: stride < 1");
  const int t_max = costs.length();
  if (prelim.t_max() != t_max) {
    throw std::invalid_argument("refine: segmentation length mismatch");
  }
  const std::vector<int>& points = prelim.change_points();
  const int num = static_cast<int>(points.size());

  RefineResult result;
  std::vector<int> refined;
  refined.reserve(num);
  for (int k = 0; k < num; ++k) {
    const int prev = k == 0 ? 1 : points[k - 1];
    const int next = k + 1 == num ? t_max : points[k + 1];
    const RefineWindow window = refine_window(prev, points[k], next, t_max);
    if (window.e - window.s < 3) {
      throw std::invalid_argument("refine: scan window too narrow around " +
                                  std::to_string(points[k]));
    }
    costs.fill_row(window.s + 1, window.e - 1);
    costs.fill_column(window.e, window.s + 2);

    auto split_cost = [&](int c) {
      return costs.cost({window.s + 1, c - 1}) + costs.cost({c, window.e});
    };
    double best = std::numeric_limits<double>::infinity();
    int best_split = window.s + 2;
    for (int c = window.s + 2; c <= window.e; c += options.stride) {
      const double value = split_cost(c);
      if (value < best) {
        best = value;
        best_split = c;
      }
    }
    const bool prelim_in_range =
        points[k] >= window.s + 2 && points[k] <= window.e;
    result.prelim_cost.push_back(
        prelim_in_range ? split_cost(points[k])
                        : std::numeric_limits<double>::quiet_NaN());
    result.refined_cost.push_back(best);
    result.windows.push_back(window);
    refined.push_back(best_split);
  }

  std::sort(refined.begin(), refined.end());
  const auto last = std::unique(refined.begin(), refined.end());
  if (last != refined.end()) {
    result.warnings.push_back(
        "refine: " + std::to_string(refined.end() - last) +
        " refined change point(s) coincided and were merged");
    refined.erase(last, refined.end());
  }
  result.segmentation = Segmentation(std::move(refined), t_max);
  return result;
}

Segmentation refine(const ObservationSeries& series, const Segmentation& prelim,
                    const SolverConfig& solver) {
  IntervalCosts costs(series, solver);
  return refine(costs, prelim).segmentation;
}

}  // namespace btlcpd
