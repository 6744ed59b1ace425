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

#include "btlcpd/dp_segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace btlcpd {

int default_min_seg(int num_items) { return std::max(2, num_items / 4); }

DpResult dp_detect(IntervalCosts& costs, double gamma,
                   const DpOptions& options) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("dp_detect: gamma < 0");
  if (options.min_seg < 1)
    throw std::invalid_argument("dp_detect: min_seg < 1");
  const int t_max = costs.length();
  if (t_max < 2) throw std::invalid_argument("dp_detect: need T >= 2");

  const int lookback = options.max_lookback > 0 ? options.max_lookback : t_max;
  if (t_max < options.min_seg) {
    // No split is admissible; the whole series is one segment.
    DpResult result{Segmentation({}, t_max), {}, 0.0};
    result.objective = dp_objective(costs, result.segmentation, gamma);
    result.trace.bellman.assign(t_max, std::numeric_limits<double>::infinity());
    result.trace.backpointers.assign(t_max, -1);
    result.trace.bellman[t_max - 1] = result.objective;
    result.trace.backpointers[t_max - 1] = 1;
    return result;
  }
  costs.fill_all(lookback, options.threads);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[r] is the optimal cost of the prefix of length r; best[0] = 0.
  std::vector<double> best(t_max + 1, kInf);
  std::vector<int> start(t_max + 1, -1);
  best[0] = 0.0;
  for (int r = 1; r <= t_max; ++r) {
    const int l_min = std::max(0, r - lookback);
    const int l_max = r - options.min_seg;
    for (int l = l_min; l <= l_max; ++l) {
      if (best[l] == kInf) continue;
      const double interval = costs.cost({l + 1, r});
      if (!std::isfinite(interval)) {
        throw std::runtime_error("dp_detect: non-finite interval objective");
      }
      const double candidate = best[l] + gamma + interval;
      if (candidate < best[r]) {
        best[r] = candidate;
        start[r] = l + 1;
      }
    }
  }
  if (best[t_max] == kInf) {
    throw std::invalid_argument(
        "dp_detect: no admissible partition for min_seg/max_lookback");
  }

  std::vector<int> change_points;
  for (int k = t_max; start[k] > 1;) {
    change_points.push_back(start[k]);
    k = start[k] - 1;
  }
  std::reverse(change_points.begin(), change_points.end());

  DpResult result{Segmentation(std::move(change_points), t_max), {}, 0.0};
  result.trace.bellman.assign(best.begin() + 1, best.end());
  result.trace.backpointers.assign(start.begin() + 1, start.end());
  result.objective = best[t_max];
  return result;
}

DpResult dp_detect(const ObservationSeries& series, double gamma,
                   const SolverConfig& solver, const DpOptions& options) {
  IntervalCosts costs(series, solver);
  return dp_detect(costs, gamma, options);
}

double dp_objective(IntervalCosts& costs, const Segmentation& segmentation,
                    double gamma) {
  if (segmentation.t_max() != costs.length()) {
    throw std::invalid_argument("dp_objective: segmentation length mismatch");
  }
  double total = 0.0;
  for (const TimeRange& segment : segmentation.segments()) {
    total = total + gamma + costs.cost(segment);
  }
  return total;
}

double dp_objective(const ObservationSeries& series,
                    const Segmentation& segmentation, double gamma,
                    const SolverConfig& solver) {
  IntervalCosts costs(series, solver);
  return dp_objective(costs, segmentation, gamma);
}

}  // namespace btlcpd
