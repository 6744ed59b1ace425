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

// Local refinement of preliminary change points.
//
// With neighbours prev = eta_{k-1} and next = eta_{k+1} (1 and T at the ends),
// change point k is re-estimated inside the window
//
//   s = floor(2 prev / 3 + eta_k / 3),   e = ceil(eta_k / 3 + 2 next / 3)
//
// as the split c in {s + 2, ..., e} minimising the two-sample cost
//
//   L(theta_hat([s + 1, c - 1])) + L(theta_hat([c, e])).
//
// c is the first index of the right-hand sample, i.e. the first index of the
// new regime. Each window uses the preliminary neighbours, not refined ones.

#ifndef BTLCPD_LOCAL_REFINE_HPP_
#define BTLCPD_LOCAL_REFINE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "btlcpd/interval_costs.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

struct RefineOptions {
  // Scan every stride-th candidate split; 1 scans all of them.
  int stride = 1;
};

struct RefineWindow {
  int s = 0;
  int e = 0;
};

struct RefineResult {
  Segmentation segmentation;
  // Per input change point: scan objective at the refined and preliminary
  // locations (the latter is NaN if the preliminary point lies outside the
  // scan range).
  std::vector<double> refined_cost;
  std::vector<double> prelim_cost;
  std::vector<RefineWindow> windows;
  // Non-fatal events such as duplicate refined points collapsing.
  std::vector<std::string> warnings;
};

// Window for change point `eta` between neighbours `prev` and `next`,
// clamped to [1, t_max].
RefineWindow refine_window(int prev, int eta, int next, int t_max);

// Throws std::invalid_argument when the preliminary points are not strictly
// increasing or a window is too narrow (e - s < 3).
RefineResult refine(IntervalCosts& costs, const Segmentation& prelim,
                    const RefineOptions& options = {});
Segmentation refine(const ObservationSeries& series, const Segmentation& prelim,
                    const SolverConfig& solver);

}  // namespace btlcpd

#endif  // BTLCPD_LOCAL_REFINE_HPP_
