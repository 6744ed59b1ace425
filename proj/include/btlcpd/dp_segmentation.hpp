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

// L0-penalised segmentation by dynamic programming.
//
// Minimises, over all partitions P of [1, T] into consecutive intervals,
//
//   sum_{I in P} L(theta_hat(I), I) + gamma * |P|
//
// with the Bellman recursion
//
//   b[0] = 0,   b[r] = min_{l < r} b[l] + gamma + L(theta_hat((l, r]), (l, r]).
//
// Candidates are scanned in increasing l and only a strict improvement
// replaces the incumbent, so ties resolve to the earliest l.

#ifndef BTLCPD_DP_SEGMENTATION_HPP_
#define BTLCPD_DP_SEGMENTATION_HPP_

#include <vector>

#include "btlcpd/interval_costs.hpp"
#include "btlcpd/mle_solver.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

struct DpOptions {
  // Segments shorter than this are never formed. 1 admits every partition.
  int min_seg = 1;
  // Upper bound on segment length; <= 0 means unbounded.
  int max_lookback = 0;
  // Workers used to fill the interval cost table; <= 0 uses all cores.
  int threads = 0;
};

// max(2, n / 4), the minimum segment length used by the command-line tools.
int default_min_seg(int num_items);

struct DpTrace {
  // bellman[r - 1] is the optimal penalised cost of the prefix [1, r].
  std::vector<double> bellman;
  // backpointers[r - 1] is the first time index of the last segment in that
  // optimal prefix partition; 1 means the prefix is a single segment. -1
  // marks prefixes with no admissible partition.
  std::vector<int> backpointers;
};

struct DpResult {
  Segmentation segmentation;
  DpTrace trace;
  double objective = 0.0;  // bellman[T - 1]
};

// Throws std::invalid_argument for gamma < 0, min_seg < 1, T < 2 or when no
// admissible partition exists; std::runtime_error on a non-finite cost.
DpResult dp_detect(IntervalCosts& costs, double gamma,
                   const DpOptions& options);
DpResult dp_detect(const ObservationSeries& series, double gamma,
                   const SolverConfig& solver, const DpOptions& options);

// Penalised objective of an arbitrary segmentation, accumulated in the same
// order as the recursion so it reproduces bellman[T - 1] exactly for the
// optimal segmentation.
double dp_objective(IntervalCosts& costs, const Segmentation& segmentation,
                    double gamma);
double dp_objective(const ObservationSeries& series,
                    const Segmentation& segmentation, double gamma,
                    const SolverConfig& solver);

}  // namespace btlcpd

#endif  // BTLCPD_DP_SEGMENTATION_HPP_
