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

// Localisation metrics and cross-validated tuning.

#ifndef BTLCPD_EVALUATION_HPP_
#define BTLCPD_EVALUATION_HPP_

#include <vector>

#include "btlcpd/mle_solver.hpp"
#include "btlcpd/pipeline.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

// Hausdorff distance between the change point sets. 0 when both are empty,
// +infinity when exactly one is.
double hausdorff(const Segmentation& est, const Segmentation& truth);

enum class KCount { kUnder, kExact, kOver };
KCount count_k(const Segmentation& est, const Segmentation& truth);
const char* KCountName(KCount count);  // "under" | "exact" | "over"

// Odd times form the training half and even times the test half, both
// re-indexed from 1. Training index k is original time 2k - 1 and test index
// k is original time 2k.
struct SplitSeries {
  ObservationSeries train;
  ObservationSeries test;
  int original_length = 0;

  // Change points on the training axis mapped to original times.
  Segmentation to_original(const Segmentation& train_segmentation) const;
};

// Throws std::invalid_argument when T < 2.
SplitSeries odd_even_split(const ObservationSeries& series);

// Held-out loss of a training-axis segmentation: theta is fitted on each
// training segment and scored on the test observations of the same segment.
double test_loss(const SplitSeries& split, const Segmentation& train_seg,
                 const SolverConfig& solver);

struct CvRow {
  double gamma = 0.0;
  int k_hat = 0;
  double test_loss = 0.0;
};

struct CvResult {
  double best_gamma = 0.0;
  Segmentation segmentation;  // selected, on the original time axis
  std::vector<CvRow> table;   // grid order
};

// 2.5 * 2^(k/4) for k = 0..24: four points per doubling from 2.5 to 160.
// Used for both the DP penalty and the WBS threshold.
std::vector<double> default_gamma_grid();

// Detects on the training half for every gamma (options.gamma is ignored) and
// keeps the one with the smallest test loss; ties go to the smaller gamma.
// Throws std::invalid_argument on an empty grid.
CvResult cv_select(const ObservationSeries& series,
                   const std::vector<double>& gamma_grid,
                   const DetectOptions& options, const SolverConfig& solver);

// (K + 1) p_lb^-2 (n d_max / lambda2) log(T n), i.e. the penalty scale with a
// unit constant. Diagnostic only.
double theory_gamma(int k_guess, double bound_b, const ComparisonGraph& graph,
                    int t_max);

}  // namespace btlcpd

#endif  // BTLCPD_EVALUATION_HPP_
