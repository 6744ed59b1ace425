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

// Wild binary segmentation with pluggable split statistics.
//
// Every statistic R(t; s, e) compares the left sample [s, t - 1] with the
// right sample [t, e] (inclusive, 1-based), so a split t is the first index
// of the candidate new regime.
//
//  * GLR: L(theta_hat([s, e])) - L(theta_hat([s, t-1])) - L(theta_hat([t, e])),
//    the log generalised likelihood ratio of one BTL model against two.
//  * SST: the two-sample statistic for pairwise comparison matrices,
//
//      sum_{i != j} 1(kp > 1) 1(kq > 1)
//        [kq (kq - 1)(X^2 - X) + kp (kp - 1)(Y^2 - Y) - 2 (kp - 1)(kq - 1) X Y]
//        / [(kp - 1)(kq - 1)(kp + kq)]
//
//    with X = wins of i over j on the left, Y the same on the right, and
//    kp, kq the number of (i, j) comparisons on each side.
//  * Borda: the CUSUM of normalised Borda counts,
//
//      (nL nR / (nL + nR)) ||beta(left) - beta(right)||^2,
//
//    beta(I)_i = (wins_i - losses_i) / |I|.

#ifndef BTLCPD_WBS_HPP_
#define BTLCPD_WBS_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "btlcpd/core_model.hpp"
#include "btlcpd/interval_costs.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

enum class WbsStatistic { kGlr, kSst, kBorda };

struct WbsConfig {
  int intervals_m = 50;
  double threshold_gamma = 0.0;
  WbsStatistic statistic = WbsStatistic::kGlr;
  std::uint64_t rng_seed = 0;
  int min_gap = 1;

  void validate() const;
};

struct IntervalStat {
  double value = -1.0;
  int split = 0;
};

// GLR statistic, clamped at zero. Throws std::invalid_argument unless
// s < t <= e.
double glr_stat(IntervalCosts& costs, int s, int e, int t);
double glr_stat(const ObservationSeries& series, int s, int e, int t,
                const SolverConfig& solver);

// One (i, j) summand of the SST statistic, zero when kp <= 1 or kq <= 1.
double sst_term(int kp, int kq, int x, int y);

// SST statistic between two count tables over the same items.
double sst_stat(const PairCounts& left, const PairCounts& right);
double sst_stat(const ObservationSeries& series, TimeRange left,
                TimeRange right);

// Normalised Borda count vector over `range`; sums to zero.
Eigen::VectorXd borda_vector(const ObservationSeries& series, TimeRange range);

// Borda CUSUM at split t of [s, e]. Throws std::invalid_argument unless
// s < t <= e.
double borda_cusum(const ObservationSeries& series, int s, int e, int t);

// Maximiser of the statistic over splits t of [s, e] that leave at least
// max(1, min_gap) observations on the left and max(2, min_gap) on the right.
// Returns value -1 when no split qualifies. Ties go to the smallest t.
IntervalStat best_split(IntervalCosts& costs, WbsStatistic statistic, int s,
                        int e, int min_gap);

// The M random intervals (alpha, beta), 1 <= alpha < beta <= T, with
// beta - alpha >= 2 min_gap.
std::vector<std::pair<int, int>> sample_wbs_intervals(int t_max, int count,
                                                      int min_gap,
                                                      std::uint64_t seed);

Segmentation wbs_detect(IntervalCosts& costs, const WbsConfig& config);
Segmentation wbs_detect(const ObservationSeries& series,
                        const WbsConfig& config, const SolverConfig& solver);

}  // namespace btlcpd

#endif  // BTLCPD_WBS_HPP_
