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

#ifndef BTLCPD_INTERVAL_COSTS_HPP_
#define BTLCPD_INTERVAL_COSTS_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "btlcpd/mle_solver.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

// Memoised interval objectives L(theta_hat(I), I) for one series and solver
// configuration, shared by the DP, local refinement, WBS and cross-validation.
//
// Storage is one lazily allocated row per left endpoint. The first value
// stored for an interval is kept, so repeated lookups are bit-identical even
// when several workers race to compute the same interval. Sweeps that extend
// an interval one observation at a time warm-start each fit from the previous
// one; isolated lookups start from zero.
class IntervalCosts {
 public:
  IntervalCosts(ObservationSeries series, SolverConfig config);

  IntervalCosts(const IntervalCosts&) = delete;
  IntervalCosts& operator=(const IntervalCosts&) = delete;

  const ObservationSeries& series() const { return series_; }
  const SolverConfig& config() const { return config_; }
  int length() const { return series_.length(); }

  // Cached objective of `range`. Throws std::out_of_range on a bad range.
  double cost(TimeRange range);

  // Ensures every [first, last] with last in [first, last_max] is cached,
  // extending the interval to the right.
  void fill_row(int first, int last_max);

  // Ensures every [first, last] with first in [first_min, last] is cached,
  // extending the interval to the left.
  void fill_column(int last, int first_min);

  // fill_row for every left endpoint, bounding the interval length by
  // max_lookback (<= 0 means unbounded). Rows are independent and are spread
  // over `threads` workers.
  void fill_all(int max_lookback, int threads);

  int nonconverged_fits() const { return nonconverged_.load(); }
  std::int64_t fits() const { return fits_.load(); }

 private:
  struct Row {
    std::mutex mu;
    std::vector<double> values;  // index last - first; NaN when missing
  };

  bool lookup(int first, int last, double* value);
  void store(int first, int last, double value);
  bool row_complete(int first, int last_max);
  void record_fit(const FitResult& fit);

  ObservationSeries series_;
  SolverConfig config_;
  std::vector<std::unique_ptr<Row>> rows_;
  std::atomic<int> nonconverged_{0};
  std::atomic<std::int64_t> fits_{0};
};

}  // namespace btlcpd

#endif  // BTLCPD_INTERVAL_COSTS_HPP_
