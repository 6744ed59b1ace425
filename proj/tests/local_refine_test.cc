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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "btlcpd/simulator.hpp"

namespace btlcpd {
namespace {

// Item 0 beats item 1 for the first `half` steps, then item 1 beats item 0.
ObservationSeries TwoRegimes(int half) {
  std::vector<Observation> records;
  for (int t = 1; t <= 2 * half; ++t) {
    records.push_back(t <= half ? Observation{t, 0, 1} : Observation{t, 1, 0});
  }
  return ObservationSeries(ComparisonGraph::Complete(2), std::move(records));
}

ObservationSeries RandomSeries(int n, int t_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> item(0, n - 1);
  std::vector<Observation> records;
  for (int t = 1; t <= t_max; ++t) {
    int w = item(rng);
    int l = item(rng);
    while (l == w) l = item(rng);
    records.push_back({t, w, l});
  }
  return ObservationSeries(ComparisonGraph::Complete(n), std::move(records));
}

TEST(RefineWindowTest, Arithmetic) {
  const RefineWindow w = refine_window(1, 300, 900, 900);
  EXPECT_EQ(w.s, 100);
  EXPECT_EQ(w.e, 700);
  const RefineWindow frac = refine_window(1, 27, 40, 40);
  EXPECT_EQ(frac.s, 9);   // floor(29 / 3)
  EXPECT_EQ(frac.e, 36);  // ceil(107 / 3)
}

TEST(RefineTest, EmptyInput) {
  const ObservationSeries s = TwoRegimes(20);
  IntervalCosts costs(s, SolverConfig{});
  const RefineResult result = refine(costs, Segmentation({}, 40));
  EXPECT_TRUE(result.segmentation.empty());
  EXPECT_TRUE(result.warnings.empty());
}

TEST(RefineTest, MovesOffsetEstimateToTruth) {
  const ObservationSeries s = TwoRegimes(20);
  EXPECT_EQ(refine(s, Segmentation({27}, 40), SolverConfig{}).change_points(),
            std::vector<int>{21});
  EXPECT_EQ(refine(s, Segmentation({16}, 40), SolverConfig{}).change_points(),
            std::vector<int>{21});
}

// Independent scan of the window with fresh fits.
TEST(RefineTest, MatchesExhaustiveScan) {
  const ObservationSeries s = RandomSeries(3, 60, 21);
  const SolverConfig config;
  IntervalCosts costs(s, config);
  const Segmentation prelim({20, 41}, 60);
  const RefineResult result = refine(costs, prelim);
  ASSERT_EQ(result.windows.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    const RefineWindow w = result.windows[k];
    double best = INFINITY;
    for (int eta = w.s + 1; eta <= w.e - 1; ++eta) {
      const double value = interval_objective(s, {w.s + 1, eta}, config) +
                           interval_objective(s, {eta + 1, w.e}, config);
      if (value < best - 1e-9) {
        best = value;
      }
    }
    EXPECT_NEAR(result.refined_cost[k], best, 1e-7);
    EXPECT_LE(result.refined_cost[k], result.prelim_cost[k] + 1e-12);
  }
}

// Regimes of length `len` alternating which of items 0 and 1 always wins.
ObservationSeries Alternating(int regimes, int len) {
  std::vector<Observation> records;
  for (int t = 1; t <= regimes * len; ++t) {
    const bool even = ((t - 1) / len) % 2 == 0;
    records.push_back(even ? Observation{t, 0, 1} : Observation{t, 1, 0});
  }
  return ObservationSeries(ComparisonGraph::Complete(2), std::move(records));
}

TEST(RefineTest, IdempotentOnStrongSignal) {
  const ObservationSeries s = Alternating(4, 30);
  const Segmentation truth({31, 61, 91}, 120);
  EXPECT_EQ(refine(s, truth, SolverConfig{}), truth);
}

TEST(RefineTest, DuplicatesCollapseWithWarning) {
  const ObservationSeries s = TwoRegimes(20);
  IntervalCosts costs(s, SolverConfig{});
  const RefineResult result = refine(costs, Segmentation({15, 27}, 40));
  EXPECT_EQ(result.segmentation.change_points(), std::vector<int>{21});
  ASSERT_EQ(result.warnings.size(), 1u);
}

TEST(RefineTest, NarrowWindowThrows) {
  const ObservationSeries s = RandomSeries(3, 4, 1);
  EXPECT_THROW(refine(s, Segmentation({2, 3}, 4), SolverConfig{}),
               std::invalid_argument);
}

TEST(RefineTest, CountPreserved) {
  const ObservationSeries s = Alternating(4, 50);
  IntervalCosts costs(s, SolverConfig{});
  const RefineResult result = refine(costs, Segmentation({45, 108, 150}, 200));
  EXPECT_TRUE(result.warnings.empty());
  EXPECT_EQ(result.segmentation.change_points(),
            (std::vector<int>{51, 101, 151}));
  for (size_t k = 0; k < result.refined_cost.size(); ++k) {
    EXPECT_LE(result.refined_cost[k], result.prelim_cost[k] + 1e-12);
  }
}

}  // namespace
}  // namespace btlcpd
