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

#include "btlcpd/evaluation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "btlcpd/core_model.hpp"
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

TEST(HausdorffTest, Examples) {
  EXPECT_DOUBLE_EQ(
      hausdorff(Segmentation({100}, 500), Segmentation({110}, 500)), 10.0);
  EXPECT_DOUBLE_EQ(hausdorff(Segmentation({2, 6}, 10), Segmentation({2}, 10)),
                   4.0);
  EXPECT_DOUBLE_EQ(hausdorff(Segmentation({2}, 10), Segmentation({2, 6}, 10)),
                   4.0);
  EXPECT_DOUBLE_EQ(hausdorff(Segmentation({}, 10), Segmentation({}, 10)), 0.0);
  EXPECT_TRUE(
      std::isinf(hausdorff(Segmentation({}, 10), Segmentation({5}, 10))));
  EXPECT_TRUE(
      std::isinf(hausdorff(Segmentation({5}, 10), Segmentation({}, 10))));
  EXPECT_DOUBLE_EQ(
      hausdorff(Segmentation({20, 50, 90}, 100), Segmentation({48}, 100)),
      42.0);
}

TEST(CountKTest, Categories) {
  const Segmentation truth({5, 9}, 20);
  EXPECT_EQ(count_k(Segmentation({5}, 20), truth), KCount::kUnder);
  EXPECT_EQ(count_k(Segmentation({3, 15}, 20), truth), KCount::kExact);
  EXPECT_EQ(count_k(Segmentation({3, 8, 15}, 20), truth), KCount::kOver);
  EXPECT_STREQ(KCountName(KCount::kUnder), "under");
  EXPECT_STREQ(KCountName(KCount::kExact), "exact");
  EXPECT_STREQ(KCountName(KCount::kOver), "over");
}

TEST(SplitTest, OddEven) {
  const ObservationSeries s(
      ComparisonGraph::Complete(3),
      {{1, 0, 1}, {2, 1, 2}, {3, 2, 0}, {4, 0, 2}, {5, 1, 0}});
  const SplitSeries split = odd_even_split(s);
  EXPECT_EQ(split.original_length, 5);
  EXPECT_EQ(split.train.records(),
            (std::vector<Observation>{{1, 0, 1}, {2, 2, 0}, {3, 1, 0}}));
  EXPECT_EQ(split.test.records(),
            (std::vector<Observation>{{1, 1, 2}, {2, 0, 2}}));
  EXPECT_EQ(split.to_original(Segmentation({2, 3}, 3)).change_points(),
            (std::vector<int>{3, 5}));
  EXPECT_THROW(odd_even_split(ObservationSeries(ComparisonGraph::Complete(2),
                                                {{1, 0, 1}})),
               std::invalid_argument);
}

// Per-observation loss with independently fitted scores.
TEST(TestLossTest, MatchesDirectSum) {
  const ObservationSeries s = RandomSeries(4, 61, 3);
  const SplitSeries split = odd_even_split(s);
  const SolverConfig solver;
  const Segmentation seg({11, 20}, split.train.length());
  double expected = 0.0;
  for (const TimeRange& r : seg.segments()) {
    const Theta theta = fit_interval(split.train, r, solver).theta_hat;
    for (int k = r.first; k <= std::min(r.last, split.test.length()); ++k) {
      const Observation& obs = split.test.at(k);
      expected -= std::log(sigmoid(theta[obs.winner] - theta[obs.loser]));
    }
  }
  EXPECT_NEAR(test_loss(split, seg, solver), expected, 1e-10);
  EXPECT_THROW(test_loss(split, Segmentation({}, 7), solver),
               std::invalid_argument);
}

TEST(CvSelectTest, PicksTheChangeOnCleanData) {
  const ObservationSeries s = TwoRegimes(40);
  DetectOptions options;
  options.method = Method::kDp;
  const CvResult result = cv_select(s, {0.5, 1e12}, options, SolverConfig{});
  ASSERT_EQ(result.table.size(), 2u);
  EXPECT_EQ(result.best_gamma, 0.5);
  EXPECT_EQ(result.table[0].k_hat, 1);
  EXPECT_EQ(result.table[1].k_hat, 0);
  EXPECT_LT(result.table[0].test_loss, result.table[1].test_loss);
  EXPECT_EQ(result.segmentation.t_max(), 80);
  EXPECT_EQ(result.segmentation.change_points(), std::vector<int>{41});
}

TEST(CvSelectTest, SingleValueGrid) {
  const ObservationSeries s = TwoRegimes(20);
  const CvResult result = cv_select(s, {3.0}, DetectOptions{}, SolverConfig{});
  EXPECT_EQ(result.best_gamma, 3.0);
  EXPECT_EQ(result.table.size(), 1u);
  EXPECT_THROW(cv_select(s, {}, DetectOptions{}, SolverConfig{}),
               std::invalid_argument);
}

// Every row matches a fresh detection and the winner is the first argmin.
TEST(CvSelectTest, ArgminContract) {
  Scenario scenario;
  scenario.n = 4;
  scenario.delta = 60;
  scenario.changes = {ChangeSpec::Parse("I")};
  scenario.rng_seed = 9;
  const ObservationSeries s = generate(scenario).series;
  const std::vector<double> grid = {0.5, 2.0, 4.0, 8.0, 16.0, 1e6};
  const SolverConfig solver;
  for (Method method : {Method::kDp, Method::kDplr, Method::kWbsGlr}) {
    DetectOptions options;
    options.method = method;
    options.dp.min_seg = default_min_seg(scenario.n);
    const CvResult result = cv_select(s, grid, options, solver);
    const SplitSeries split = odd_even_split(s);
    double best = std::numeric_limits<double>::infinity();
    double best_gamma = 0.0;
    Segmentation best_seg;
    for (size_t i = 0; i < grid.size(); ++i) {
      DetectOptions point = options;
      point.gamma = grid[i];
      const Segmentation seg = detect(split.train, solver, point).segmentation;
      const double loss = test_loss(split, seg, solver);
      EXPECT_EQ(result.table[i].gamma, grid[i]);
      EXPECT_EQ(result.table[i].k_hat, seg.num_changes());
      EXPECT_DOUBLE_EQ(result.table[i].test_loss, loss);
      if (loss < best) {
        best = loss;
        best_gamma = grid[i];
        best_seg = seg;
      }
    }
    EXPECT_EQ(result.best_gamma, best_gamma) << MethodName(method);
    EXPECT_EQ(result.segmentation, split.to_original(best_seg));
  }
}

TEST(TheoryGammaTest, Scale) {
  const ComparisonGraph complete = ComparisonGraph::Complete(10);
  const double base = theory_gamma(0, 0.0, complete, 100);
  // n d_max / lambda2 = 9 and p_lb(0)^-2 = 4.
  EXPECT_NEAR(base, 4.0 * 9.0 * std::log(1000.0), 1e-9);
  EXPECT_NEAR(theory_gamma(1, 0.0, complete, 100), 2.0 * base, 1e-9);
  EXPECT_GT(theory_gamma(0, 1.0, complete, 100), base);
  EXPECT_THROW(theory_gamma(-1, 0.0, complete, 100), std::invalid_argument);
}

}  // namespace
}  // namespace btlcpd
