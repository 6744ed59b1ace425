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

#include "btlcpd/core_model.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <vector>

namespace btlcpd {
namespace {

Theta RandomTheta(int n, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = unit(rng);
  v.array() -= v.mean();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale > 0) v *= bound / scale * 0.999;
  return Theta(v, bound);
}

ObservationSeries RandomSeries(int n, int t_max, std::mt19937_64& rng) {
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

// Direct per-record likelihood, independent of PairCounts.
double OracleNll(const Eigen::VectorXd& theta, const ObservationSeries& s) {
  double total = 0.0;
  for (const Observation& obs : s.records()) {
    const double p =
        1.0 / (1.0 + std::exp(-(theta[obs.winner] - theta[obs.loser])));
    total -= std::log(p);
  }
  return total;
}

TEST(SigmoidTest, Values) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  // 1 - 1e-20 is not representable; saturation is to the nearest double.
  EXPECT_GT(sigmoid(50.0), 1.0 - 1e-15);
  EXPECT_LE(sigmoid(50.0), 1.0);
  EXPECT_GT(sigmoid(-50.0), 0.0);
  EXPECT_NEAR(sigmoid(-50.0), std::exp(-50.0), 1e-30);
  EXPECT_NEAR(sigmoid(std::log(9.0)), 0.9, 1e-15);
  EXPECT_TRUE(std::isfinite(sigmoid(-700.0)));
  EXPECT_GT(sigmoid(-700.0), 0.0);
  EXPECT_NEAR(softplus(800.0), 800.0, 1e-12);
}

TEST(WinProbTest, Values) {
  const Theta equal = Theta::Zero(3, 1.0);
  EXPECT_DOUBLE_EQ(win_prob(equal, 0, 2), 0.5);
  const Theta theta(Eigen::Vector2d(1.0, -1.0), 1.0);
  EXPECT_NEAR(win_prob(theta, 0, 1), 0.8807970779778823, 1e-12);
  std::mt19937_64 rng(3);
  const Theta random = RandomTheta(6, 2.0, rng);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i == j) continue;
      EXPECT_NEAR(win_prob(random, i, j) + win_prob(random, j, i), 1.0, 1e-15);
      EXPECT_GE(win_prob(random, i, j), p_lb(2.0) - 1e-15);
      EXPECT_LE(win_prob(random, i, j), 1.0 - p_lb(2.0) + 1e-15);
    }
  }
  EXPECT_THROW(win_prob(random, 0, 6), std::out_of_range);
}

TEST(PlbTest, Values) {
  EXPECT_DOUBLE_EQ(p_lb(0.0), 0.5);
  EXPECT_NEAR(p_lb(1.0), 0.11920292202211755, 1e-12);
  EXPECT_LT(p_lb(2.0), p_lb(1.0));
  EXPECT_THROW(p_lb(-1.0), std::invalid_argument);
}

TEST(NegLogLikTest, Examples) {
  const ComparisonGraph g = ComparisonGraph::Complete(2);
  const ObservationSeries one(g, {{1, 0, 1}});
  EXPECT_NEAR(neg_log_lik(Theta::Zero(2, 1.0), one, {1, 1}), std::log(2.0),
              1e-15);
  const double gap = std::log(9.0);
  const Theta favoured(Eigen::Vector2d(gap / 2, -gap / 2), 2.0);
  EXPECT_NEAR(neg_log_lik(favoured, one, {1, 1}), -std::log(0.9), 1e-12);

  std::vector<Observation> same;
  for (int t = 1; t <= 7; ++t) same.push_back({t, 0, 1});
  const ObservationSeries seven(g, same);
  EXPECT_NEAR(neg_log_lik(favoured, seven, {1, 7}),
              7 * neg_log_lik(favoured, one, {1, 1}), 1e-12);
  EXPECT_THROW(neg_log_lik(favoured, seven, {3, 2}), std::out_of_range);
}

TEST(NegLogLikTest, MatchesOracleAndIsAdditive) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const ObservationSeries s = RandomSeries(5, 30, rng);
    const Theta theta = RandomTheta(5, 1.5, rng);
    EXPECT_NEAR(neg_log_lik(theta, s, s.full_range()),
                OracleNll(theta.scores(), s), 1e-10);
    EXPECT_NEAR(
        neg_log_lik(theta, s, {1, 30}),
        neg_log_lik(theta, s, {1, 12}) + neg_log_lik(theta, s, {13, 30}),
        1e-10);
    EXPECT_GE(neg_log_lik(theta, s, {4, 4}), 0.0);
  }
}

TEST(NegLogLikTest, ConvexAlongSegments) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 30; ++rep) {
    const ObservationSeries s = RandomSeries(4, 25, rng);
    const Theta a = RandomTheta(4, 1.0, rng);
    const Theta b = RandomTheta(4, 1.0, rng);
    const double lam = 0.3;
    const Eigen::VectorXd mix = lam * a.scores() + (1 - lam) * b.scores();
    EXPECT_LE(neg_log_lik(mix, s, s.full_range()),
              lam * neg_log_lik(a, s, s.full_range()) +
                  (1 - lam) * neg_log_lik(b, s, s.full_range()) + 1e-9);
  }
}

TEST(DerivativeTest, FiniteDifferences) {
  std::mt19937_64 rng(5);
  const double h = 1e-5;
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 3 + rep % 5;
    const ObservationSeries s = RandomSeries(n, 40, rng);
    const Theta theta = RandomTheta(n, 1.0, rng);
    const Eigen::VectorXd g = grad_neg_log_lik(theta, s, s.full_range());
    const Eigen::MatrixXd H = hess_neg_log_lik(theta, s, s.full_range());
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd up = theta.scores();
      Eigen::VectorXd down = theta.scores();
      up[i] += h;
      down[i] -= h;
      const double fd = (OracleNll(up, s) - OracleNll(down, s)) / (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd)));
      const Eigen::VectorXd fd_row =
          (grad_neg_log_lik(up, s, s.full_range()) -
           grad_neg_log_lik(down, s, s.full_range())) /
          (2 * h);
      for (int j = 0; j < n; ++j) {
        EXPECT_NEAR(H(i, j), fd_row[j],
                    1e-5 * std::max(1.0, std::abs(H(i, j))));
      }
    }
    EXPECT_LT((H * Eigen::VectorXd::Ones(n)).norm(), 1e-10);
    EXPECT_LT((H - H.transpose()).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(PairCountsTest, DerivativesMatchSeriesForm) {
  std::mt19937_64 rng(6);
  const ObservationSeries s = RandomSeries(6, 50, rng);
  const Theta theta = RandomTheta(6, 1.0, rng);
  const PairCounts counts = PairCounts::FromObservations(6, s.records());
  EXPECT_EQ(counts.total(), 50);
  Eigen::VectorXd g;
  Eigen::MatrixXd H;
  const double value = counts.derivatives(theta.scores(), &g, &H);
  EXPECT_NEAR(value, OracleNll(theta.scores(), s), 1e-10);
  EXPECT_LT((g - grad_neg_log_lik(theta, s, s.full_range())).norm(), 1e-10);
  EXPECT_LT((H - hess_neg_log_lik(theta, s, s.full_range())).norm(), 1e-10);
}

TEST(ProbMatrixTest, Examples) {
  const ProbMatrix zero = prob_matrix(Theta::Zero(4, 1.0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(zero(i, j), 0.5);
  }
  const double half = std::log(3.0) / 2;
  const ProbMatrix p = prob_matrix(Theta(Eigen::Vector2d(half, -half), 1.0));
  EXPECT_NEAR(p(0, 1), 0.75, 1e-15);
  EXPECT_NEAR(p(0, 1) + p(1, 0), 1.0, 1e-15);
  EXPECT_THROW(ProbMatrix(Eigen::Matrix2d::Constant(0.7)),
               std::invalid_argument);
}

TEST(ProbBoundsTest, Examples) {
  std::mt19937_64 rng(8);
  const Theta a = RandomTheta(5, 1.0, rng);
  const ProbBounds same = prob_matrix_bounds_check(a, a);
  EXPECT_EQ(same.lhs, 0.0);
  EXPECT_EQ(same.mid, 0.0);
  EXPECT_EQ(same.rhs, 0.0);

  for (int rep = 0; rep < 100; ++rep) {
    const Theta x = RandomTheta(5, 1.0, rng);
    const Theta y = RandomTheta(5, 1.0, rng);
    const ProbBounds b = prob_matrix_bounds_check(x, y);
    // Unordered pairs satisfy the two-sided bound.
    EXPECT_LE(b.lhs, b.mid_pairs + 1e-12);
    EXPECT_LE(b.mid_pairs, b.rhs + 1e-12);
    EXPECT_NEAR(b.mid, 2 * b.mid_pairs, 1e-14);
  }

  const Theta tiny_a(Eigen::Vector2d(1e-7, -1e-7), 1e-6);
  const Theta tiny_b(Eigen::Vector2d(-1e-7, 1e-7), 1e-6);
  const ProbBounds tiny = prob_matrix_bounds_check(tiny_a, tiny_b);
  EXPECT_NEAR(tiny.lhs / tiny.rhs, 0.25, 1e-5);
  EXPECT_THROW(prob_matrix_bounds_check(tiny_a, Theta::Zero(3, 1e-6)),
               std::invalid_argument);
}

TEST(LaplacianTest, Examples) {
  const LaplacianSpectrum k5 = laplacian_spectrum(ComparisonGraph::Complete(5));
  EXPECT_NEAR(k5.lambda2, 5.0, 1e-10);
  const LaplacianSpectrum path =
      laplacian_spectrum(ComparisonGraph(3, {{0, 1}, {1, 2}}));
  EXPECT_NEAR(path.lambda2, 1.0, 1e-10);
  EXPECT_NEAR(path.lambda_n, 3.0, 1e-10);
  const LaplacianSpectrum k10 =
      laplacian_spectrum(ComparisonGraph::Complete(10));
  EXPECT_EQ(k10.d_max, 9);
  EXPECT_EQ(k10.edge_count, 45);
}

TEST(TypesTest, Validation) {
  EXPECT_THROW(Theta(Eigen::Vector2d(1.0, 0.0), 1.0), std::invalid_argument);
  EXPECT_THROW(Theta(Eigen::Vector2d(2.0, -2.0), 1.0), std::invalid_argument);
  EXPECT_THROW(ComparisonGraph(4, {{0, 1}, {2, 3}}), DisconnectedGraphError);
  EXPECT_THROW(ComparisonGraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(ComparisonGraph(3, {{0, 0}}), std::invalid_argument);
  const ComparisonGraph path(3, {{0, 1}, {2, 1}});
  EXPECT_TRUE(path.has_edge(1, 2));
  EXPECT_FALSE(path.has_edge(0, 2));
  EXPECT_THROW(ObservationSeries(path, {{1, 0, 2}}), std::invalid_argument);
  EXPECT_THROW(ObservationSeries(path, {{2, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(Segmentation({5, 5}, 10), std::invalid_argument);
  EXPECT_THROW(Segmentation({1}, 10), std::invalid_argument);
  EXPECT_THROW(Segmentation({11}, 10), std::invalid_argument);
  const Segmentation seg({4, 8}, 10);
  ASSERT_EQ(seg.segments().size(), 3u);
  EXPECT_EQ(seg.segments()[1], (TimeRange{4, 7}));
  EXPECT_EQ(seg.segments()[2], (TimeRange{8, 10}));
}

}  // namespace
}  // namespace btlcpd
