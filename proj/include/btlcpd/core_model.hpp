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

// Bradley-Terry-Luce model primitives.
//
// Under the BTL model item i beats item j with probability
//
//   P(i beats j) = exp(theta_i) / (exp(theta_i) + exp(theta_j))
//                = sigmoid(theta_i - theta_j).
//
// The negative log-likelihood of an interval of comparisons is
//
//   L(theta, I) =
//       sum_{t in I} log(1 + exp(theta_{loser(t)} - theta_{winner(t)}))
//
// which depends on the data only through the pairwise win counts. Its Hessian
// is a weighted graph Laplacian, so the all-ones vector is always in its
// kernel.

#ifndef BTLCPD_CORE_MODEL_HPP_
#define BTLCPD_CORE_MODEL_HPP_

#include <Eigen/Core>
#include <span>
#include <utility>
#include <vector>

#include "btlcpd/types.hpp"

namespace btlcpd {

// 1 / (1 + exp(-x)), stable for any finite x.
double sigmoid(double x);

// log(1 + exp(x)), stable for any finite x.
double softplus(double x);

// Probability that item i beats item j. Throws std::out_of_range for a bad
// index and std::invalid_argument for i == j.
double win_prob(const Theta& theta, int i, int j);

// Smallest pairwise win probability attainable on the box [-B, B]^n:
// exp(-2B) / (1 + exp(-2B)). Throws std::invalid_argument for B < 0.
double p_lb(double bound_b);

// Win counts over a set of comparisons: the sufficient statistic of the BTL
// likelihood.
class PairCounts {
 public:
  explicit PairCounts(int n);
  static PairCounts FromObservations(int n,
                                     std::span<const Observation> records);

  void add(int winner, int loser);

  int num_items() const { return n_; }
  int total() const { return total_; }
  int wins(int i, int j) const { return wins_[index(i, j)]; }
  int comparisons(int i, int j) const { return wins(i, j) + wins(j, i); }

  // Pairs (i < j) compared at least once, in order of first appearance.
  const std::vector<std::pair<int, int>>& active_pairs() const {
    return active_;
  }

  double neg_log_lik(const Eigen::VectorXd& scores) const;

  // Returns the negative log-likelihood and writes its gradient and Hessian.
  double derivatives(const Eigen::VectorXd& scores, Eigen::VectorXd* gradient,
                     Eigen::MatrixXd* hessian) const;

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_;
  int total_ = 0;
  std::vector<int> wins_;
  std::vector<std::pair<int, int>> active_;
};

// Per-observation likelihood routines. `scores` need not be zero-sum, which
// lets finite-difference checks perturb single coordinates. All throw
// std::out_of_range on an empty or out-of-bounds range.
double neg_log_lik(const Eigen::VectorXd& scores,
                   const ObservationSeries& series, TimeRange range);
double neg_log_lik(const Theta& theta, const ObservationSeries& series,
                   TimeRange range);

Eigen::VectorXd grad_neg_log_lik(const Eigen::VectorXd& scores,
                                 const ObservationSeries& series,
                                 TimeRange range);
Eigen::VectorXd grad_neg_log_lik(const Theta& theta,
                                 const ObservationSeries& series,
                                 TimeRange range);

Eigen::MatrixXd hess_neg_log_lik(const Eigen::VectorXd& scores,
                                 const ObservationSeries& series,
                                 TimeRange range);
Eigen::MatrixXd hess_neg_log_lik(const Theta& theta,
                                 const ObservationSeries& series,
                                 TimeRange range);

// Entry-wise win probabilities with 0.5 on the diagonal.
ProbMatrix prob_matrix(const Theta& theta);

// Two-sided comparison between parameter distance and probability-matrix
// distance for two points of the same parameter box:
//
//   n p_lb^2 / 16 ||t1 - t2||^2
//     <=  ||P(t1) - P(t2)||_F^2
//     <=  n / 16 ||t1 - t2||^2
//
// `mid` sums the squared differences over every off-diagonal entry (both
// orientations). `mid_pairs` counts each unordered pair once; it equals
// mid / 2 and is the quantity for which the upper bound actually holds.
struct ProbBounds {
  double lhs = 0.0;
  double mid = 0.0;
  double rhs = 0.0;
  double mid_pairs = 0.0;
};

// Throws std::invalid_argument when the two vectors differ in length or bound.
ProbBounds prob_matrix_bounds_check(const Theta& theta1, const Theta& theta2);

struct LaplacianSpectrum {
  double lambda2 = 0.0;   // algebraic connectivity
  double lambda_n = 0.0;  // largest eigenvalue
  int d_max = 0;
  int edge_count = 0;
};

// Spectrum of L = D - A by dense symmetric eigen-decomposition. Throws
// DisconnectedGraphError when lambda2 vanishes.
LaplacianSpectrum laplacian_spectrum(const ComparisonGraph& graph);

}  // namespace btlcpd

#endif  // BTLCPD_CORE_MODEL_HPP_
