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

// Maximum-likelihood fits of BTL scores on one interval of comparisons.
//
// Two modes are supported:
//
//  * kConstrained minimises L(theta, I) over the zero-sum slice of the box
//    [-B, B]^n with a projected Newton method that falls back to projected
//    gradient steps when the Newton direction fails to decrease the objective.
//  * kRidge minimises L(theta, I) + lambda / 2 ||theta||^2 with Newton's
//    method, then clips the result to [-B, B] and re-centres it once.
//
// In both modes the reported objective is the plain negative log-likelihood
// at the returned scores; the ridge term is never included.

#ifndef BTLCPD_MLE_SOLVER_HPP_
#define BTLCPD_MLE_SOLVER_HPP_

#include <Eigen/Core>
#include <optional>

#include "btlcpd/core_model.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

enum class SolverMode { kConstrained, kRidge };

struct SolverConfig {
  double bound_b = 10.0;
  double ridge_lambda = 0.1;
  int max_iter = 100;
  // Per comparison: the sup-norm gradient tolerance is grad_tol * max(1, m).
  double grad_tol = 1e-8;
  SolverMode mode = SolverMode::kRidge;

  // Throws std::invalid_argument on a bad configuration.
  void validate() const;

  static SolverConfig Ridge(double lambda = 0.1, double bound_b = 10.0);
  static SolverConfig Constrained(double bound_b);
};

struct FitResult {
  Theta theta_hat;
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Euclidean projection of `v` onto {x : sum(x) = 0, |x_i| <= B}.
Eigen::VectorXd project_to_box_slice(const Eigen::VectorXd& v, double bound_b);

// Fits the scores to a set of win counts. `warm_start`, when given, is the
// initial iterate (projected onto the feasible set in constrained mode).
FitResult fit_counts(const PairCounts& counts, const SolverConfig& config,
                     const Eigen::VectorXd* warm_start = nullptr);

// Fits the observations in `range`. Throws std::out_of_range on an empty or
// out-of-bounds range.
FitResult fit_interval(const ObservationSeries& series, TimeRange range,
                       const SolverConfig& config);

// Plain L(theta_hat(I), I) for one interval, uncached. See IntervalCosts for
// the memoised version used by the detectors.
double interval_objective(const ObservationSeries& series, TimeRange range,
                          const SolverConfig& config);

}  // namespace btlcpd

#endif  // BTLCPD_MLE_SOLVER_HPP_
