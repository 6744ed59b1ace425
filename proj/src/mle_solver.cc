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

#include "btlcpd/mle_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace btlcpd {
namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

// Gradient sums grow with the number of comparisons, and so does their
// rounding error.
double Tolerance(const PairCounts& counts, const SolverConfig& config) {
  return config.grad_tol * std::max(1, counts.total());
}

// Accepted as converged when the line search stalls at this gradient level.
double StallTolerance(const PairCounts& counts, const SolverConfig& config) {
  return std::sqrt(config.grad_tol) * std::max(1, counts.total());
}

// Solves (H + jitter I) d = rhs, growing the jitter until the factorisation
// succeeds.
Eigen::VectorXd SolvePositiveDefinite(Eigen::MatrixXd hessian,
                                      const Eigen::VectorXd& rhs) {
  double jitter = 0.0;
  const double scale = 1.0 + hessian.diagonal().cwiseAbs().maxCoeff();
  for (int attempt = 0; attempt < 12; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(hessian);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    const double next = attempt == 0 ? 1e-12 * scale : jitter * 10.0;
    hessian.diagonal().array() += next - jitter;
    jitter = next;
  }
  return rhs / scale;
}

Theta MakeTheta(const Eigen::VectorXd& scores, double bound_b) {
  Eigen::VectorXd centered = scores.array() - scores.mean();
  if (centered.cwiseAbs().maxCoeff() > bound_b) {
    // Clip-then-recentre may leave the box when several coordinates saturate
    // on the same side; the exact projection handles that case.
    centered = project_to_box_slice(centered, bound_b);
  }
  return Theta(std::move(centered), bound_b);
}

FitResult FitRidge(const PairCounts& counts, const SolverConfig& config,
                   const Eigen::VectorXd* warm_start) {
  const int n = counts.num_items();
  const double lambda = config.ridge_lambda;
  Eigen::VectorXd theta =
      warm_start ? *warm_start : Eigen::VectorXd::Zero(n).eval();
  Eigen::VectorXd gradient(n);
  Eigen::MatrixXd hessian(n, n);
  const double tol = Tolerance(counts, config);

  bool converged = false;
  int iter = 0;
  for (; iter < config.max_iter; ++iter) {
    const double value = counts.derivatives(theta, &gradient, &hessian) +
                         0.5 * lambda * theta.squaredNorm();
    gradient += lambda * theta;
    if (gradient.lpNorm<Eigen::Infinity>() <= tol) {
      converged = true;
      break;
    }
    hessian.diagonal().array() += lambda;
    if (lambda == 0.0) {
      // The Laplacian kernel is spanned by the ones vector and the gradient
      // is orthogonal to it, so this shift leaves the Newton step unchanged.
      hessian.array() += 1.0 / n;
    }
    const Eigen::VectorXd step = SolvePositiveDefinite(hessian, -gradient);
    const double slope = gradient.dot(step);

    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial(n);
    for (int k = 0; k < kMaxBacktracks; ++k) {
      trial = theta + alpha * step;
      const double trial_value =
          counts.neg_log_lik(trial) + 0.5 * lambda * trial.squaredNorm();
      if (trial_value <= value + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      converged =
          gradient.lpNorm<Eigen::Infinity>() <= StallTolerance(counts, config);
      break;
    }
    theta = trial;
  }

  Theta theta_hat = MakeTheta(theta, config.bound_b);
  const double objective = counts.neg_log_lik(theta_hat.scores());
  return FitResult{std::move(theta_hat), objective, converged, iter};
}

// Newton direction restricted to the free coordinates, subject to the
// coordinates summing to zero. Returns an empty vector when no free
// direction exists.
Eigen::VectorXd FreeNewtonStep(const Eigen::MatrixXd& hessian,
                               const Eigen::VectorXd& gradient,
                               const std::vector<int>& free) {
  const int m = static_cast<int>(free.size());
  if (m < 2) return {};
  const double scale = 1.0 + hessian.diagonal().cwiseAbs().maxCoeff();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs(m + 1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) kkt(a, b) = hessian(free[a], free[b]);
    kkt(a, a) += 1e-10 * scale;
    kkt(a, m) = 1.0;
    kkt(m, a) = 1.0;
    rhs[a] = -gradient[free[a]];
  }
  rhs[m] = 0.0;
  const Eigen::VectorXd solution = kkt.fullPivLu().solve(rhs);
  if (!solution.allFinite()) return {};
  Eigen::VectorXd step = Eigen::VectorXd::Zero(gradient.size());
  for (int a = 0; a < m; ++a) step[free[a]] = solution[a];
  return step;
}

FitResult FitConstrained(const PairCounts& counts, const SolverConfig& config,
                         const Eigen::VectorXd* warm_start) {
  const int n = counts.num_items();
  const double bound = config.bound_b;
  const double edge = 1e-12 * std::max(1.0, bound);
  Eigen::VectorXd theta = project_to_box_slice(
      warm_start ? *warm_start : Eigen::VectorXd::Zero(n).eval(), bound);
  Eigen::VectorXd gradient(n);
  Eigen::MatrixXd hessian(n, n);
  const double tol = Tolerance(counts, config);

  bool converged = false;
  int iter = 0;
  for (; iter < config.max_iter; ++iter) {
    const double value = counts.derivatives(theta, &gradient, &hessian);
    const Eigen::VectorXd gradient_point =
        project_to_box_slice(theta - gradient, bound);
    const double stationarity =
        (theta - gradient_point).lpNorm<Eigen::Infinity>();
    if (stationarity <= tol) {
      converged = true;
      break;
    }

    // A coordinate is held fixed when it sits on a face of the box and a
    // projected gradient step keeps it there.
    std::vector<int> free;
    for (int i = 0; i < n; ++i) {
      const bool at_upper =
          theta[i] >= bound - edge && gradient_point[i] >= bound - edge;
      const bool at_lower =
          theta[i] <= -bound + edge && gradient_point[i] <= -bound + edge;
      if (!at_upper && !at_lower) free.push_back(i);
    }

    Eigen::VectorXd trial(n);
    bool accepted = false;
    const Eigen::VectorXd newton = FreeNewtonStep(hessian, gradient, free);
    if (newton.size() == n) {
      double alpha = 1.0;
      for (int k = 0; k < kMaxBacktracks && !accepted; ++k) {
        trial = project_to_box_slice(theta + alpha * newton, bound);
        const double trial_value = counts.neg_log_lik(trial);
        accepted = trial_value < value &&
                   trial_value <= value + kArmijo * gradient.dot(trial - theta);
        alpha *= 0.5;
      }
    }
    if (!accepted) {
      double alpha = 1.0 / std::max(1e-12, hessian.diagonal().maxCoeff());
      for (int k = 0; k < kMaxBacktracks && !accepted; ++k) {
        trial = project_to_box_slice(theta - alpha * gradient, bound);
        const double trial_value = counts.neg_log_lik(trial);
        accepted = trial_value <= value + kArmijo * gradient.dot(trial - theta);
        alpha *= 0.5;
      }
    }
    if (!accepted) {
      converged = stationarity <= StallTolerance(counts, config);
      break;
    }
    theta = trial;
  }

  Theta theta_hat(theta, bound);
  const double objective = counts.neg_log_lik(theta_hat.scores());
  return FitResult{std::move(theta_hat), objective, converged, iter};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(bound_b >= 0.0) || !std::isfinite(bound_b)) {
    throw std::invalid_argument("SolverConfig: bound_b must be finite, >= 0");
  }
  if (!(ridge_lambda >= 0.0)) {
    throw std::invalid_argument("SolverConfig: ridge_lambda must be >= 0");
  }
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter < 1");
  if (!(grad_tol > 0.0)) {
    throw std::invalid_argument("SolverConfig: grad_tol must be > 0");
  }
}

SolverConfig SolverConfig::Ridge(double lambda, double bound_b) {
  SolverConfig config;
  config.mode = SolverMode::kRidge;
  config.ridge_lambda = lambda;
  config.bound_b = bound_b;
  return config;
}

SolverConfig SolverConfig::Constrained(double bound_b) {
  SolverConfig config;
  config.mode = SolverMode::kConstrained;
  config.bound_b = bound_b;
  config.ridge_lambda = 0.0;
  return config;
}

Eigen::VectorXd project_to_box_slice(const Eigen::VectorXd& v, double bound_b) {
  const Eigen::Index n = v.size();
  if (bound_b <= 0.0) return Eigen::VectorXd::Zero(n);
  auto clipped_sum = [&](double shift) {
    return (v.array() - shift).max(-bound_b).min(bound_b).sum();
  };
  // clipped_sum is non-increasing in the shift; bracket its root.
  double lo = v.minCoeff() - bound_b;
  double hi = v.maxCoeff() + bound_b;
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (clipped_sum(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double shift = 0.5 * (lo + hi);
  Eigen::VectorXd x = (v.array() - shift).max(-bound_b).min(bound_b).matrix();

  // Spread the residual sum over the coordinates strictly inside the box.
  const double residual = x.sum();
  int free = 0;
  for (Eigen::Index i = 0; i < n; ++i) free += std::abs(x[i]) < bound_b;
  if (free > 0 && residual != 0.0) {
    const double correction = residual / free;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(x[i]) < bound_b) {
        x[i] = std::clamp(x[i] - correction, -bound_b, bound_b);
      }
    }
  }
  return x;
}

FitResult fit_counts(const PairCounts& counts, const SolverConfig& config,
                     const Eigen::VectorXd* warm_start) {
  if (warm_start && warm_start->size() != counts.num_items()) {
    throw std::invalid_argument("fit_counts: warm start has wrong length");
  }
  FitResult result = config.mode == SolverMode::kRidge
                         ? FitRidge(counts, config, warm_start)
                         : FitConstrained(counts, config, warm_start);
  if (!std::isfinite(result.objective)) {
    throw std::runtime_error("fit_counts: non-finite objective");
  }
  return result;
}

FitResult fit_interval(const ObservationSeries& series, TimeRange range,
                       const SolverConfig& config) {
  config.validate();
  const PairCounts counts =
      PairCounts::FromObservations(series.num_items(), series.slice(range));
  return fit_counts(counts, config);
}

double interval_objective(const ObservationSeries& series, TimeRange range,
                          const SolverConfig& config) {
  return fit_interval(series, range, config).objective;
}

}  // namespace btlcpd
