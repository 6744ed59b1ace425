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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace btlcpd {
namespace {

void CheckItem(int n, int i) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("item index " + std::to_string(i) +
                            " outside [0, " + std::to_string(n) + ")");
  }
}

void CheckScores(const Eigen::VectorXd& scores,
                 const ObservationSeries& series) {
  if (scores.size() != series.num_items()) {
    throw std::invalid_argument("score vector length does not match n");
  }
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double win_prob(const Theta& theta, int i, int j) {
  CheckItem(theta.size(), i);
  CheckItem(theta.size(), j);
  if (i == j) throw std::invalid_argument("win_prob: i == j");
  return sigmoid(theta[i] - theta[j]);
}

double p_lb(double bound_b) {
  if (!(bound_b >= 0.0)) throw std::invalid_argument("p_lb: negative bound");
  const double e = std::exp(-2.0 * bound_b);
  return e / (1.0 + e);
}

PairCounts::PairCounts(int n) : n_(n), wins_(static_cast<size_t>(n) * n, 0) {
  if (n < 1) throw std::invalid_argument("PairCounts: n < 1");
}

PairCounts PairCounts::FromObservations(int n,
                                        std::span<const Observation> records) {
  PairCounts counts(n);
  for (const Observation& obs : records) counts.add(obs.winner, obs.loser);
  return counts;
}

void PairCounts::add(int winner, int loser) {
  if (comparisons(winner, loser) == 0) {
    active_.emplace_back(std::min(winner, loser), std::max(winner, loser));
  }
  ++wins_[index(winner, loser)];
  ++total_;
}

double PairCounts::neg_log_lik(const Eigen::VectorXd& scores) const {
  double value = 0.0;
  for (const auto& [i, j] : active_) {
    const double diff = scores[i] - scores[j];
    const int wij = wins(i, j);
    const int wji = wins(j, i);
    if (wij > 0) value += wij * softplus(-diff);
    if (wji > 0) value += wji * softplus(diff);
  }
  return value;
}

double PairCounts::derivatives(const Eigen::VectorXd& scores,
                               Eigen::VectorXd* gradient,
                               Eigen::MatrixXd* hessian) const {
  gradient->setZero(n_);
  hessian->setZero(n_, n_);
  double value = 0.0;
  for (const auto& [i, j] : active_) {
    const double diff = scores[i] - scores[j];
    const int wij = wins(i, j);
    const int wji = wins(j, i);
    if (wij > 0) value += wij * softplus(-diff);
    if (wji > 0) value += wji * softplus(diff);
    const double p = sigmoid(diff);
    const double residual = (wij + wji) * p - wij;
    (*gradient)[i] += residual;
    (*gradient)[j] -= residual;
    const double weight = (wij + wji) * p * (1.0 - p);
    (*hessian)(i, i) += weight;
    (*hessian)(j, j) += weight;
    (*hessian)(i, j) -= weight;
    (*hessian)(j, i) -= weight;
  }
  return value;
}

double neg_log_lik(const Eigen::VectorXd& scores,
                   const ObservationSeries& series, TimeRange range) {
  CheckScores(scores, series);
  double value = 0.0;
  for (const Observation& obs : series.slice(range)) {
    // x(t)^T theta with the winner at +1 and y = 1.
    const double margin = scores[obs.winner] - scores[obs.loser];
    value += softplus(margin) - margin;
  }
  return value;
}

double neg_log_lik(const Theta& theta, const ObservationSeries& series,
                   TimeRange range) {
  return neg_log_lik(theta.scores(), series, range);
}

Eigen::VectorXd grad_neg_log_lik(const Eigen::VectorXd& scores,
                                 const ObservationSeries& series,
                                 TimeRange range) {
  CheckScores(scores, series);
  Eigen::VectorXd gradient = Eigen::VectorXd::Zero(scores.size());
  for (const Observation& obs : series.slice(range)) {
    const double residual =
        sigmoid(scores[obs.winner] - scores[obs.loser]) - 1.0;
    gradient[obs.winner] += residual;
    gradient[obs.loser] -= residual;
  }
  return gradient;
}

Eigen::VectorXd grad_neg_log_lik(const Theta& theta,
                                 const ObservationSeries& series,
                                 TimeRange range) {
  return grad_neg_log_lik(theta.scores(), series, range);
}

Eigen::MatrixXd hess_neg_log_lik(const Eigen::VectorXd& scores,
                                 const ObservationSeries& series,
                                 TimeRange range) {
  CheckScores(scores, series);
  const Eigen::Index n = scores.size();
  Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(n, n);
  for (const Observation& obs : series.slice(range)) {
    const double p = sigmoid(scores[obs.winner] - scores[obs.loser]);
    const double weight = p * (1.0 - p);
    hessian(obs.winner, obs.winner) += weight;
    hessian(obs.loser, obs.loser) += weight;
    hessian(obs.winner, obs.loser) -= weight;
    hessian(obs.loser, obs.winner) -= weight;
  }
  return hessian;
}

Eigen::MatrixXd hess_neg_log_lik(const Theta& theta,
                                 const ObservationSeries& series,
                                 TimeRange range) {
  return hess_neg_log_lik(theta.scores(), series, range);
}

ProbMatrix prob_matrix(const Theta& theta) {
  const int n = theta.size();
  Eigen::MatrixXd entries(n, n);
  for (int i = 0; i < n; ++i) {
    entries(i, i) = 0.5;
    for (int j = i + 1; j < n; ++j) {
      const double p = sigmoid(theta[i] - theta[j]);
      entries(i, j) = p;
      entries(j, i) = 1.0 - p;
    }
  }
  return ProbMatrix(std::move(entries));
}

ProbBounds prob_matrix_bounds_check(const Theta& theta1, const Theta& theta2) {
  if (theta1.size() != theta2.size()) {
    throw std::invalid_argument("prob_matrix_bounds_check: n mismatch");
  }
  if (theta1.bound() != theta2.bound()) {
    throw std::invalid_argument("prob_matrix_bounds_check: bound mismatch");
  }
  const int n = theta1.size();
  const double plb = p_lb(theta1.bound());
  const double dist2 = (theta1.scores() - theta2.scores()).squaredNorm();

  ProbBounds out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d =
          sigmoid(theta1[i] - theta1[j]) - sigmoid(theta2[i] - theta2[j]);
      out.mid += d * d;
      if (i < j) out.mid_pairs += d * d;
    }
  }
  out.lhs = n * plb * plb / 16.0 * dist2;
  out.rhs = n / 16.0 * dist2;
  return out;
}

LaplacianSpectrum laplacian_spectrum(const ComparisonGraph& graph) {
  const int n = graph.num_items();
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : graph.edges()) {
    laplacian(i, i) += 1.0;
    laplacian(j, j) += 1.0;
    laplacian(i, j) -= 1.0;
    laplacian(j, i) -= 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("laplacian_spectrum: eigen-decomposition failed");
  }
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  LaplacianSpectrum out;
  out.lambda2 = n >= 2 ? eigenvalues[1] : 0.0;
  out.lambda_n = eigenvalues[n - 1];
  out.d_max = graph.max_degree();
  out.edge_count = graph.num_edges();
  if (out.lambda2 <= 1e-9 * std::max(1.0, out.lambda_n)) {
    throw DisconnectedGraphError("laplacian_spectrum: lambda2 vanishes");
  }
  return out;
}

}  // namespace btlcpd
