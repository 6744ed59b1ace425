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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "btlcpd/core_model.hpp"
#include "btlcpd/interval_costs.hpp"

namespace btlcpd {
namespace {

double DirectedDistance(const std::vector<int>& from,
                        const std::vector<int>& to) {
  double worst = 0.0;
  for (int x : from) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int y : to) nearest = std::min(nearest, std::fabs(double(x - y)));
    worst = std::max(worst, nearest);
  }
  return worst;
}

}  // namespace

double hausdorff(const Segmentation& est, const Segmentation& truth) {
  const auto& a = est.change_points();
  const auto& b = truth.change_points();
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(DirectedDistance(a, b), DirectedDistance(b, a));
}

KCount count_k(const Segmentation& est, const Segmentation& truth) {
  if (est.num_changes() < truth.num_changes()) return KCount::kUnder;
  if (est.num_changes() > truth.num_changes()) return KCount::kOver;
  return KCount::kExact;
}

const char* KCountName(KCount count) {
  switch (count) {
    case KCount::kUnder:
      return "under";
    case KCount::kExact:
      return "exact";
    case KCount::kOver:
      return "over";
  }
  return "";
}

Segmentation SplitSeries::to_original(
    const Segmentation& train_segmentation) const {
  std::vector<int> points;
  points.reserve(train_segmentation.num_changes());
  for (int k : train_segmentation.change_points()) points.push_back(2 * k - 1);
  return Segmentation(std::move(points), original_length);
}

SplitSeries odd_even_split(const ObservationSeries& series) {
  const int t_max = series.length();
  if (t_max < 2) throw std::invalid_argument("odd_even_split: T < 2");
  std::vector<Observation> train;
  std::vector<Observation> test;
  train.reserve((t_max + 1) / 2);
  test.reserve(t_max / 2);
  for (const Observation& obs : series.records()) {
    if (obs.time % 2 == 1) {
      train.push_back({(obs.time + 1) / 2, obs.winner, obs.loser});
    } else {
      test.push_back({obs.time / 2, obs.winner, obs.loser});
    }
  }
  return SplitSeries{ObservationSeries(series.graph_ptr(), std::move(train)),
                     ObservationSeries(series.graph_ptr(), std::move(test)),
                     t_max};
}

double test_loss(const SplitSeries& split, const Segmentation& train_seg,
                 const SolverConfig& solver) {
  if (train_seg.t_max() != split.train.length()) {
    throw std::invalid_argument("test_loss: segmentation length mismatch");
  }
  const int test_length = split.test.length();
  double total = 0.0;
  for (const TimeRange& segment : train_seg.segments()) {
    const TimeRange held_out{segment.first,
                             std::min(segment.last, test_length)};
    if (held_out.empty()) continue;
    const FitResult fit = fit_interval(split.train, segment, solver);
    total += neg_log_lik(fit.theta_hat, split.test, held_out);
  }
  return total;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 24; ++k) grid.push_back(2.5 * std::exp2(k / 4.0));
  return grid;
}

CvResult cv_select(const ObservationSeries& series,
                   const std::vector<double>& gamma_grid,
                   const DetectOptions& options, const SolverConfig& solver) {
  if (gamma_grid.empty()) throw std::invalid_argument("cv_select: empty grid");
  const SplitSeries split = odd_even_split(series);
  // One cost cache serves the whole grid.
  IntervalCosts costs(split.train, solver);

  CvResult result;
  result.table.reserve(gamma_grid.size());
  Segmentation best_train;
  double best_loss = std::numeric_limits<double>::infinity();
  for (double gamma : gamma_grid) {
    DetectOptions point = options;
    point.gamma = gamma;
    const Segmentation train_seg = detect(costs, point).segmentation;
    const double loss = test_loss(split, train_seg, solver);
    result.table.push_back({gamma, train_seg.num_changes(), loss});
    const bool better =
        loss < best_loss || (loss == best_loss && gamma < result.best_gamma);
    if (better || result.table.size() == 1) {
      best_loss = loss;
      result.best_gamma = gamma;
      best_train = train_seg;
    }
  }
  result.segmentation = split.to_original(best_train);
  return result;
}

double theory_gamma(int k_guess, double bound_b, const ComparisonGraph& graph,
                    int t_max) {
  if (k_guess < 0 || t_max < 1) {
    throw std::invalid_argument("theory_gamma: bad arguments");
  }
  const LaplacianSpectrum spectrum = laplacian_spectrum(graph);
  const double n = graph.num_items();
  const double plb = p_lb(bound_b);
  return (k_guess + 1) / (plb * plb) * (n * spectrum.d_max / spectrum.lambda2) *
         std::log(static_cast<double>(t_max) * n);
}

}  // namespace btlcpd
