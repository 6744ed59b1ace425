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

#include "btlcpd/interval_costs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "btlcpd/core_model.hpp"
#include "btlcpd/parallel.hpp"

namespace btlcpd {

IntervalCosts::IntervalCosts(ObservationSeries series, SolverConfig config)
    : series_(std::move(series)), config_(config) {
  config_.validate();
  rows_.reserve(series_.length());
  for (int t = 0; t < series_.length(); ++t) {
    rows_.push_back(std::make_unique<Row>());
  }
}

bool IntervalCosts::lookup(int first, int last, double* value) {
  Row& row = *rows_[first - 1];
  std::lock_guard<std::mutex> lock(row.mu);
  const size_t offset = static_cast<size_t>(last - first);
  if (offset >= row.values.size()) return false;
  const double cached = row.values[offset];
  if (std::isnan(cached)) return false;
  *value = cached;
  return true;
}

void IntervalCosts::store(int first, int last, double value) {
  Row& row = *rows_[first - 1];
  std::lock_guard<std::mutex> lock(row.mu);
  if (row.values.empty()) {
    row.values.assign(static_cast<size_t>(length() - first + 1),
                      std::numeric_limits<double>::quiet_NaN());
  }
  double& slot = row.values[static_cast<size_t>(last - first)];
  if (std::isnan(slot)) slot = value;
}

bool IntervalCosts::row_complete(int first, int last_max) {
  Row& row = *rows_[first - 1];
  std::lock_guard<std::mutex> lock(row.mu);
  if (row.values.size() < static_cast<size_t>(last_max - first + 1)) {
    return false;
  }
  for (int last = first; last <= last_max; ++last) {
    if (std::isnan(row.values[static_cast<size_t>(last - first)])) {
      return false;
    }
  }
  return true;
}

void IntervalCosts::record_fit(const FitResult& fit) {
  ++fits_;
  if (!fit.converged) ++nonconverged_;
}

double IntervalCosts::cost(TimeRange range) {
  if (range.empty() || range.first < 1 || range.last > length()) {
    throw std::out_of_range("IntervalCosts: bad range [" +
                            std::to_string(range.first) + ", " +
                            std::to_string(range.last) + "]");
  }
  double value = 0.0;
  if (lookup(range.first, range.last, &value)) return value;
  const PairCounts counts =
      PairCounts::FromObservations(series_.num_items(), series_.slice(range));
  const FitResult fit = fit_counts(counts, config_);
  record_fit(fit);
  store(range.first, range.last, fit.objective);
  lookup(range.first, range.last, &value);
  return value;
}

void IntervalCosts::fill_row(int first, int last_max) {
  if (first < 1 || last_max > length() || last_max < first) {
    throw std::out_of_range("IntervalCosts::fill_row: bad bounds");
  }
  if (row_complete(first, last_max)) return;
  PairCounts counts(series_.num_items());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(series_.num_items());
  for (int last = first; last <= last_max; ++last) {
    const Observation& obs = series_.at(last);
    counts.add(obs.winner, obs.loser);
    const FitResult fit = fit_counts(counts, config_, &warm);
    record_fit(fit);
    warm = fit.theta_hat.scores();
    store(first, last, fit.objective);
  }
}

void IntervalCosts::fill_column(int last, int first_min) {
  if (first_min < 1 || last > length() || last < first_min) {
    throw std::out_of_range("IntervalCosts::fill_column: bad bounds");
  }
  bool complete = true;
  double unused = 0.0;
  for (int first = last; first >= first_min && complete; --first) {
    complete = lookup(first, last, &unused);
  }
  if (complete) return;
  PairCounts counts(series_.num_items());
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(series_.num_items());
  for (int first = last; first >= first_min; --first) {
    const Observation& obs = series_.at(first);
    counts.add(obs.winner, obs.loser);
    const FitResult fit = fit_counts(counts, config_, &warm);
    record_fit(fit);
    warm = fit.theta_hat.scores();
    store(first, last, fit.objective);
  }
}

void IntervalCosts::fill_all(int max_lookback, int threads) {
  const int t_max = length();
  parallel_for(t_max, threads, [&](int index) {
    const int first = index + 1;
    int last_max = t_max;
    if (max_lookback > 0) last_max = std::min(t_max, first + max_lookback - 1);
    fill_row(first, last_max);
  });
}

}  // namespace btlcpd
