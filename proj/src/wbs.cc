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

#include "btlcpd/wbs.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace btlcpd {
namespace {

void CheckSplit(int s, int e, int t, int t_max) {
  if (!(s >= 1 && s < t && t <= e && e <= t_max)) {
    throw std::invalid_argument("split t=" + std::to_string(t) +
                                " is not inside [" + std::to_string(s) + ", " +
                                std::to_string(e) + "]");
  }
}

// Dense win tables for one side of a moving split.
class WinTable {
 public:
  explicit WinTable(int n) : n_(n), wins_(static_cast<size_t>(n) * n, 0) {}
  void add(const Observation& obs) { ++wins_[index(obs.winner, obs.loser)]; }
  void remove(const Observation& obs) { --wins_[index(obs.winner, obs.loser)]; }
  int wins(int i, int j) const { return wins_[index(i, j)]; }

 private:
  size_t index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_;
  std::vector<int> wins_;
};

double SstOverEdges(const ComparisonGraph& graph, const WinTable& left,
                    const WinTable& right) {
  double total = 0.0;
  for (const auto& [i, j] : graph.edges()) {
    const int kp = left.wins(i, j) + left.wins(j, i);
    const int kq = right.wins(i, j) + right.wins(j, i);
    if (kp <= 1 || kq <= 1) continue;
    total += sst_term(kp, kq, left.wins(i, j), right.wins(i, j));
    total += sst_term(kp, kq, left.wins(j, i), right.wins(j, i));
  }
  return total;
}

struct SplitRange {
  int lo = 0;
  int hi = -1;
};

SplitRange CandidateSplits(int s, int e, int min_gap) {
  const int gap = std::max(1, min_gap);
  return {s + gap, std::min(e - 1, e + 1 - gap)};
}

IntervalStat ScanGlr(IntervalCosts& costs, int s, int e, SplitRange range) {
  costs.fill_row(s, range.hi - 1);
  costs.fill_column(e, range.lo);
  const double joint = costs.cost({s, e});
  IntervalStat best;
  for (int t = range.lo; t <= range.hi; ++t) {
    const double value =
        std::max(0.0, joint - costs.cost({s, t - 1}) - costs.cost({t, e}));
    if (value > best.value) best = {value, t};
  }
  return best;
}

IntervalStat ScanSst(const ObservationSeries& series, int s, int e,
                     SplitRange range) {
  const int n = series.num_items();
  WinTable left(n);
  WinTable right(n);
  for (int t = s; t < range.lo; ++t) left.add(series.at(t));
  for (int t = range.lo; t <= e; ++t) right.add(series.at(t));
  IntervalStat best;
  for (int t = range.lo; t <= range.hi; ++t) {
    if (t > range.lo) {
      left.add(series.at(t - 1));
      right.remove(series.at(t - 1));
    }
    const double value = SstOverEdges(series.graph(), left, right);
    if (value > best.value) best = {value, t};
  }
  return best;
}

IntervalStat ScanBorda(const ObservationSeries& series, int s, int e,
                       SplitRange range) {
  const int n = series.num_items();
  Eigen::VectorXd left = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd right = Eigen::VectorXd::Zero(n);
  auto tally = [](Eigen::VectorXd& net, const Observation& obs, double sign) {
    net[obs.winner] += sign;
    net[obs.loser] -= sign;
  };
  for (int t = s; t < range.lo; ++t) tally(left, series.at(t), 1.0);
  for (int t = range.lo; t <= e; ++t) tally(right, series.at(t), 1.0);
  IntervalStat best;
  for (int t = range.lo; t <= range.hi; ++t) {
    if (t > range.lo) {
      tally(left, series.at(t - 1), 1.0);
      tally(right, series.at(t - 1), -1.0);
    }
    const double n_left = t - s;
    const double n_right = e - t + 1;
    const double value = n_left * n_right / (n_left + n_right) *
                         (left / n_left - right / n_right).squaredNorm();
    if (value > best.value) best = {value, t};
  }
  return best;
}

void Recurse(IntervalCosts& costs, const WbsConfig& config,
             const std::vector<std::pair<int, int>>& intervals, int s, int e,
             std::vector<int>* out) {
  const int gap = std::max(1, config.min_gap);
  if (e - s + 1 < 2 * gap || e - s < 2) return;
  IntervalStat best;
  for (const auto& [alpha, beta] : intervals) {
    const int s_m = std::max(s, alpha);
    const int e_m = std::min(e, beta);
    if (e_m - s_m <= 1) continue;
    const IntervalStat stat =
        best_split(costs, config.statistic, s_m, e_m, config.min_gap);
    if (stat.value > best.value) best = stat;
  }
  if (best.value > config.threshold_gamma) {
    out->push_back(best.split);
    Recurse(costs, config, intervals, s, best.split - 1, out);
    Recurse(costs, config, intervals, best.split, e, out);
  }
}

}  // namespace

void WbsConfig::validate() const {
  if (intervals_m < 1) throw std::invalid_argument("WbsConfig: M < 1");
  if (!(threshold_gamma >= 0.0)) {
    throw std::invalid_argument("WbsConfig: threshold must be >= 0");
  }
  if (min_gap < 1) throw std::invalid_argument("WbsConfig: min_gap < 1");
}

double glr_stat(IntervalCosts& costs, int s, int e, int t) {
  CheckSplit(s, e, t, costs.length());
  const double joint = costs.cost({s, e});
  return std::max(0.0, joint - costs.cost({s, t - 1}) - costs.cost({t, e}));
}

double glr_stat(const ObservationSeries& series, int s, int e, int t,
                const SolverConfig& solver) {
  IntervalCosts costs(series, solver);
  return glr_stat(costs, s, e, t);
}

double sst_term(int kp, int kq, int x, int y) {
  if (kp <= 1 || kq <= 1) return 0.0;
  const double p = kp;
  const double q = kq;
  const double xd = x;
  const double yd = y;
  const double numerator = q * (q - 1.0) * (xd * xd - xd) +
                           p * (p - 1.0) * (yd * yd - yd) -
                           2.0 * (p - 1.0) * (q - 1.0) * xd * yd;
  return numerator / ((p - 1.0) * (q - 1.0) * (p + q));
}

double sst_stat(const PairCounts& left, const PairCounts& right) {
  const int n = left.num_items();
  if (right.num_items() != n) {
    throw std::invalid_argument("sst_stat: item counts differ");
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      total += sst_term(left.comparisons(i, j), right.comparisons(i, j),
                        left.wins(i, j), right.wins(i, j));
    }
  }
  return total;
}

double sst_stat(const ObservationSeries& series, TimeRange left,
                TimeRange right) {
  const int n = series.num_items();
  return sst_stat(PairCounts::FromObservations(n, series.slice(left)),
                  PairCounts::FromObservations(n, series.slice(right)));
}

Eigen::VectorXd borda_vector(const ObservationSeries& series, TimeRange range) {
  Eigen::VectorXd net = Eigen::VectorXd::Zero(series.num_items());
  for (const Observation& obs : series.slice(range)) {
    net[obs.winner] += 1.0;
    net[obs.loser] -= 1.0;
  }
  return net / static_cast<double>(range.length());
}

double borda_cusum(const ObservationSeries& series, int s, int e, int t) {
  CheckSplit(s, e, t, series.length());
  const double n_left = t - s;
  const double n_right = e - t + 1;
  const Eigen::VectorXd diff =
      borda_vector(series, {s, t - 1}) - borda_vector(series, {t, e});
  return n_left * n_right / (n_left + n_right) * diff.squaredNorm();
}

IntervalStat best_split(IntervalCosts& costs, WbsStatistic statistic, int s,
                        int e, int min_gap) {
  if (s < 1 || e > costs.length() || s > e) {
    throw std::out_of_range("best_split: bad interval");
  }
  const SplitRange range = CandidateSplits(s, e, min_gap);
  if (range.lo > range.hi) return {};
  switch (statistic) {
    case WbsStatistic::kGlr:
      return ScanGlr(costs, s, e, range);
    case WbsStatistic::kSst:
      return ScanSst(costs.series(), s, e, range);
    case WbsStatistic::kBorda:
      return ScanBorda(costs.series(), s, e, range);
  }
  return {};
}

std::vector<std::pair<int, int>> sample_wbs_intervals(int t_max, int count,
                                                      int min_gap,
                                                      std::uint64_t seed) {
  std::vector<std::pair<int, int>> intervals;
  const int gap = 2 * std::max(1, min_gap);
  if (t_max - 1 < gap) return intervals;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> draw(1, t_max);
  intervals.reserve(count);
  while (static_cast<int>(intervals.size()) < count) {
    int alpha = draw(rng);
    int beta = draw(rng);
    if (alpha > beta) std::swap(alpha, beta);
    if (beta - alpha < gap) continue;
    intervals.emplace_back(alpha, beta);
  }
  return intervals;
}

Segmentation wbs_detect(IntervalCosts& costs, const WbsConfig& config) {
  config.validate();
  const int t_max = costs.length();
  const auto intervals = sample_wbs_intervals(t_max, config.intervals_m,
                                              config.min_gap, config.rng_seed);
  std::vector<int> points;
  Recurse(costs, config, intervals, 1, t_max, &points);
  std::sort(points.begin(), points.end());
  return Segmentation(std::move(points), t_max);
}

Segmentation wbs_detect(const ObservationSeries& series,
                        const WbsConfig& config, const SolverConfig& solver) {
  IntervalCosts costs(series, solver);
  return wbs_detect(costs, config);
}

}  // namespace btlcpd
