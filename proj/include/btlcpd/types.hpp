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

// Value types shared by every part of the library.
//
// Conventions:
//  * Items are 0-based indices in [0, n).
//  * Time is 1-based: an ObservationSeries of length T holds records for
//    t = 1, ..., T. A TimeRange is an inclusive [first, last] window on that
//    axis. Conversion to 0-based offsets happens only inside the .cc files.
//  * A change point is the first time index of the new regime.

#ifndef BTLCPD_TYPES_HPP_
#define BTLCPD_TYPES_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace btlcpd {

// Thrown when the comparison graph does not connect all items.
class DisconnectedGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parsers on malformed external input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a constrained fit fails to reach its tolerance and the caller
// asked for strict convergence.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// BTL preference scores on the log scale, restricted to the zero-sum slice of
// the box [-B, B]^n.
class Theta {
 public:
  static constexpr double kTolerance = 1e-8;

  // Throws std::invalid_argument if the scores are not zero-sum or leave the
  // box.
  Theta(Eigen::VectorXd scores, double bound_b);

  // Zero vector of length n.
  static Theta Zero(int n, double bound_b);

  int size() const { return static_cast<int>(scores_.size()); }
  double bound() const { return bound_b_; }
  const Eigen::VectorXd& scores() const { return scores_; }
  double operator[](int i) const { return scores_[i]; }

 private:
  Eigen::VectorXd scores_;
  double bound_b_;
};

// Undirected comparison graph on n items. Edges are stored with i < j in
// lexicographic order. Construction fails for self loops, duplicate edges,
// out-of-range endpoints, or a disconnected graph.
class ComparisonGraph {
 public:
  ComparisonGraph(int n, std::vector<std::pair<int, int>> edges);

  static ComparisonGraph Complete(int n);

  int num_items() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int i, int j) const;
  int degree(int i) const { return degrees_[i]; }
  int max_degree() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adjacency_;
  std::vector<int> degrees_;
};

// One comparison at time `time`: `winner` beat `loser`.
struct Observation {
  int time = 0;
  int winner = 0;
  int loser = 0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Inclusive window [first, last] on the 1-based time axis.
struct TimeRange {
  int first = 1;
  int last = 0;

  int length() const { return last - first + 1; }
  bool empty() const { return last < first; }

  friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

// Time series of comparisons with exactly one record per t = 1..T.
class ObservationSeries {
 public:
  ObservationSeries(std::shared_ptr<const ComparisonGraph> graph,
                    std::vector<Observation> records);
  ObservationSeries(const ComparisonGraph& graph,
                    std::vector<Observation> records);

  int length() const { return static_cast<int>(records_.size()); }
  int num_items() const { return graph_->num_items(); }
  const ComparisonGraph& graph() const { return *graph_; }
  const std::shared_ptr<const ComparisonGraph>& graph_ptr() const {
    return graph_;
  }
  const std::vector<Observation>& records() const { return records_; }

  // Record at 1-based time t.
  const Observation& at(int t) const { return records_[t - 1]; }

  // Records with time in `range`. Throws std::out_of_range when the range is
  // empty or leaves [1, T].
  std::span<const Observation> slice(TimeRange range) const;

  TimeRange full_range() const { return {1, length()}; }

 private:
  std::shared_ptr<const ComparisonGraph> graph_;
  std::vector<Observation> records_;
};

// Pairwise winning-probability matrix. P(i, j) is the probability that i beats
// j; P(i, j) + P(j, i) == 1 off the diagonal and the diagonal is 0.5.
class ProbMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit ProbMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

// Change points (first index of each new regime) on [1, t_max].
class Segmentation {
 public:
  Segmentation() = default;
  // Throws std::invalid_argument unless the points are strictly increasing
  // and each lies in (1, t_max].
  Segmentation(std::vector<int> change_points, int t_max);

  const std::vector<int>& change_points() const { return change_points_; }
  int t_max() const { return t_max_; }
  int num_changes() const { return static_cast<int>(change_points_.size()); }
  bool empty() const { return change_points_.empty(); }

  // The induced partition of [1, t_max] into consecutive ranges.
  std::vector<TimeRange> segments() const;

  friend bool operator==(const Segmentation&, const Segmentation&) = default;

 private:
  std::vector<int> change_points_;
  int t_max_ = 0;
};

}  // namespace btlcpd

#endif  // BTLCPD_TYPES_HPP_
