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

#include "btlcpd/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace btlcpd {
namespace {

std::string EdgeString(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

bool IsConnected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 1) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = n;
  for (const auto& [i, j] : edges) {
    int ri = find(i);
    int rj = find(j);
    if (ri != rj) {
      parent[ri] = rj;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

Theta::Theta(Eigen::VectorXd scores, double bound_b)
    : scores_(std::move(scores)), bound_b_(bound_b) {
  if (!(bound_b_ >= 0.0) || !std::isfinite(bound_b_)) {
    throw std::invalid_argument("Theta: bound must be finite and >= 0");
  }
  if (scores_.size() < 1) {
    throw std::invalid_argument("Theta: empty score vector");
  }
  if (!scores_.allFinite()) {
    throw std::invalid_argument("Theta: non-finite score");
  }
  if (std::abs(scores_.sum()) > kTolerance) {
    throw std::invalid_argument("Theta: scores must sum to zero");
  }
  if (scores_.cwiseAbs().maxCoeff() > bound_b_ + kTolerance) {
    throw std::invalid_argument("Theta: score outside [-B, B]");
  }
}

Theta Theta::Zero(int n, double bound_b) {
  return Theta(Eigen::VectorXd::Zero(n), bound_b);
}

ComparisonGraph::ComparisonGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), adjacency_(static_cast<size_t>(n) * n, 0), degrees_(n, 0) {
  if (n < 2) throw std::invalid_argument("ComparisonGraph: need n >= 2");
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("ComparisonGraph: edge out of range " +
                                  EdgeString(i, j));
    }
    if (i == j) {
      throw std::invalid_argument("ComparisonGraph: self loop at " +
                                  std::to_string(i));
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("ComparisonGraph: duplicate edge");
  }
  if (!IsConnected(n, edges)) {
    throw DisconnectedGraphError("comparison graph is not connected");
  }
  for (const auto& [i, j] : edges) {
    adjacency_[static_cast<size_t>(i) * n + j] = 1;
    adjacency_[static_cast<size_t>(j) * n + i] = 1;
    ++degrees_[i];
    ++degrees_[j];
  }
  edges_ = std::move(edges);
}

ComparisonGraph ComparisonGraph::Complete(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return ComparisonGraph(n, std::move(edges));
}

bool ComparisonGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return adjacency_[static_cast<size_t>(i) * n_ + j] != 0;
}

int ComparisonGraph::max_degree() const {
  return *std::max_element(degrees_.begin(), degrees_.end());
}

ObservationSeries::ObservationSeries(
    std::shared_ptr<const ComparisonGraph> graph,
    std::vector<Observation> records)
    : graph_(std::move(graph)), records_(std::move(records)) {
  if (!graph_) throw std::invalid_argument("ObservationSeries: null graph");
  const int n = graph_->num_items();
  for (size_t k = 0; k < records_.size(); ++k) {
    const Observation& obs = records_[k];
    if (obs.time != static_cast<int>(k) + 1) {
      throw std::invalid_argument(
          "ObservationSeries: times must be exactly 1..T, found " +
          std::to_string(obs.time) + " at position " + std::to_string(k + 1));
    }
    if (obs.winner < 0 || obs.winner >= n || obs.loser < 0 || obs.loser >= n) {
      throw std::invalid_argument("ObservationSeries: item out of range at t=" +
                                  std::to_string(obs.time));
    }
    if (obs.winner == obs.loser) {
      throw std::invalid_argument("ObservationSeries: winner == loser at t=" +
                                  std::to_string(obs.time));
    }
    if (!graph_->has_edge(obs.winner, obs.loser)) {
      throw std::invalid_argument(
          "ObservationSeries: pair " + EdgeString(obs.winner, obs.loser) +
          " at t=" + std::to_string(obs.time) + " is not a graph edge");
    }
  }
}

ObservationSeries::ObservationSeries(const ComparisonGraph& graph,
                                     std::vector<Observation> records)
    : ObservationSeries(std::make_shared<const ComparisonGraph>(graph),
                        std::move(records)) {}

std::span<const Observation> ObservationSeries::slice(TimeRange range) const {
  if (range.empty() || range.first < 1 || range.last > length()) {
    throw std::out_of_range("time range [" + std::to_string(range.first) +
                            ", " + std::to_string(range.last) +
                            "] is empty or outside [1, " +
                            std::to_string(length()) + "]");
  }
  return std::span<const Observation>(records_).subspan(range.first - 1,
                                                        range.length());
}

ProbMatrix::ProbMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const Eigen::Index n = entries_.rows();
  if (n < 1 || entries_.cols() != n) {
    throw std::invalid_argument("ProbMatrix: must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(entries_(i, i) - 0.5) > kTolerance) {
      throw std::invalid_argument("ProbMatrix: diagonal must be 0.5");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = entries_(i, j);
      if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("ProbMatrix: entries must lie in (0, 1)");
      }
      if (std::abs(p + entries_(j, i) - 1.0) > kTolerance) {
        throw std::invalid_argument("ProbMatrix: P + P^T must equal 1");
      }
    }
  }
}

Segmentation::Segmentation(std::vector<int> change_points, int t_max)
    : change_points_(std::move(change_points)), t_max_(t_max) {
  if (t_max_ < 1) throw std::invalid_argument("Segmentation: t_max < 1");
  int previous = 1;
  for (int eta : change_points_) {
    if (eta <= previous || eta > t_max_) {
      throw std::invalid_argument(
          "Segmentation: change points must be strictly increasing in (1, " +
          std::to_string(t_max_) + "], got " + std::to_string(eta));
    }
    previous = eta;
  }
}

std::vector<TimeRange> Segmentation::segments() const {
  std::vector<TimeRange> out;
  out.reserve(change_points_.size() + 1);
  int first = 1;
  for (int eta : change_points_) {
    out.push_back({first, eta - 1});
    first = eta;
  }
  out.push_back({first, t_max_});
  return out;
}

}  // namespace btlcpd
