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

// Synthetic comparison streams with piecewise-constant BTL scores.
//
// A scenario has K = changes.size() change points spaced delta apart, so
// T = (K + 1) delta and regime k (0-based) covers [k delta + 1, (k + 1) delta].
// The truth segmentation is {delta + 1, 2 delta + 1, ..., K delta + 1}.
//
// At every t an edge is drawn uniformly from the comparison graph, its
// orientation is drawn uniformly, and the first item wins with its BTL
// probability under the current regime.

#ifndef BTLCPD_SIMULATOR_HPP_
#define BTLCPD_SIMULATOR_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "btlcpd/core_model.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

enum class ChangeKind {
  kReverse,            // theta_i = base_{n+1-i}
  kBlockReverse,       // reverse each half of base separately
  kBlockExchange,      // swap the two halves of base
  kRandomPerm,         // uniform permutation of the current scores
  kPartialRandomPerm,  // permute a random subset of the current scores
};

struct ChangeSpec {
  ChangeKind kind = ChangeKind::kReverse;
  double fraction = 1.0;  // only used by kPartialRandomPerm

  // Tokens: I | II | III | random | partial:<fraction>. The long names
  // type1_reverse, type2_block_reverse, type3_block_exchange, random_perm and
  // partial_random_perm:<fraction> are accepted too. Throws ParseError.
  static ChangeSpec Parse(const std::string& token);
  std::string token() const;
};

struct Scenario {
  int n = 10;
  int delta = 500;
  std::vector<ChangeSpec> changes;
  std::shared_ptr<const ComparisonGraph> graph;  // null means complete
  double max_win_prob = 0.9;
  std::uint64_t rng_seed = 0;

  // Throws std::invalid_argument on a bad field.
  void validate() const;
  int num_changes() const { return static_cast<int>(changes.size()); }
  int length() const { return (num_changes() + 1) * delta; }
  // `graph`, or the complete graph on n items when it is null.
  std::shared_ptr<const ComparisonGraph> comparison_graph() const;
};

// Evenly spaced, zero-mean scores whose extreme pair has win probability p.
// Throws std::invalid_argument for n < 2 or p outside (0.5, 1).
Theta base_theta(int n, double p);

// Applies one change. Types I-III permute `base`; the random kinds permute
// `current`. The result keeps the bound of `current`.
Theta apply_change(const Theta& base, const Theta& current,
                   const ChangeSpec& spec, std::mt19937_64& rng);

struct Simulation {
  ObservationSeries series;
  Segmentation truth;
  std::vector<Theta> thetas;  // one per regime
};

Simulation generate(const Scenario& scenario);

// Same sampling scheme driven by arbitrary winning-probability matrices, one
// per regime of length `delta`.
Simulation generate_from_matrices(const std::vector<ProbMatrix>& regimes,
                                  int delta, const ComparisonGraph& graph,
                                  std::uint64_t seed);

// Signal-to-noise summary of a scenario. Purely informational.
struct SnrReport {
  int delta = 0;
  int num_changes = 0;
  int t_max = 0;
  std::optional<double> kappa;  // min jump size; empty when K = 0
  // p_lb^-4 K |E| n d_max / lambda2^2 log(T n)
  double rhs_factor = 0.0;
  // delta kappa^2 / rhs_factor; empty when K = 0
  std::optional<double> implied_bt;
  LaplacianSpectrum spectrum;
};

SnrReport snr_diagnostic(const Scenario& scenario, double bound_b);

}  // namespace btlcpd

#endif  // BTLCPD_SIMULATOR_HPP_
