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

#include "btlcpd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace btlcpd {
namespace {

// Independent generator per sampling stage so that one stage can be re-run
// without disturbing the others.
enum class Stage : std::uint32_t { kEdge = 1, kOrientation, kOutcome, kPerm };

std::mt19937_64 StageRng(std::uint64_t seed, Stage stage) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stage)};
  return std::mt19937_64(seq);
}

Theta Permuted(const Theta& source, const std::vector<int>& index) {
  Eigen::VectorXd scores(source.size());
  for (int i = 0; i < source.size(); ++i) scores[i] = source[index[i]];
  // Re-centre to absorb rounding in the sum; a permutation keeps it zero.
  scores.array() -= scores.mean();
  return Theta(std::move(scores), source.bound());
}

// Draws the regimes' winners given a per-regime win probability for the
// ordered pair (first, second).
template <typename WinProb>
std::vector<Observation> Sample(const ComparisonGraph& graph, int t_max,
                                int delta, std::uint64_t seed,
                                WinProb&& win_prob_of) {
  std::mt19937_64 edge_rng = StageRng(seed, Stage::kEdge);
  std::mt19937_64 orientation_rng = StageRng(seed, Stage::kOrientation);
  std::mt19937_64 outcome_rng = StageRng(seed, Stage::kOutcome);
  std::uniform_int_distribution<int> edge_dist(0, graph.num_edges() - 1);
  std::bernoulli_distribution flip(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Observation> records;
  records.reserve(t_max);
  for (int t = 1; t <= t_max; ++t) {
    const int regime = (t - 1) / delta;
    auto [first, second] = graph.edges()[edge_dist(edge_rng)];
    if (flip(orientation_rng)) std::swap(first, second);
    const bool first_wins =
        unit(outcome_rng) < win_prob_of(regime, first, second);
    records.push_back(first_wins ? Observation{t, first, second}
                                 : Observation{t, second, first});
  }
  return records;
}

Segmentation Truth(int num_changes, int delta, int t_max) {
  std::vector<int> points;
  for (int k = 1; k <= num_changes; ++k) points.push_back(k * delta + 1);
  return Segmentation(std::move(points), t_max);
}

}  // namespace

ChangeSpec ChangeSpec::Parse(const std::string& raw) {
  std::string token = raw;
  token.erase(0, token.find_first_not_of(" \t"));
  token.erase(token.find_last_not_of(" \t") + 1);
  if (token == "I" || token == "type1_reverse") return {ChangeKind::kReverse};
  if (token == "II" || token == "type2_block_reverse") {
    return {ChangeKind::kBlockReverse};
  }
  if (token == "III" || token == "type3_block_exchange") {
    return {ChangeKind::kBlockExchange};
  }
  if (token == "random" || token == "random_perm") {
    return {ChangeKind::kRandomPerm};
  }
  for (const std::string prefix : {"partial:", "partial_random_perm:"}) {
    if (token.rfind(prefix, 0) == 0) {
      const std::string value = token.substr(prefix.size());
      double fraction = 0.0;
      try {
        size_t used = 0;
        fraction = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ParseError("bad fraction in change token '" + raw + "'");
      }
      if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ParseError("change fraction must lie in (0, 1]: '" + raw + "'");
      }
      return {ChangeKind::kPartialRandomPerm, fraction};
    }
  }
  throw ParseError("unknown change token '" + raw + "'");
}

std::string ChangeSpec::token() const {
  switch (kind) {
    case ChangeKind::kReverse:
      return "I";
    case ChangeKind::kBlockReverse:
      return "II";
    case ChangeKind::kBlockExchange:
      return "III";
    case ChangeKind::kRandomPerm:
      return "random";
    case ChangeKind::kPartialRandomPerm: {
      std::string value = std::to_string(fraction);
      value.erase(value.find_last_not_of('0') + 1);
      if (!value.empty() && value.back() == '.') value.pop_back();
      return "partial:" + value;
    }
  }
  return "";
}

void Scenario::validate() const {
  if (n < 2) throw std::invalid_argument("Scenario: n < 2");
  if (delta < 1) throw std::invalid_argument("Scenario: delta < 1");
  if (!(max_win_prob > 0.5 && max_win_prob < 1.0)) {
    throw std::invalid_argument("Scenario: p must lie in (0.5, 1)");
  }
  if (graph && graph->num_items() != n) {
    throw std::invalid_argument("Scenario: graph size differs from n");
  }
  for (const ChangeSpec& spec : changes) {
    if (spec.kind == ChangeKind::kPartialRandomPerm &&
        !(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
      throw std::invalid_argument("Scenario: fraction must lie in (0, 1]");
    }
  }
}

std::shared_ptr<const ComparisonGraph> Scenario::comparison_graph() const {
  if (graph) return graph;
  return std::make_shared<const ComparisonGraph>(ComparisonGraph::Complete(n));
}

Theta base_theta(int n, double p) {
  if (n < 2) throw std::invalid_argument("base_theta: n < 2");
  if (!(p > 0.5 && p < 1.0)) {
    throw std::invalid_argument("base_theta: p must lie in (0.5, 1)");
  }
  const double spread = std::log(p / (1.0 - p));
  const double step = spread / (n - 1);
  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) scores[i] = -0.5 * spread + i * step;
  scores.array() -= scores.mean();
  const double bound = scores.cwiseAbs().maxCoeff();
  return Theta(std::move(scores), bound);
}

Theta apply_change(const Theta& base, const Theta& current,
                   const ChangeSpec& spec, std::mt19937_64& rng) {
  const int n = current.size();
  if (base.size() != n) {
    throw std::invalid_argument("apply_change: base and current differ in n");
  }
  const int half = n / 2;
  std::vector<int> index(n);
  switch (spec.kind) {
    case ChangeKind::kReverse:
      for (int i = 0; i < n; ++i) index[i] = n - 1 - i;
      return Permuted(Theta(base.scores(), current.bound()), index);
    case ChangeKind::kBlockReverse:
      for (int i = 0; i < n; ++i) {
        index[i] = i < half ? half - 1 - i : half + n - 1 - i;
      }
      return Permuted(Theta(base.scores(), current.bound()), index);
    case ChangeKind::kBlockExchange:
      // Cyclic shift by floor(n/2); for even n this swaps the two halves.
      for (int i = 0; i < n; ++i) index[i] = (i + half) % n;
      return Permuted(Theta(base.scores(), current.bound()), index);
    case ChangeKind::kRandomPerm:
      std::iota(index.begin(), index.end(), 0);
      std::shuffle(index.begin(), index.end(), rng);
      return Permuted(current, index);
    case ChangeKind::kPartialRandomPerm: {
      std::iota(index.begin(), index.end(), 0);
      const int moved =
          std::clamp(static_cast<int>(std::lround(spec.fraction * n)), 2, n);
      std::vector<int> subset(n);
      std::iota(subset.begin(), subset.end(), 0);
      std::shuffle(subset.begin(), subset.end(), rng);
      subset.resize(moved);
      std::sort(subset.begin(), subset.end());
      // Sattolo's algorithm: a uniformly random cyclic permutation, so every
      // selected coordinate moves.
      std::vector<int> cycle(subset);
      for (int k = moved - 1; k > 0; --k) {
        std::uniform_int_distribution<int> pick(0, k - 1);
        std::swap(cycle[k], cycle[pick(rng)]);
      }
      for (int k = 0; k < moved; ++k) index[subset[k]] = cycle[k];
      return Permuted(current, index);
    }
  }
  throw std::invalid_argument("apply_change: unknown change kind");
}

Simulation generate(const Scenario& scenario) {
  scenario.validate();
  const auto graph = scenario.comparison_graph();
  const int t_max = scenario.length();

  std::mt19937_64 perm_rng = StageRng(scenario.rng_seed, Stage::kPerm);
  const Theta base = base_theta(scenario.n, scenario.max_win_prob);
  std::vector<Theta> thetas{base};
  for (const ChangeSpec& spec : scenario.changes) {
    thetas.push_back(apply_change(base, thetas.back(), spec, perm_rng));
  }

  auto records =
      Sample(*graph, t_max, scenario.delta, scenario.rng_seed,
             [&](int regime, int first, int second) {
               return sigmoid(thetas[regime][first] - thetas[regime][second]);
             });
  return Simulation{ObservationSeries(graph, std::move(records)),
                    Truth(scenario.num_changes(), scenario.delta, t_max),
                    std::move(thetas)};
}

Simulation generate_from_matrices(const std::vector<ProbMatrix>& regimes,
                                  int delta, const ComparisonGraph& graph,
                                  std::uint64_t seed) {
  if (regimes.empty()) throw std::invalid_argument("no regimes given");
  if (delta < 1) throw std::invalid_argument("delta < 1");
  for (const ProbMatrix& p : regimes) {
    if (p.size() != graph.num_items()) {
      throw std::invalid_argument("probability matrix size differs from n");
    }
  }
  const int num_changes = static_cast<int>(regimes.size()) - 1;
  const int t_max = (num_changes + 1) * delta;
  auto shared = std::make_shared<const ComparisonGraph>(graph);
  auto records = Sample(*shared, t_max, delta, seed,
                        [&](int regime, int first, int second) {
                          return regimes[regime](first, second);
                        });
  return Simulation{ObservationSeries(shared, std::move(records)),
                    Truth(num_changes, delta, t_max),
                    {}};
}

SnrReport snr_diagnostic(const Scenario& scenario, double bound_b) {
  scenario.validate();
  const auto graph = scenario.comparison_graph();
  SnrReport report;
  report.delta = scenario.delta;
  report.num_changes = scenario.num_changes();
  report.t_max = scenario.length();
  report.spectrum = laplacian_spectrum(*graph);

  const double plb = p_lb(bound_b);
  const double n = scenario.n;
  const double lambda2 = report.spectrum.lambda2;
  report.rhs_factor = std::pow(plb, -4.0) * report.num_changes *
                      report.spectrum.edge_count * n * report.spectrum.d_max /
                      (lambda2 * lambda2) * std::log(report.t_max * n);

  if (report.num_changes > 0) {
    std::mt19937_64 perm_rng = StageRng(scenario.rng_seed, Stage::kPerm);
    const Theta base = base_theta(scenario.n, scenario.max_win_prob);
    Theta current = base;
    double kappa = std::numeric_limits<double>::infinity();
    for (const ChangeSpec& spec : scenario.changes) {
      Theta next = apply_change(base, current, spec, perm_rng);
      kappa = std::min(kappa, (next.scores() - current.scores()).norm());
      current = std::move(next);
    }
    report.kappa = kappa;
    report.implied_bt = scenario.delta * kappa * kappa / report.rhs_factor;
  }
  return report;
}

}  // namespace btlcpd
