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

// File formats: observation CSV, segmentation JSON, edge lists and the flat
// key = value scenario config.
//
// Observation CSV:
//
//   t,winner,loser
//   1,alice,bob
//   2,carol,alice
//
// t runs 1, 2, ..., T without gaps. Labels are mapped to item indices in
// order of first appearance unless an explicit item list is supplied.

#ifndef BTLCPD_IO_HPP_
#define BTLCPD_IO_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "btlcpd/simulator.hpp"
#include "btlcpd/types.hpp"

namespace btlcpd {

inline constexpr char kConvention[] = "first-index-of-new-regime";

struct LabeledSeries {
  ObservationSeries series;
  std::vector<std::string> labels;  // labels[i] names item i
};

using LabelEdge = std::pair<std::string, std::string>;

struct IngestOptions {
  // Fixes the item set and its order; other labels are rejected.
  std::optional<std::vector<std::string>> items;
  // Comparison graph. Defaults to the graph of observed pairs.
  std::optional<std::vector<LabelEdge>> graph;
};

// Throws ParseError on malformed input and DisconnectedGraphError when the
// comparison graph is not connected.
LabeledSeries read_observations(std::istream& in,
                                const IngestOptions& options = {});
LabeledSeries read_observations_file(const std::string& path,
                                     const IngestOptions& options = {});

// Labels default to the item indices.
void write_observations(std::ostream& out, const ObservationSeries& series,
                        const std::vector<std::string>& labels = {});

// One edge per line, "a,b" or "a b"; blank lines and '#' comments skipped.
std::vector<LabelEdge> read_edge_list(std::istream& in);
std::vector<LabelEdge> read_edge_list_file(const std::string& path);

// {"change_points": [...], "convention": ..., "t_max": T}, plus "items" when
// labels are given.
std::string segmentation_json(const Segmentation& segmentation,
                              const std::vector<std::string>& labels = {});
Segmentation parse_segmentation_json(const std::string& text);
Segmentation read_segmentation_file(const std::string& path);

// Keys: n, delta, changes (comma list of change tokens, may be empty), p,
// seed, graph (complete, or an edge-list path of 0-based item indices,
// relative to `base_dir`). Throws ParseError.
Scenario read_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario read_scenario_file(const std::string& path);
void write_scenario(std::ostream& out, const Scenario& scenario,
                    const std::string& graph_spec = "complete");

// Shortest round-trip decimal form; identical across runs and platforms.
std::string format_double(double value);

}  // namespace btlcpd

#endif  // BTLCPD_IO_HPP_
