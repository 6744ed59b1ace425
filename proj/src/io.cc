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

#include "btlcpd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace btlcpd {
namespace {

std::string Trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(text);
  while (std::getline(stream, field, sep)) fields.push_back(Trim(field));
  if (!text.empty() && text.back() == sep) fields.push_back("");
  return fields;
}

template <typename T>
T ParseNumber(const std::string& text, const std::string& what) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("bad " + what + " '" + text + "'");
  }
  return value;
}

double ParseReal(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  throw ParseError("bad " + what + " '" + text + "'");
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

LabeledSeries read_observations(std::istream& in,
                                const IngestOptions& options) {
  std::vector<std::string> labels;
  std::map<std::string, int> index;
  const bool fixed = options.items.has_value();
  if (fixed) {
    for (const std::string& label : *options.items) {
      if (!index.emplace(label, static_cast<int>(labels.size())).second) {
        throw ParseError("duplicate item '" + label + "'");
      }
      labels.push_back(label);
    }
  }
  auto lookup = [&](const std::string& label, int line) {
    if (label.empty()) {
      throw ParseError("empty label on line " + std::to_string(line));
    }
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    if (fixed) {
      throw ParseError("unknown item '" + label + "' on line " +
                       std::to_string(line));
    }
    const int id = static_cast<int>(labels.size());
    index.emplace(label, id);
    labels.push_back(label);
    return id;
  };

  std::string line;
  int line_no = 0;
  bool header = false;
  std::vector<Observation> records;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = Trim(line);
    if (row.empty()) continue;
    const auto fields = SplitOn(row, ',');
    if (!header) {
      if (fields != std::vector<std::string>{"t", "winner", "loser"}) {
        throw ParseError("expected header 't,winner,loser'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields on line " + std::to_string(line_no));
    }
    const int t = ParseNumber<int>(fields[0], "time");
    if (t != static_cast<int>(records.size()) + 1) {
      throw ParseError("time " + fields[0] + " on line " +
                       std::to_string(line_no) + " breaks the sequence 1..T");
    }
    const int winner = lookup(fields[1], line_no);
    const int loser = lookup(fields[2], line_no);
    if (winner == loser) {
      throw ParseError("winner equals loser on line " +
                       std::to_string(line_no));
    }
    records.push_back({t, winner, loser});
  }
  if (!header) throw ParseError("missing header");
  if (records.empty()) throw ParseError("no observations");

  std::vector<std::pair<int, int>> edges;
  if (options.graph) {
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : *options.graph) {
      int i = lookup(a, 0);
      int j = lookup(b, 0);
      if (i == j) throw ParseError("self loop on item '" + a + "'");
      if (i > j) std::swap(i, j);
      if (seen.emplace(i, j).second) edges.emplace_back(i, j);
    }
  } else {
    std::set<std::pair<int, int>> seen;
    for (const Observation& obs : records) {
      seen.emplace(std::min(obs.winner, obs.loser),
                   std::max(obs.winner, obs.loser));
    }
    edges.assign(seen.begin(), seen.end());
  }
  const int n = static_cast<int>(labels.size());
  if (n < 2) throw ParseError("need at least two items");
  auto graph = std::make_shared<const ComparisonGraph>(n, std::move(edges));
  for (const Observation& obs : records) {
    if (!graph->has_edge(obs.winner, obs.loser)) {
      throw ParseError("pair (" + labels[obs.winner] + ", " +
                       labels[obs.loser] +
                       ") at t=" + std::to_string(obs.time) +
                       " is not in the comparison graph");
    }
  }
  return LabeledSeries{ObservationSeries(graph, std::move(records)),
                       std::move(labels)};
}

LabeledSeries read_observations_file(const std::string& path,
                                     const IngestOptions& options) {
  std::ifstream in = OpenOrThrow(path);
  return read_observations(in, options);
}

void write_observations(std::ostream& out, const ObservationSeries& series,
                        const std::vector<std::string>& labels) {
  auto name = [&](int i) {
    return labels.empty() ? std::to_string(i) : labels.at(i);
  };
  out << "t,winner,loser\n";
  for (const Observation& obs : series.records()) {
    out << obs.time << ',' << name(obs.winner) << ',' << name(obs.loser)
        << '\n';
  }
}

std::vector<LabelEdge> read_edge_list(std::istream& in) {
  std::vector<LabelEdge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string row = Trim(line);
    if (row.empty()) continue;
    std::replace(row.begin(), row.end(), '\t', ' ');
    std::vector<std::string> fields;
    if (row.find(',') != std::string::npos) {
      fields = SplitOn(row, ',');
    } else {
      std::istringstream stream(row);
      for (std::string field; stream >> field;) fields.push_back(field);
    }
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError("expected two items on edge-list line " +
                       std::to_string(line_no));
    }
    edges.emplace_back(fields[0], fields[1]);
  }
  return edges;
}

std::vector<LabelEdge> read_edge_list_file(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return read_edge_list(in);
}

std::string segmentation_json(const Segmentation& segmentation,
                              const std::vector<std::string>& labels) {
  nlohmann::json doc;
  doc["t_max"] = segmentation.t_max();
  doc["change_points"] = segmentation.change_points();
  doc["convention"] = kConvention;
  if (!labels.empty()) doc["items"] = labels;
  return doc.dump(2) + "\n";
}

Segmentation parse_segmentation_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("t_max") ||
      !doc.contains("change_points")) {
    throw ParseError("segmentation JSON needs t_max and change_points");
  }
  if (doc.contains("convention") && doc["convention"] != kConvention) {
    throw ParseError("unsupported change point convention");
  }
  try {
    const int t_max = doc.at("t_max").get<int>();
    auto points = doc.at("change_points").get<std::vector<int>>();
    return Segmentation(std::move(points), t_max);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad segmentation JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Segmentation read_segmentation_file(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_segmentation_json(buffer.str());
}

Scenario read_scenario(std::istream& in, const std::string& base_dir) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string row = Trim(line);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key = value on config line " +
                       std::to_string(line_no));
    }
    const std::string key = Trim(row.substr(0, eq));
    if (!values.emplace(key, Trim(row.substr(eq + 1))).second) {
      throw ParseError("duplicate config key '" + key + "'");
    }
  }

  Scenario scenario;
  for (const auto& [key, value] : values) {
    if (key == "n") {
      scenario.n = ParseNumber<int>(value, "n");
    } else if (key == "delta") {
      scenario.delta = ParseNumber<int>(value, "delta");
    } else if (key == "p") {
      scenario.max_win_prob = ParseReal(value, "p");
    } else if (key == "seed") {
      scenario.rng_seed = ParseNumber<std::uint64_t>(value, "seed");
    } else if (key == "changes") {
      if (!value.empty()) {
        for (const std::string& token : SplitOn(value, ',')) {
          scenario.changes.push_back(ChangeSpec::Parse(token));
        }
      }
    } else if (key != "graph") {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  const auto graph = values.find("graph");
  if (graph != values.end() && graph->second != "complete") {
    std::filesystem::path path(graph->second);
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : read_edge_list_file(path.string())) {
      edges.emplace_back(ParseNumber<int>(a, "item index"),
                         ParseNumber<int>(b, "item index"));
    }
    try {
      scenario.graph =
          std::make_shared<const ComparisonGraph>(scenario.n, std::move(edges));
    } catch (const DisconnectedGraphError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  try {
    scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return scenario;
}

Scenario read_scenario_file(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return read_scenario(in, dir.empty() ? "." : dir);
}

void write_scenario(std::ostream& out, const Scenario& scenario,
                    const std::string& graph_spec) {
  std::string changes;
  for (const ChangeSpec& spec : scenario.changes) {
    if (!changes.empty()) changes += ',';
    changes += spec.token();
  }
  out << "n = " << scenario.n << '\n'
      << "delta = " << scenario.delta << '\n'
      << "changes = " << changes << '\n'
      << "p = " << format_double(scenario.max_win_prob) << '\n'
      << "seed = " << scenario.rng_seed << '\n'
      << "graph = " << graph_spec << '\n';
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace btlcpd
