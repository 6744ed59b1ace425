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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace btlcpd {
namespace {

LabeledSeries Read(const std::string& text, const IngestOptions& options = {}) {
  std::istringstream in(text);
  return read_observations(in, options);
}

TEST(ReadObservationsTest, SmallFile) {
  const LabeledSeries data =
      Read("t,winner,loser\n1,alice,bob\n2,carol,alice\n3,bob,carol\n");
  EXPECT_EQ(data.labels, (std::vector<std::string>{"alice", "bob", "carol"}));
  EXPECT_EQ(data.series.length(), 3);
  EXPECT_EQ(data.series.num_items(), 3);
  EXPECT_EQ(data.series.records(),
            (std::vector<Observation>{{1, 0, 1}, {2, 2, 0}, {3, 1, 2}}));
  EXPECT_EQ(data.series.graph().num_edges(), 3);
}

TEST(ReadObservationsTest, Malformed) {
  EXPECT_THROW(Read("t,winner,loser\n1,a,b\n1,b,a\n"), ParseError);
  EXPECT_THROW(Read("t,winner,loser\n1,a,b\n3,b,a\n"), ParseError);
  EXPECT_THROW(Read("time,w,l\n1,a,b\n"), ParseError);
  EXPECT_THROW(Read("t,winner,loser\n1,a,a\n"), ParseError);
  EXPECT_THROW(Read("t,winner,loser\n1,a\n"), ParseError);
  EXPECT_THROW(Read("t,winner,loser\nx,a,b\n"), ParseError);
  EXPECT_THROW(Read("t,winner,loser\n"), ParseError);
  EXPECT_THROW(Read(""), ParseError);
}

TEST(ReadObservationsTest, GraphChecks) {
  IngestOptions options;
  options.graph = std::vector<LabelEdge>{{"a", "b"}, {"b", "c"}};
  EXPECT_THROW(Read("t,winner,loser\n1,a,c\n", options), ParseError);
  const LabeledSeries ok = Read("t,winner,loser\n1,c,b\n", options);
  EXPECT_EQ(ok.series.num_items(), 3);
  EXPECT_EQ(ok.labels, (std::vector<std::string>{"c", "b", "a"}));

  // Observed pairs {a,b} and {c,d} leave the graph disconnected.
  EXPECT_THROW(Read("t,winner,loser\n1,a,b\n2,c,d\n"), DisconnectedGraphError);

  IngestOptions items;
  items.items = std::vector<std::string>{"x", "y"};
  EXPECT_THROW(Read("t,winner,loser\n1,x,z\n", items), ParseError);
  EXPECT_EQ(Read("t,winner,loser\n1,y,x\n", items).series.at(1),
            (Observation{1, 1, 0}));
}

TEST(ObservationsRoundTripTest, Identity) {
  Scenario scenario;
  scenario.n = 6;
  scenario.delta = 150;
  scenario.changes = {ChangeSpec::Parse("III")};
  scenario.rng_seed = 4;
  const Simulation sim = generate(scenario);
  std::ostringstream out;
  write_observations(out, sim.series);

  IngestOptions options;
  options.items = std::vector<std::string>{};
  for (int i = 0; i < scenario.n; ++i)
    options.items->push_back(std::to_string(i));
  options.graph = std::vector<LabelEdge>{};
  for (const auto& [i, j] : sim.series.graph().edges()) {
    options.graph->emplace_back(std::to_string(i), std::to_string(j));
  }
  const LabeledSeries back = Read(out.str(), options);
  EXPECT_EQ(back.series.records(), sim.series.records());
  EXPECT_EQ(back.series.graph().edges(), sim.series.graph().edges());

  std::ostringstream again;
  write_observations(again, back.series, back.labels);
  EXPECT_EQ(again.str(), out.str());
}

TEST(EdgeListTest, Formats) {
  std::istringstream in("# header\na,b\n\nb c  # trailing\n c , d \n");
  EXPECT_EQ(read_edge_list(in),
            (std::vector<LabelEdge>{{"a", "b"}, {"b", "c"}, {"c", "d"}}));
  std::istringstream bad("a,b,c\n");
  EXPECT_THROW(read_edge_list(bad), ParseError);
}

TEST(SegmentationJsonTest, RoundTrip) {
  const Segmentation seg({51, 101, 151}, 200);
  const std::string text = segmentation_json(seg);
  EXPECT_EQ(text,
            "{\n  \"change_points\": [\n    51,\n    101,\n    151\n  ],\n"
            "  \"convention\": \"first-index-of-new-regime\",\n"
            "  \"t_max\": 200\n}\n");
  EXPECT_EQ(parse_segmentation_json(text), seg);
  EXPECT_EQ(parse_segmentation_json(segmentation_json(Segmentation({}, 9))),
            Segmentation({}, 9));
  EXPECT_NE(segmentation_json(seg, {"a", "b"}).find("\"items\""),
            std::string::npos);
  EXPECT_THROW(parse_segmentation_json("{"), ParseError);
  EXPECT_THROW(parse_segmentation_json("{\"t_max\": 5}"), ParseError);
  EXPECT_THROW(
      parse_segmentation_json("{\"t_max\": 5, \"change_points\": [4, 2]}"),
      ParseError);
  EXPECT_THROW(parse_segmentation_json(
                   "{\"t_max\": 5, \"change_points\": [], \"convention\": "
                   "\"last-index\"}"),
               ParseError);
}

TEST(ScenarioIoTest, RoundTrip) {
  Scenario scenario;
  scenario.n = 12;
  scenario.delta = 250;
  scenario.changes = {ChangeSpec::Parse("I"), ChangeSpec::Parse("partial:0.3"),
                      ChangeSpec::Parse("random")};
  scenario.max_win_prob = 0.85;
  scenario.rng_seed = 123456789012345ULL;
  std::ostringstream out;
  write_scenario(out, scenario);
  std::istringstream in(out.str());
  const Scenario back = read_scenario(in);
  EXPECT_EQ(back.n, scenario.n);
  EXPECT_EQ(back.delta, scenario.delta);
  EXPECT_EQ(back.max_win_prob, scenario.max_win_prob);
  EXPECT_EQ(back.rng_seed, scenario.rng_seed);
  ASSERT_EQ(back.changes.size(), 3u);
  for (size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.changes[k].token(), scenario.changes[k].token());
  }
  EXPECT_EQ(back.graph, nullptr);
  EXPECT_EQ(generate(back).series.records(),
            generate(scenario).series.records());
}

TEST(ScenarioIoTest, GraphFileAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("btlcpd_io_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  {
    std::ofstream edges(dir / "path.txt");
    edges << "0 1\n1 2\n2 3\n";
    std::ofstream split(dir / "split.txt");
    split << "0 1\n2 3\n";
  }
  std::istringstream in("n = 4\ndelta = 10\ngraph = path.txt\n");
  const Scenario scenario = read_scenario(in, dir.string());
  ASSERT_NE(scenario.graph, nullptr);
  EXPECT_EQ(scenario.graph->num_edges(), 3);
  EXPECT_TRUE(scenario.changes.empty());

  std::istringstream disconnected("n = 4\ngraph = split.txt\n");
  EXPECT_THROW(read_scenario(disconnected, dir.string()),
               DisconnectedGraphError);
  std::istringstream unknown("n = 4\ncolour = red\n");
  EXPECT_THROW(read_scenario(unknown), ParseError);
  std::istringstream duplicate("n = 4\nn = 5\n");
  EXPECT_THROW(read_scenario(duplicate), ParseError);
  std::istringstream bad_p("p = 1.5\n");
  EXPECT_THROW(read_scenario(bad_p), ParseError);
  std::istringstream bad_change("changes = I, IV\n");
  EXPECT_THROW(read_scenario(bad_change), ParseError);
  std::filesystem::remove_all(dir);
}

TEST(FormatDoubleTest, Shortest) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1.5e-7), "-1.5e-07");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

}  // namespace
}  // namespace btlcpd
