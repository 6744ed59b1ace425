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

// Command-line driver: simulate, detect, tune, evaluate and fit.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btlcpd/dp_segmentation.hpp"
#include "btlcpd/evaluation.hpp"
#include "btlcpd/interval_costs.hpp"
#include "btlcpd/io.hpp"
#include "btlcpd/mle_solver.hpp"
#include "btlcpd/pipeline.hpp"
#include "btlcpd/simulator.hpp"
#include "btlcpd/types.hpp"

namespace {

using namespace btlcpd;

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 2;
constexpr int kExitDisconnected = 3;
constexpr int kExitNonConvergence = 4;

struct Common {
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

struct InputFlags {
  std::string in;
  std::string graph;
  std::string items;
};

struct SolverFlags {
  std::string mode = "ridge";
  double bound = 10.0;
  double lambda = 0.1;

  SolverConfig config() const {
    if (mode == "ridge") return SolverConfig::Ridge(lambda, bound);
    if (mode == "constrained") return SolverConfig::Constrained(bound);
    throw ParseError("unknown solver mode '" + mode + "'");
  }
};

struct DetectFlags {
  std::string method = "dplr";
  int wbs_m = 50;
  std::optional<int> min_seg;
  int max_lookback = 0;
};

void AddInput(CLI::App* cmd, InputFlags* flags) {
  cmd->add_option("--in", flags->in, "observation CSV")->required();
  cmd->add_option("--graph", flags->graph,
                  "edge list of item labels (default: observed pairs)");
  cmd->add_option("--items", flags->items,
                  "file with one item label per line; fixes the item set");
}

void AddSolver(CLI::App* cmd, SolverFlags* flags) {
  cmd->add_option("--mode", flags->mode, "ridge | constrained")
      ->capture_default_str();
  cmd->add_option("--bound", flags->bound, "score bound B")
      ->capture_default_str();
  cmd->add_option("--lambda", flags->lambda, "ridge penalty")
      ->capture_default_str();
}

void AddDetect(CLI::App* cmd, DetectFlags* flags) {
  cmd->add_option("--method", flags->method,
                  "dp | dplr | wbs-glr | wbs-sst | wbs-borda")
      ->capture_default_str();
  cmd->add_option("--wbs-m", flags->wbs_m, "number of WBS intervals")
      ->capture_default_str();
  cmd->add_option("--min-seg", flags->min_seg,
                  "shortest DP segment (default max(2, n/4))");
  cmd->add_option("--max-lookback", flags->max_lookback,
                  "longest DP segment, 0 for unbounded")
      ->capture_default_str();
}

LabeledSeries Load(const InputFlags& flags) {
  IngestOptions options;
  if (!flags.graph.empty()) options.graph = read_edge_list_file(flags.graph);
  if (!flags.items.empty()) {
    std::ifstream in(flags.items);
    if (!in) throw ParseError("cannot open '" + flags.items + "'");
    std::vector<std::string> items;
    for (std::string line; std::getline(in, line);) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (!line.empty()) items.push_back(line);
    }
    options.items = std::move(items);
  }
  return read_observations_file(flags.in, options);
}

DetectOptions MakeDetectOptions(const DetectFlags& flags, const Common& common,
                                int num_items, double gamma) {
  DetectOptions options;
  options.method = ParseMethod(flags.method);
  options.gamma = gamma;
  options.dp.min_seg = flags.min_seg.value_or(default_min_seg(num_items));
  options.dp.max_lookback = flags.max_lookback;
  options.dp.threads = common.threads;
  options.wbs_intervals = flags.wbs_m;
  options.seed = common.seed.value_or(0);
  return options;
}

void CheckConvergence(const SolverConfig& solver, int nonconverged) {
  if (solver.mode == SolverMode::kConstrained && nonconverged > 0) {
    throw ConvergenceError(std::to_string(nonconverged) +
                           " interval fit(s) did not converge");
  }
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream stream(text);
  for (std::string token; std::getline(stream, token, ',');) {
    try {
      size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size() || !(value >= 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(token);
      }
      grid.push_back(value);
    } catch (const std::exception&) {
      throw ParseError("bad gamma grid entry '" + token + "'");
    }
  }
  if (grid.empty()) throw ParseError("empty gamma grid");
  return grid;
}

int RunSimulate(const std::string& config_path, const std::string& out_path,
                const std::string& truth_path, const Common& common) {
  Scenario scenario = read_scenario_file(config_path);
  if (common.seed) scenario.rng_seed = *common.seed;
  const Simulation sim = generate(scenario);
  {
    std::ofstream out = OpenOut(out_path);
    write_observations(out, sim.series);
  }
  const std::string sidecar =
      truth_path.empty() ? out_path + ".truth.json" : truth_path;
  {
    std::ofstream out = OpenOut(sidecar);
    out << segmentation_json(sim.truth);
  }
  std::cout << "T=" << sim.series.length() << " n=" << scenario.n
            << " K=" << scenario.num_changes() << " seed=" << scenario.rng_seed
            << "\n"
            << "truth=" << sidecar << "\n";
  return kExitOk;
}

int RunDetect(const InputFlags& input, const SolverFlags& solver_flags,
              const DetectFlags& detect_flags, double gamma,
              const std::string& out_path, const Common& common) {
  const LabeledSeries data = Load(input);
  const SolverConfig solver = solver_flags.config();
  const DetectOptions options =
      MakeDetectOptions(detect_flags, common, data.series.num_items(), gamma);
  IntervalCosts costs(data.series, solver);
  const Detection found = detect(costs, options);
  CheckConvergence(solver, costs.nonconverged_fits());
  for (const std::string& warning : found.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  const std::string json = segmentation_json(found.segmentation, data.labels);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out = OpenOut(out_path);
    out << json;
  }
  return kExitOk;
}

int RunTune(const InputFlags& input, const SolverFlags& solver_flags,
            const DetectFlags& detect_flags, const std::string& grid_text,
            const std::string& out_path, const std::string& seg_out,
            const Common& common) {
  const LabeledSeries data = Load(input);
  const SolverConfig solver = solver_flags.config();
  const std::vector<double> grid =
      grid_text.empty() ? default_gamma_grid() : ParseGrid(grid_text);
  const DetectOptions options =
      MakeDetectOptions(detect_flags, common, data.series.num_items(), 0.0);
  const CvResult cv = cv_select(data.series, grid, options, solver);

  std::ofstream out = OpenOut(out_path);
  out << "gamma,k_hat,test_loss\n";
  for (const CvRow& row : cv.table) {
    out << format_double(row.gamma) << ',' << row.k_hat << ','
        << format_double(row.test_loss) << '\n';
  }
  if (!seg_out.empty()) {
    std::ofstream seg = OpenOut(seg_out);
    seg << segmentation_json(cv.segmentation, data.labels);
  }
  std::cout << "best_gamma=" << format_double(cv.best_gamma) << "\n"
            << "k_hat=" << cv.segmentation.num_changes() << "\n";
  return kExitOk;
}

int RunEvaluate(const std::string& est_path, const std::string& truth_path) {
  const Segmentation est = read_segmentation_file(est_path);
  const Segmentation truth = read_segmentation_file(truth_path);
  if (est.t_max() != truth.t_max()) {
    throw ParseError("estimate and truth disagree on t_max");
  }
  std::cout << "hausdorff=" << format_double(hausdorff(est, truth)) << "\n"
            << "k_hat=" << est.num_changes() << "\n"
            << "k=" << truth.num_changes() << "\n"
            << "k_category=" << KCountName(count_k(est, truth)) << "\n";
  return kExitOk;
}

TimeRange ParseInterval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("interval must be s:e");
  try {
    size_t used_s = 0;
    size_t used_e = 0;
    const std::string s = text.substr(0, colon);
    const std::string e = text.substr(colon + 1);
    TimeRange range{std::stoi(s, &used_s), std::stoi(e, &used_e)};
    if (used_s == s.size() && used_e == e.size()) return range;
  } catch (const std::exception&) {
  }
  throw ParseError("bad interval '" + text + "'");
}

int RunFit(const InputFlags& input, const SolverFlags& solver_flags,
           const std::string& interval) {
  const LabeledSeries data = Load(input);
  const SolverConfig solver = solver_flags.config();
  TimeRange range = ParseInterval(interval);
  if (range.empty() || range.first < 1 || range.last > data.series.length()) {
    throw ParseError("interval outside [1, " +
                     std::to_string(data.series.length()) + "]");
  }
  const FitResult fit = fit_interval(data.series, range, solver);
  CheckConvergence(solver, fit.converged ? 0 : 1);

  const int n = data.series.num_items();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return fit.theta_hat[a] > fit.theta_hat[b];
  });
  std::cout << "interval=" << range.first << ':' << range.last
            << " objective=" << format_double(fit.objective)
            << " converged=" << (fit.converged ? "true" : "false") << "\n"
            << "rank,item,theta\n";
  for (int r = 0; r < n; ++r) {
    std::cout << r + 1 << ',' << data.labels[order[r]] << ','
              << format_double(fit.theta_hat[order[r]]) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change point detection for time-varying BTL models"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads, 0 for all cores")
      ->capture_default_str();
  app.add_option("--seed", common.seed, "random seed");

  std::string config_path, out_path, truth_path;
  auto* simulate =
      app.add_subcommand("simulate", "generate a synthetic series");
  simulate->add_option("--config", config_path, "scenario file")->required();
  simulate->add_option("--out", out_path, "observation CSV")->required();
  simulate->add_option("--truth", truth_path,
                       "truth JSON (default <out>.truth.json)");

  InputFlags input;
  SolverFlags solver;
  DetectFlags detect_flags;
  double gamma = 0.0;
  std::string detect_out;
  auto* detect_cmd = app.add_subcommand("detect", "locate change points");
  AddInput(detect_cmd, &input);
  AddSolver(detect_cmd, &solver);
  AddDetect(detect_cmd, &detect_flags);
  detect_cmd->add_option("--gamma", gamma, "penalty or WBS threshold")
      ->required();
  detect_cmd->add_option("--out", detect_out, "segmentation JSON");

  std::string grid_text, tune_out, seg_out;
  auto* tune = app.add_subcommand("tune", "cross-validate gamma");
  AddInput(tune, &input);
  AddSolver(tune, &solver);
  AddDetect(tune, &detect_flags);
  tune->add_option("--gamma-grid", grid_text,
                   "comma separated gamma values (default 2.5 * 2^(k/4), "
                   "k = 0..24)");
  tune->add_option("--out", tune_out, "CSV of gamma,k_hat,test_loss")
      ->required();
  tune->add_option("--segmentation-out", seg_out, "selected segmentation JSON");

  std::string est_path, eval_truth;
  auto* evaluate = app.add_subcommand("evaluate", "compare with the truth");
  evaluate->add_option("--est", est_path, "estimated segmentation")->required();
  evaluate->add_option("--truth", eval_truth, "true segmentation")->required();

  std::string interval;
  auto* fit = app.add_subcommand("fit", "fit scores on one interval");
  AddInput(fit, &input);
  AddSolver(fit, &solver);
  fit->add_option("--interval", interval, "s:e, inclusive")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (*simulate)
      return RunSimulate(config_path, out_path, truth_path, common);
    if (*detect_cmd) {
      return RunDetect(input, solver, detect_flags, gamma, detect_out, common);
    }
    if (*tune) {
      return RunTune(input, solver, detect_flags, grid_text, tune_out, seg_out,
                     common);
    }
    if (*evaluate) return RunEvaluate(est_path, eval_truth);
    if (*fit) return RunFit(input, solver, interval);
  } catch (const DisconnectedGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisconnected;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
