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

#include "btlcpd/pipeline.hpp"

#include <utility>

namespace btlcpd {

Method ParseMethod(const std::string& name) {
  if (name == "dp") return Method::kDp;
  if (name == "dplr") return Method::kDplr;
  if (name == "wbs-glr") return Method::kWbsGlr;
  if (name == "wbs-sst") return Method::kWbsSst;
  if (name == "wbs-borda") return Method::kWbsBorda;
  throw ParseError("unknown method '" + name + "'");
}

std::string MethodName(Method method) {
  switch (method) {
    case Method::kDp:
      return "dp";
    case Method::kDplr:
      return "dplr";
    case Method::kWbsGlr:
      return "wbs-glr";
    case Method::kWbsSst:
      return "wbs-sst";
    case Method::kWbsBorda:
      return "wbs-borda";
  }
  return "";
}

Detection detect(IntervalCosts& costs, const DetectOptions& options) {
  Detection out;
  switch (options.method) {
    case Method::kDp:
    case Method::kDplr: {
      out.preliminary =
          dp_detect(costs, options.gamma, options.dp).segmentation;
      if (options.method == Method::kDp) {
        out.segmentation = out.preliminary;
        return out;
      }
      RefineResult refined = refine(costs, out.preliminary, options.refine);
      out.segmentation = std::move(refined.segmentation);
      out.warnings = std::move(refined.warnings);
      return out;
    }
    case Method::kWbsGlr:
    case Method::kWbsSst:
    case Method::kWbsBorda: {
      WbsConfig config;
      config.intervals_m = options.wbs_intervals;
      config.threshold_gamma = options.gamma;
      config.rng_seed = options.seed;
      config.min_gap = options.wbs_min_gap;
      config.statistic = options.method == Method::kWbsGlr ? WbsStatistic::kGlr
                         : options.method == Method::kWbsSst
                             ? WbsStatistic::kSst
                             : WbsStatistic::kBorda;
      out.segmentation = wbs_detect(costs, config);
      out.preliminary = out.segmentation;
      return out;
    }
  }
  return out;
}

Detection detect(const ObservationSeries& series, const SolverConfig& solver,
                 const DetectOptions& options) {
  IntervalCosts costs(series, solver);
  return detect(costs, options);
}

Segmentation run_dplr(const ObservationSeries& series, double gamma,
                      const SolverConfig& solver, const DpOptions& dp_options) {
  DetectOptions options;
  options.method = Method::kDplr;
  options.gamma = gamma;
  options.dp = dp_options;
  return detect(series, solver, options).segmentation;
}

}  // namespace btlcpd
