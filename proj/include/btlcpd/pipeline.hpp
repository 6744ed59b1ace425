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

// Detector dispatch shared by the CLI and the tuning harness.

#ifndef BTLCPD_PIPELINE_HPP_
#define BTLCPD_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "btlcpd/dp_segmentation.hpp"
#include "btlcpd/interval_costs.hpp"
#include "btlcpd/local_refine.hpp"
#include "btlcpd/mle_solver.hpp"
#include "btlcpd/types.hpp"
#include "btlcpd/wbs.hpp"

namespace btlcpd {

enum class Method { kDp, kDplr, kWbsGlr, kWbsSst, kWbsBorda };

// dp | dplr | wbs-glr | wbs-sst | wbs-borda. Throws ParseError.
Method ParseMethod(const std::string& name);
std::string MethodName(Method method);

struct DetectOptions {
  Method method = Method::kDplr;
  // DP penalty, or the WBS threshold for the wbs-* methods.
  double gamma = 1.0;
  DpOptions dp;
  RefineOptions refine;
  int wbs_intervals = 50;
  std::uint64_t seed = 0;
  // Minimum distance of a WBS split from the interval ends.
  int wbs_min_gap = 1;
};

struct Detection {
  Segmentation segmentation;
  // Preliminary DP estimate for dplr; equal to `segmentation` otherwise.
  Segmentation preliminary;
  std::vector<std::string> warnings;
};

// Runs one detector against a (possibly shared) interval cost cache.
Detection detect(IntervalCosts& costs, const DetectOptions& options);
Detection detect(const ObservationSeries& series, const SolverConfig& solver,
                 const DetectOptions& options);

// dp_detect followed by refine on the same cost cache.
Segmentation run_dplr(const ObservationSeries& series, double gamma,
                      const SolverConfig& solver,
                      const DpOptions& dp_options = {});

}  // namespace btlcpd

#endif  // BTLCPD_PIPELINE_HPP_
