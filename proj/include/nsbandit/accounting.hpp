// Copyright 2026 The nsbandit Authors.
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

#pragma once

#include <span>
#include <string>
#include <vector>

#include "nsbandit/core.hpp"

namespace nsbandit {

// Cumulative expected (dynamic) regret r_t = sum_{s<=t} (mu_s(*) - mu_s(I_s)),
// computed from the analytic means recorded in the trace, not the realized
// rewards. Length T, non-decreasing, increments in [0, B].
std::vector<double> regret_series(const EpisodeTrace& trace);

// Realized-reward counterpart, for diagnostics only: sum of oracle mean minus
// sampled reward. Can be negative early on.
std::vector<double> realized_regret_series(const EpisodeTrace& trace);

// Per-arm count of rounds where the arm was played while not being the
// instantaneous best arm.
std::vector<long> bad_play_counts(const EpisodeTrace& trace, int arm_count);

struct AggregateSummary {
  std::string policy;
  int replications = 0;
  long horizon = 0;
  ArmId frequency_arm = 1;
  std::vector<double> mean_regret;     // per round, mean over replications
  std::vector<double> stderr_regret;   // unbiased sample sd / sqrt(n)
  std::vector<double> arm_frequency;   // mean cumulative pull frequency of frequency_arm
  std::vector<double> mean_bad_plays;  // per arm
};

// Pointwise aggregation over replications of one policy. Throws
// std::invalid_argument on an empty set or mismatched horizons/policies.
AggregateSummary aggregate(std::span<const EpisodeTrace> traces, int arm_count,
                           ArmId frequency_arm = 1);

}  // namespace nsbandit
