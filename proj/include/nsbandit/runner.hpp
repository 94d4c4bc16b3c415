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

#include <memory>
#include <string>
#include <vector>

#include "nsbandit/accounting.hpp"
#include "nsbandit/core.hpp"
#include "nsbandit/environments.hpp"

namespace nsbandit::runner {

// ---------------------------------------------------------------------------
// Parameter tuning. Natural logs; window sizes round to the nearest integer
// and never drop below 2.
// ---------------------------------------------------------------------------

// gamma = 1 - sqrt(breakpoints/T)/(4B), for a known horizon and breakpoint
// budget. Throws std::domain_error when the result leaves (0,1).
double tune_gamma(long horizon, long breakpoints, double reward_bound);

// gamma = 1 - sqrt(rate)/(4B) for a breakpoint density `rate` in (0,1).
double tune_gamma_density(double rate, double reward_bound);

// tau = 2B*sqrt(T*log(T)/breakpoints), rounded, at least 2.
long tune_tau(long horizon, long breakpoints, double reward_bound);

// tau = 2B*sqrt(-log(rate)/rate), rounded, at least 2.
long tune_tau_density(double rate, double reward_bound);

// Horizon-free discount via dyadic blocks: for 2^k <= t < 2^(k+1),
// gamma = 1 - (2^k)^((beta-1)/2)/(4B), where breakpoints grow like T^beta.
double doubling_gamma(long t, double beta, double reward_bound);

// Preset parameter choices used by the figure presets.
double fig1_discount(long horizon);              // 1 - 1/(4*sqrt(T))
long fig1_window(long horizon);                  // round(4*sqrt(T*log T))
double exp3s_mix(int arm_count, long horizon, long breakpoints);  // capped at 1

// ---------------------------------------------------------------------------
// Experiment configuration.
// ---------------------------------------------------------------------------

struct PolicySpec {
  std::string kind;   // ucb1 | ducb | swucb | exp3s | oracle
  std::string label;  // row name in the CSVs, defaults to kind
  double xi = 0.5;
  double discount = 1.0;  // ducb
  long window = 0;        // swucb
  double mix = 0.0;       // exp3s exploration mixing
  double share = 0.0;     // exp3s weight sharing
};

struct ScenarioSpec {
  std::string preset;  // "fig1-left" | "fig1-right" | "" for an inline schedule
  bool periodic = false;
  double cycles = 1.0;
  std::vector<std::vector<MeanSegment>> arm_segments;  // inline piecewise schedule
};

struct ExperimentConfig {
  ScenarioSpec scenario;
  std::vector<PolicySpec> policies;
  long horizon = 10000;
  int replications = 100;
  uint64_t seed = 1;
  std::string out_dir = "out";
  ArmId frequency_arm = 1;
};

// Full configuration for a named preset, policies tuned for the horizon.
ExperimentConfig preset_config(const std::string& name, long horizon = 10000,
                               int replications = 100, uint64_t seed = 1);

// Reads a JSON config document; throws std::runtime_error with a message on
// malformed input. When the scenario is a preset and no policies are listed,
// the preset's tuned policy set is used.
ExperimentConfig load_config(const std::string& path);

std::unique_ptr<Environment> build_environment(const ExperimentConfig& config);
std::unique_ptr<Policy> build_policy(const PolicySpec& spec, const Environment& env);

// Runs every (policy x replication) episode and writes per_round.csv and
// summary.csv under config.out_dir. Outputs are byte-stable for identical
// configs and seeds. Returns the per-policy aggregates in config order.
std::vector<AggregateSummary> run_experiment(const ExperimentConfig& config);

// Float formatting used by every CSV emitter: shortest form at 17 significant
// digits.
std::string format_double(double value);

}  // namespace nsbandit::runner
