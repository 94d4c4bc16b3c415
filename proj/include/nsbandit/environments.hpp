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

#include <vector>

#include "nsbandit/core.hpp"

namespace nsbandit {

// One constant-mean stretch of an arm's schedule, active from `start` until
// the next segment begins.
struct MeanSegment {
  long start = 1;            // first round of the segment, 1-based
  double probability = 0.5;  // Bernoulli success probability on [0,1]
};

// Common base for the built-in Bernoulli processes: rewards are 0/1 draws
// with the scheduled success probability, B = 1.
class BernoulliEnvironment : public Environment {
 public:
  double reward_bound() const override { return 1.0; }
  double sample_reward(long t, ArmId arm, RngStream& rng) const override {
    return rng.bernoulli(mean_at(t, arm)) ? 1.0 : 0.0;
  }
};

// Per-arm piecewise-constant Bernoulli schedule with abrupt changes at the
// segment starts.
class PiecewiseConstantBernoulli final : public BernoulliEnvironment {
 public:
  // arm_segments[i] is the ordered schedule of arm i+1; each arm's first
  // segment must start at round 1 and starts must be strictly increasing.
  PiecewiseConstantBernoulli(long horizon, std::vector<std::vector<MeanSegment>> arm_segments);

  int arm_count() const override { return static_cast<int>(segments_.size()); }
  long horizon() const override { return horizon_; }
  double mean_at(long t, ArmId arm) const override;

  const std::vector<std::vector<MeanSegment>>& segments() const { return segments_; }

 private:
  long horizon_;
  std::vector<std::vector<MeanSegment>> segments_;
};

// Two arms: arm 2 constant at 0.5, arm 1 drifting as
// 0.5 + 0.4*cos(6*pi*cycles*t/T). The best arm changes smoothly and
// periodically.
class PeriodicBernoulli final : public BernoulliEnvironment {
 public:
  explicit PeriodicBernoulli(long horizon, double cycles = 1.0);

  int arm_count() const override { return 2; }
  long horizon() const override { return horizon_; }
  double mean_at(long t, ArmId arm) const override;

  double cycles() const { return cycles_; }

 private:
  long horizon_;
  double cycles_;
};

// The three-arm reference schedule with two abrupt changes: arms at 0.5 and
// 0.3 throughout, arm 3 at 0.4 except 0.9 on rounds [3T/10, T/2).
PiecewiseConstantBernoulli fig1_left_environment(long horizon = 10000);

// The smoothly drifting two-arm schedule used by the fig1-right preset.
PeriodicBernoulli fig1_right_environment(long horizon = 10000, double cycles = 1.0);

// Ordered rounds t in [2, horizon] at which any arm's mean differs from the
// previous round (a simultaneous change of several arms counts once).
std::vector<long> breakpoint_rounds(const Environment& env, long horizon);

// Number of such rounds.
long breakpoint_count(const Environment& env, long horizon);

// Minimum of mu_t(*) - mu_t(arm) over rounds t <= horizon where the arm's
// mean is strictly below the best mean. Throws std::domain_error when the arm
// is optimal (or tied for optimal) at every round.
double delta_mu(const Environment& env, long horizon, ArmId arm);

}  // namespace nsbandit
