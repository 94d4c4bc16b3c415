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

#include "nsbandit/environments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nsbandit {

namespace {

void check_round(long t, long horizon) {
  if (t < 1 || t > horizon) throw std::out_of_range("round out of range");
}

void check_arm(ArmId arm, int arm_count) {
  if (arm < 1 || arm > arm_count) throw std::out_of_range("arm out of range");
}

}  // namespace

PiecewiseConstantBernoulli::PiecewiseConstantBernoulli(
    long horizon, std::vector<std::vector<MeanSegment>> arm_segments)
    : horizon_(horizon), segments_(std::move(arm_segments)) {
  if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  if (segments_.empty()) throw std::invalid_argument("at least one arm required");
  for (const auto& schedule : segments_) {
    if (schedule.empty() || schedule.front().start != 1)
      throw std::invalid_argument("each arm's first segment must start at round 1");
    long prev = 0;
    for (const auto& seg : schedule) {
      if (seg.start <= prev) throw std::invalid_argument("segment starts must be strictly increasing");
      if (seg.probability < 0.0 || seg.probability > 1.0)
        throw std::invalid_argument("segment probability must lie in [0,1]");
      prev = seg.start;
    }
  }
}

double PiecewiseConstantBernoulli::mean_at(long t, ArmId arm) const {
  check_round(t, horizon_);
  check_arm(arm, arm_count());
  const auto& schedule = segments_[static_cast<size_t>(arm - 1)];
  // Last segment with start <= t.
  auto it = std::upper_bound(schedule.begin(), schedule.end(), t,
                             [](long round, const MeanSegment& seg) { return round < seg.start; });
  return std::prev(it)->probability;
}

PeriodicBernoulli::PeriodicBernoulli(long horizon, double cycles)
    : horizon_(horizon), cycles_(cycles) {
  if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(cycles_ > 0)) throw std::invalid_argument("cycles must be > 0");
}

double PeriodicBernoulli::mean_at(long t, ArmId arm) const {
  check_round(t, horizon_);
  check_arm(arm, 2);
  if (arm == 2) return 0.5;
  const double phase = 6.0 * std::numbers::pi * cycles_ * static_cast<double>(t) /
                       static_cast<double>(horizon_);
  return 0.5 + 0.4 * std::cos(phase);
}

PiecewiseConstantBernoulli fig1_left_environment(long horizon) {
  const long first_change = std::max<long>(2, (horizon * 3) / 10);
  const long second_change = std::max<long>(first_change + 1, horizon / 2);
  return PiecewiseConstantBernoulli(
      horizon, {{{1, 0.5}},
                {{1, 0.3}},
                {{1, 0.4}, {first_change, 0.9}, {second_change, 0.4}}});
}

PeriodicBernoulli fig1_right_environment(long horizon, double cycles) {
  return PeriodicBernoulli(horizon, cycles);
}

std::vector<long> breakpoint_rounds(const Environment& env, long horizon) {
  const long last = std::min(horizon, env.horizon());
  std::vector<long> rounds;
  for (long t = 2; t <= last; ++t) {
    for (ArmId i = 1; i <= env.arm_count(); ++i) {
      if (env.mean_at(t, i) != env.mean_at(t - 1, i)) {
        rounds.push_back(t);
        break;
      }
    }
  }
  return rounds;
}

long breakpoint_count(const Environment& env, long horizon) {
  return static_cast<long>(breakpoint_rounds(env, horizon).size());
}

double delta_mu(const Environment& env, long horizon, ArmId arm) {
  check_arm(arm, env.arm_count());
  const long last = std::min(horizon, env.horizon());
  double min_gap = std::numeric_limits<double>::infinity();
  for (long t = 1; t <= last; ++t) {
    const double best = best_arm(env, t).second;
    const double own = env.mean_at(t, arm);
    if (own < best) min_gap = std::min(min_gap, best - own);
  }
  if (!std::isfinite(min_gap))
    throw std::domain_error("delta_mu: arm is optimal at every round, gap undefined");
  return min_gap;
}

}  // namespace nsbandit
