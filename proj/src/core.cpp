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

#include "nsbandit/core.hpp"

#include <stdexcept>
#include <string>

namespace nsbandit {

void EpisodeConfig::validate() const {
  if (arm_count < 2) throw std::invalid_argument("EpisodeConfig: arm_count must be >= 2");
  if (horizon < arm_count) throw std::invalid_argument("EpisodeConfig: horizon must be >= arm_count");
  if (!(reward_bound > 0)) throw std::invalid_argument("EpisodeConfig: reward_bound must be > 0");
  if (replications < 1) throw std::invalid_argument("EpisodeConfig: replications must be >= 1");
}

std::pair<ArmId, double> best_arm(const Environment& env, long t) {
  ArmId best = 1;
  double best_mean = env.mean_at(t, 1);
  for (ArmId i = 2; i <= env.arm_count(); ++i) {
    const double m = env.mean_at(t, i);
    if (m > best_mean) {
      best = i;
      best_mean = m;
    }
  }
  return {best, best_mean};
}

EpisodeTrace run_episode(const EpisodeConfig& config, const Environment& env,
                         Policy& policy, RngStream& rng, int replication) {
  config.validate();
  if (env.horizon() < config.horizon)
    throw std::invalid_argument("run_episode: environment horizon shorter than config horizon");
  if (env.arm_count() != config.arm_count)
    throw std::invalid_argument("run_episode: environment arm count does not match config");
  if (env.reward_bound() > config.reward_bound)
    throw std::invalid_argument("run_episode: environment rewards exceed config reward bound");

  policy.reset(config.arm_count, config.reward_bound);

  EpisodeTrace trace;
  trace.policy = policy.name();
  trace.replication = replication;
  trace.records.reserve(static_cast<size_t>(config.horizon));

  const bool forced = policy.forced_initialization();
  for (long t = 1; t <= config.horizon; ++t) {
    const ArmId arm = (forced && t <= config.arm_count) ? static_cast<ArmId>(t)
                                                        : policy.select(t, rng);
    const double reward = env.sample_reward(t, arm, rng);
    const auto [oracle, oracle_mean] = best_arm(env, t);
    trace.records.push_back({t, arm, reward, oracle, oracle_mean, env.mean_at(t, arm)});
    policy.observe(t, arm, reward);
  }
  return trace;
}

}  // namespace nsbandit
