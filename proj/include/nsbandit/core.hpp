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

#include <string>
#include <utility>
#include <vector>

#include "nsbandit/rng.hpp"

namespace nsbandit {

// Arms are 1-based throughout, matching the usual i in {1,...,K} convention.
using ArmId = int;

struct EpisodeConfig {
  int arm_count = 2;        // K
  long horizon = 0;         // T (rounds)
  double reward_bound = 1;  // B, rewards live in [0, B]
  uint64_t seed = 0;
  int replications = 1;

  // Throws std::invalid_argument when K < 2, T < K, B <= 0 or replications < 1.
  void validate() const;
};

struct RoundRecord {
  long round = 0;           // t, 1-based
  ArmId arm = 0;            // arm played at t
  double reward = 0;        // sampled reward
  ArmId oracle_arm = 0;     // instantaneous best arm at t
  double oracle_mean = 0;   // mean of the best arm at t
  double arm_mean = 0;      // mean of the played arm at t
};

struct EpisodeTrace {
  std::string policy;
  int replication = 0;
  std::vector<RoundRecord> records;  // length T, rounds 1..T in order
};

// Reward-generating process over rounds 1..horizon(). Implementations are
// immutable after construction and safe to share across replications.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int arm_count() const = 0;
  virtual long horizon() const = 0;
  virtual double reward_bound() const = 0;

  // Scheduled mean of `arm` at round t (exact, no sampling).
  // Throws std::out_of_range unless 1 <= t <= horizon().
  virtual double mean_at(long t, ArmId arm) const = 0;

  virtual double sample_reward(long t, ArmId arm, RngStream& rng) const = 0;
};

// Instantaneous best arm and its mean, lowest index winning ties.
std::pair<ArmId, double> best_arm(const Environment& env, long t);

// Decision rule: selects an arm each round from past plays and rewards.
// One instance serves one replication at a time; run_episode resets it.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string name() const = 0;
  virtual void reset(int arm_count, double reward_bound) = 0;
  virtual ArmId select(long t, RngStream& rng) = 0;
  virtual void observe(long t, ArmId arm, double reward) = 0;

  // UCB-family policies open with the deterministic sweep 1..K; policies
  // returning false (oracle, EXP3.S) select from round 1.
  virtual bool forced_initialization() const { return true; }

  virtual bool randomized() const { return false; }

  // True for benchmark policies that read the environment schedule instead
  // of the observed rewards.
  virtual bool clairvoyant() const { return false; }
};

// Plays one episode of config.horizon rounds: rounds 1..K play arms 1..K in
// order when the policy asks for forced initialization, later rounds delegate
// to the policy. Only the played arm's reward is drawn; oracle quantities are
// recorded from the analytic means.
//
// Throws std::invalid_argument when the environment horizon or arm count does
// not cover the config.
EpisodeTrace run_episode(const EpisodeConfig& config, const Environment& env,
                         Policy& policy, RngStream& rng, int replication = 0);

}  // namespace nsbandit
