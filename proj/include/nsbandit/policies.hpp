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

#include <deque>
#include <span>
#include <string>
#include <vector>

#include "nsbandit/core.hpp"

namespace nsbandit {

// Argmax over per-arm index values, lowest arm winning ties; +infinity beats
// every finite value. Throws std::logic_error on NaN or empty input.
ArmId select_arm(std::span<const double> indices);

// Upper-confidence index policy over plain empirical means:
// index(i) = mean(i) + B*sqrt(xi*log(t)/N_t(i)), unplayed arms at +infinity.
class Ucb1Policy final : public Policy {
 public:
  explicit Ucb1Policy(double xi = 0.5, std::string label = "ucb1");

  std::string name() const override { return label_; }
  void reset(int arm_count, double reward_bound) override;
  ArmId select(long t, RngStream& rng) override;
  void observe(long t, ArmId arm, double reward) override;

  double index(ArmId arm) const;
  long play_count(ArmId arm) const { return counts_[static_cast<size_t>(arm - 1)]; }
  double reward_sum(ArmId arm) const { return sums_[static_cast<size_t>(arm - 1)]; }
  long rounds() const { return rounds_; }

 private:
  double xi_;
  std::string label_;
  double bound_ = 1.0;
  std::vector<long> counts_;
  std::vector<double> sums_;
  long rounds_ = 0;
};

// Discounted UCB: statistics are geometrically down-weighted each round, so
// the index tracks the instantaneous mean after distribution changes.
//
//   N_t(gamma,i) = sum_s gamma^(t-s) 1{I_s=i}
//   index(i)     = discounted mean + 2B*sqrt(xi*log(n_t(gamma))/N_t(gamma,i))
//
// Maintained by the O(K)-per-round multiply-and-add recurrence.
class DucbPolicy final : public Policy {
 public:
  explicit DucbPolicy(double discount, double xi = 0.5, std::string label = "ducb");

  std::string name() const override { return label_; }
  void reset(int arm_count, double reward_bound) override;
  ArmId select(long t, RngStream& rng) override;
  void observe(long t, ArmId arm, double reward) override;

  double index(ArmId arm) const;
  double discounted_count(ArmId arm) const { return counts_[static_cast<size_t>(arm - 1)]; }
  double discounted_sum(ArmId arm) const { return sums_[static_cast<size_t>(arm - 1)]; }
  double discounted_total() const { return total_; }  // n_t(gamma)
  long rounds() const { return rounds_; }
  double discount() const { return discount_; }

 private:
  double discount_;
  double xi_;
  std::string label_;
  double bound_ = 1.0;
  std::vector<double> counts_;
  std::vector<double> sums_;
  double total_ = 0.0;
  long rounds_ = 0;
};

// Sliding-window UCB: statistics over the last `window` plays only.
// index(i) = windowed mean + B*sqrt(xi*log(min(t,window))/N_t(window,i)).
// An arm evicted from the window entirely goes back to +infinity.
class SwucbPolicy final : public Policy {
 public:
  explicit SwucbPolicy(long window, double xi = 0.5, std::string label = "swucb");

  std::string name() const override { return label_; }
  void reset(int arm_count, double reward_bound) override;
  ArmId select(long t, RngStream& rng) override;
  void observe(long t, ArmId arm, double reward) override;

  double index(ArmId arm) const;
  long windowed_count(ArmId arm) const { return counts_[static_cast<size_t>(arm - 1)]; }
  double windowed_sum(ArmId arm) const { return sums_[static_cast<size_t>(arm - 1)]; }
  const std::deque<std::pair<ArmId, double>>& window_contents() const { return window_; }
  long rounds() const { return rounds_; }
  long window() const { return window_size_; }

 private:
  long window_size_;
  double xi_;
  std::string label_;
  double bound_ = 1.0;
  std::deque<std::pair<ArmId, double>> window_;
  std::vector<long> counts_;
  std::vector<double> sums_;
  long rounds_ = 0;
};

// Exponential-weights policy with uniform exploration mixing and a weight
// sharing term, for abruptly changing rewards. Rewards are normalized by B
// before importance weighting.
class Exp3sPolicy final : public Policy {
 public:
  Exp3sPolicy(double mix, double share, std::string label = "exp3s");

  std::string name() const override { return label_; }
  void reset(int arm_count, double reward_bound) override;
  ArmId select(long t, RngStream& rng) override;
  void observe(long t, ArmId arm, double reward) override;

  bool forced_initialization() const override { return false; }
  bool randomized() const override { return true; }

  // p(i) = (1-mix)*w(i)/sum_j w(j) + mix/K
  std::vector<double> probabilities() const;
  double weight(ArmId arm) const { return weights_[static_cast<size_t>(arm - 1)]; }

 private:
  double mix_;    // exploration mixing in (0,1]
  double share_;  // weight sharing rate, >= 0
  std::string label_;
  double bound_ = 1.0;
  std::vector<double> weights_;
  long rounds_ = 0;
};

// Clairvoyant benchmark: plays the instantaneous best arm every round.
class OraclePolicy final : public Policy {
 public:
  explicit OraclePolicy(const Environment& env, std::string label = "oracle");

  std::string name() const override { return label_; }
  void reset(int arm_count, double reward_bound) override;
  ArmId select(long t, RngStream& rng) override;
  void observe(long, ArmId, double) override {}

  bool forced_initialization() const override { return false; }
  bool clairvoyant() const override { return true; }

 private:
  const Environment* env_;
  std::string label_;
};

}  // namespace nsbandit
