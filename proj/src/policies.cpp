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

#include "nsbandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nsbandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Discounted counts below this are indistinguishable from an evicted arm.
constexpr double kCountFloor = 1e-300;

double clamped_log(double x) { return std::max(std::log(x), 0.0); }

void check_reward(double reward, double bound) {
  if (!(reward >= 0.0) || !(reward <= bound))
    throw std::invalid_argument("reward outside [0, B]");
}

template <typename PolicyT>
ArmId argmax_index(const PolicyT& policy, int arm_count) {
  std::vector<double> indices(static_cast<size_t>(arm_count));
  for (ArmId i = 1; i <= arm_count; ++i) indices[static_cast<size_t>(i - 1)] = policy.index(i);
  return select_arm(indices);
}

}  // namespace

ArmId select_arm(std::span<const double> indices) {
  if (indices.empty()) throw std::logic_error("select_arm: no arms");
  ArmId best = 1;
  double best_value = indices[0];
  if (std::isnan(best_value)) throw std::logic_error("select_arm: NaN index");
  for (size_t i = 1; i < indices.size(); ++i) {
    const double v = indices[i];
    if (std::isnan(v)) throw std::logic_error("select_arm: NaN index");
    if (v > best_value) {
      best = static_cast<ArmId>(i + 1);
      best_value = v;
    }
  }
  return best;
}

// -- Ucb1Policy ---------------------------------------------------------------

Ucb1Policy::Ucb1Policy(double xi, std::string label) : xi_(xi), label_(std::move(label)) {
  if (!(xi_ > 0)) throw std::invalid_argument("ucb1: xi must be > 0");
}

void Ucb1Policy::reset(int arm_count, double reward_bound) {
  bound_ = reward_bound;
  counts_.assign(static_cast<size_t>(arm_count), 0);
  sums_.assign(static_cast<size_t>(arm_count), 0.0);
  rounds_ = 0;
}

double Ucb1Policy::index(ArmId arm) const {
  const size_t k = static_cast<size_t>(arm - 1);
  if (counts_[k] == 0) return kInf;
  const double n = static_cast<double>(counts_[k]);
  const double mean = sums_[k] / n;
  return mean + bound_ * std::sqrt(xi_ * clamped_log(static_cast<double>(rounds_)) / n);
}

ArmId Ucb1Policy::select(long, RngStream&) {
  return argmax_index(*this, static_cast<int>(counts_.size()));
}

void Ucb1Policy::observe(long, ArmId arm, double reward) {
  check_reward(reward, bound_);
  counts_[static_cast<size_t>(arm - 1)] += 1;
  sums_[static_cast<size_t>(arm - 1)] += reward;
  rounds_ += 1;
}

// -- DucbPolicy ---------------------------------------------------------------

DucbPolicy::DucbPolicy(double discount, double xi, std::string label)
    : discount_(discount), xi_(xi), label_(std::move(label)) {
  if (!(discount_ > 0.0) || discount_ > 1.0)
    throw std::invalid_argument("ducb: discount must lie in (0,1]");
  if (!(xi_ > 0)) throw std::invalid_argument("ducb: xi must be > 0");
}

void DucbPolicy::reset(int arm_count, double reward_bound) {
  bound_ = reward_bound;
  counts_.assign(static_cast<size_t>(arm_count), 0.0);
  sums_.assign(static_cast<size_t>(arm_count), 0.0);
  total_ = 0.0;
  rounds_ = 0;
}

double DucbPolicy::index(ArmId arm) const {
  const size_t k = static_cast<size_t>(arm - 1);
  const double n = counts_[k];
  if (n <= kCountFloor) return kInf;
  const double mean = sums_[k] / n;
  return mean + 2.0 * bound_ * std::sqrt(xi_ * clamped_log(total_) / n);
}

ArmId DucbPolicy::select(long, RngStream&) {
  return argmax_index(*this, static_cast<int>(counts_.size()));
}

void DucbPolicy::observe(long, ArmId arm, double reward) {
  check_reward(reward, bound_);
  for (size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] *= discount_;
    sums_[i] *= discount_;
  }
  counts_[static_cast<size_t>(arm - 1)] += 1.0;
  sums_[static_cast<size_t>(arm - 1)] += reward;
  total_ = discount_ * total_ + 1.0;
  rounds_ += 1;
}

// -- SwucbPolicy --------------------------------------------------------------

SwucbPolicy::SwucbPolicy(long window, double xi, std::string label)
    : window_size_(window), xi_(xi), label_(std::move(label)) {
  if (window_size_ < 1) throw std::invalid_argument("swucb: window must be >= 1");
  if (!(xi_ > 0)) throw std::invalid_argument("swucb: xi must be > 0");
}

void SwucbPolicy::reset(int arm_count, double reward_bound) {
  bound_ = reward_bound;
  window_.clear();
  counts_.assign(static_cast<size_t>(arm_count), 0);
  sums_.assign(static_cast<size_t>(arm_count), 0.0);
  rounds_ = 0;
}

double SwucbPolicy::index(ArmId arm) const {
  const size_t k = static_cast<size_t>(arm - 1);
  if (counts_[k] == 0) return kInf;
  const double n = static_cast<double>(counts_[k]);
  const double mean = sums_[k] / n;
  const double effective = static_cast<double>(std::min(rounds_, window_size_));
  return mean + bound_ * std::sqrt(xi_ * clamped_log(effective) / n);
}

ArmId SwucbPolicy::select(long, RngStream&) {
  return argmax_index(*this, static_cast<int>(counts_.size()));
}

void SwucbPolicy::observe(long, ArmId arm, double reward) {
  check_reward(reward, bound_);
  window_.emplace_back(arm, reward);
  counts_[static_cast<size_t>(arm - 1)] += 1;
  sums_[static_cast<size_t>(arm - 1)] += reward;
  if (static_cast<long>(window_.size()) > window_size_) {
    const auto [old_arm, old_reward] = window_.front();
    window_.pop_front();
    counts_[static_cast<size_t>(old_arm - 1)] -= 1;
    sums_[static_cast<size_t>(old_arm - 1)] -= old_reward;
  }
  rounds_ += 1;
}

// -- Exp3sPolicy --------------------------------------------------------------

Exp3sPolicy::Exp3sPolicy(double mix, double share, std::string label)
    : mix_(mix), share_(share), label_(std::move(label)) {
  if (!(mix_ > 0.0) || mix_ > 1.0) throw std::invalid_argument("exp3s: mix must lie in (0,1]");
  if (share_ < 0.0) throw std::invalid_argument("exp3s: share must be >= 0");
}

void Exp3sPolicy::reset(int arm_count, double reward_bound) {
  bound_ = reward_bound;
  weights_.assign(static_cast<size_t>(arm_count), 1.0);
  rounds_ = 0;
}

std::vector<double> Exp3sPolicy::probabilities() const {
  const size_t k = weights_.size();
  double total = 0.0;
  for (double w : weights_) total += w;
  std::vector<double> p(k);
  for (size_t i = 0; i < k; ++i)
    p[i] = (1.0 - mix_) * weights_[i] / total + mix_ / static_cast<double>(k);
  return p;
}

ArmId Exp3sPolicy::select(long, RngStream& rng) {
  const std::vector<double> p = probabilities();
  const double u = rng.next_double();
  double acc = 0.0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<ArmId>(i + 1);
  }
  return static_cast<ArmId>(p.size());
}

void Exp3sPolicy::observe(long, ArmId arm, double reward) {
  check_reward(reward, bound_);
  const std::vector<double> p = probabilities();
  const double p_played = p[static_cast<size_t>(arm - 1)];
  if (!(p_played > 0.0)) throw std::logic_error("exp3s: played arm had zero probability");

  const size_t k = weights_.size();
  double total = 0.0;
  for (double w : weights_) total += w;

  const double estimate = (reward / bound_) / p_played;  // importance-weighted reward
  const double sharing = std::numbers::e * share_ * total / static_cast<double>(k);
  for (size_t i = 0; i < k; ++i) {
    const double boost = (static_cast<ArmId>(i + 1) == arm)
                             ? std::exp(mix_ * estimate / static_cast<double>(k))
                             : 1.0;
    weights_[i] = weights_[i] * boost + sharing;
  }

  // Rescaling by a common factor leaves probabilities and all later updates
  // unchanged; it only keeps the weights finite.
  const double largest = *std::max_element(weights_.begin(), weights_.end());
  if (largest > 1e150) {
    for (double& w : weights_) w /= largest;
  }
  rounds_ += 1;
}

// -- OraclePolicy -------------------------------------------------------------

OraclePolicy::OraclePolicy(const Environment& env, std::string label)
    : env_(&env), label_(std::move(label)) {}

void OraclePolicy::reset(int arm_count, double reward_bound) {
  if (arm_count != env_->arm_count())
    throw std::invalid_argument("oracle: arm count does not match environment");
  (void)reward_bound;
}

ArmId OraclePolicy::select(long t, RngStream&) { return best_arm(*env_, t).first; }

}  // namespace nsbandit
