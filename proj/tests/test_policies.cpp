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

#include <cmath>
#include <limits>
#include <vector>

#include <stdexcept>

#include "doctest.h"
#include "nsbandit/environments.hpp"
#include "nsbandit/policies.hpp"

using namespace nsbandit;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Play/reward history for the brute-force recomputation oracles.
struct History {
  std::vector<ArmId> arms;
  std::vector<double> rewards;
};

History random_history(int arm_count, long rounds, uint64_t seed) {
  History h;
  RngStream rng = derive_stream(seed, 0, "history");
  for (long t = 0; t < rounds; ++t) {
    h.arms.push_back(static_cast<ArmId>(rng.next_u64() % arm_count + 1));
    h.rewards.push_back(rng.next_double());
  }
  return h;
}

// Direct evaluation of sum_s gamma^(t-s) * value_s * 1{arm_s = arm}.
double direct_discounted(const History& h, long upto, double gamma, ArmId arm, bool weights) {
  double acc = 0.0;
  for (long s = 1; s <= upto; ++s) {
    if (h.arms[static_cast<size_t>(s - 1)] != arm) continue;
    const double w = std::pow(gamma, static_cast<double>(upto - s));
    acc += w * (weights ? h.rewards[static_cast<size_t>(s - 1)] : 1.0);
  }
  return acc;
}

}  // namespace

TEST_SUITE("policies") {

TEST_CASE("select_arm: argmax with lowest-index ties and infinities") {
  CHECK(select_arm(std::vector<double>{0.3, 0.9, 0.5}) == 2);
  CHECK(select_arm(std::vector<double>{0.7, 0.7, 0.1}) == 1);
  CHECK(select_arm(std::vector<double>{0.2, kInf, kInf}) == 2);
  CHECK_THROWS_AS(select_arm(std::vector<double>{0.1, std::nan("")}), std::logic_error);
  CHECK_THROWS_AS(select_arm(std::vector<double>{}), std::logic_error);
}

TEST_CASE("ucb1 index values") {
  Ucb1Policy policy(0.5);
  policy.reset(2, 1.0);
  policy.observe(1, 1, 0.7);
  CHECK(policy.index(1) == doctest::Approx(0.7).epsilon(1e-15));  // log(1) = 0
  CHECK(policy.index(2) == kInf);

  Ucb1Policy scalar(0.5);
  scalar.reset(2, 1.0);
  for (int t = 0; t < 10; ++t) scalar.observe(t + 1, 1, 0.0);
  for (int t = 0; t < 90; ++t) scalar.observe(t + 11, 2, 0.5);
  // arm 1: mean 0, N = 10, t = 100 -> sqrt(0.5*log(100)/10)
  const double expected = std::sqrt(0.5 * std::log(100.0) / 10.0);
  CHECK(expected == doctest::Approx(0.479853).epsilon(1e-5));
  CHECK(scalar.index(1) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ucb1 decisions are invariant under doubling rewards and B") {
  RngStream rng = derive_stream(33, 0, "scale");
  Ucb1Policy base(0.7);
  Ucb1Policy scaled(0.7);
  base.reset(3, 1.0);
  scaled.reset(3, 2.0);
  RngStream none = derive_stream(0, 0, "unused");
  for (long t = 1; t <= 500; ++t) {
    ArmId arm_base = t <= 3 ? static_cast<ArmId>(t) : base.select(t, none);
    ArmId arm_scaled = t <= 3 ? static_cast<ArmId>(t) : scaled.select(t, none);
    CHECK(arm_base == arm_scaled);
    const double r = rng.next_double();
    base.observe(t, arm_base, r);
    scaled.observe(t, arm_scaled, 2.0 * r);
  }
}

TEST_CASE("ducb discounted counts follow the geometric recurrence") {
  DucbPolicy policy(0.5, 0.6);
  policy.reset(2, 1.0);
  policy.observe(1, 1, 1.0);
  policy.observe(2, 1, 1.0);
  policy.observe(3, 1, 1.0);
  CHECK(policy.discounted_count(1) == doctest::Approx(1.75).epsilon(1e-15));  // 0.25+0.5+1
  CHECK(policy.discounted_count(2) == 0.0);
  CHECK(policy.discounted_total() == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("ducb with discount 1 keeps integer play counts") {
  DucbPolicy policy(1.0, 0.5);
  policy.reset(3, 1.0);
  RngStream rng = derive_stream(5, 0, "plays");
  std::vector<long> counts(4, 0);
  for (long t = 1; t <= 200; ++t) {
    const ArmId arm = static_cast<ArmId>(rng.next_u64() % 3 + 1);
    policy.observe(t, arm, rng.next_double());
    counts[static_cast<size_t>(arm)] += 1;
  }
  for (ArmId i = 1; i <= 3; ++i)
    CHECK(policy.discounted_count(i) == static_cast<double>(counts[static_cast<size_t>(i)]));
}

TEST_CASE("ducb incremental statistics match direct resummation") {
  const double gamma = 0.99;
  DucbPolicy policy(gamma, 0.6);
  policy.reset(3, 1.0);
  const History h = random_history(3, 1000, 77);
  for (long t = 1; t <= 1000; ++t)
    policy.observe(t, h.arms[static_cast<size_t>(t - 1)], h.rewards[static_cast<size_t>(t - 1)]);
  for (ArmId i = 1; i <= 3; ++i) {
    const double direct_count = direct_discounted(h, 1000, gamma, i, false);
    const double direct_sum = direct_discounted(h, 1000, gamma, i, true);
    CHECK(std::abs(policy.discounted_count(i) - direct_count) <=
          1e-9 * std::max(1.0, direct_count));
    CHECK(std::abs(policy.discounted_sum(i) - direct_sum) <= 1e-9 * std::max(1.0, direct_sum));
  }
}

TEST_CASE("ducb index values") {
  DucbPolicy single(1.0, 0.5);
  single.reset(2, 1.0);
  single.observe(1, 1, 0.6);
  CHECK(single.index(1) == doctest::Approx(0.6).epsilon(1e-15));  // log(n) = log(1) = 0

  // discounted total 20, arm count 4, mean 0 -> 2*sqrt(0.5*log(20)/4)
  DucbPolicy scalar(1.0, 0.5);
  scalar.reset(2, 1.0);
  for (long t = 1; t <= 4; ++t) scalar.observe(t, 1, 0.0);
  for (long t = 5; t <= 20; ++t) scalar.observe(t, 2, 0.5);
  const double expected = 2.0 * std::sqrt(0.5 * std::log(20.0) / 4.0);
  CHECK(expected == doctest::Approx(1.223874).epsilon(1e-5));
  CHECK(scalar.index(1) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ducb at discount 1 with xi/4 reproduces ucb1 exactly") {
  const double xi = 0.6;
  Ucb1Policy ucb(xi);
  DucbPolicy ducb(1.0, xi / 4.0);
  ucb.reset(3, 1.0);
  ducb.reset(3, 1.0);
  const History h = random_history(3, 400, 12);
  RngStream none = derive_stream(0, 0, "unused");
  for (long t = 1; t <= 400; ++t) {
    for (ArmId i = 1; i <= 3; ++i) CHECK(ucb.index(i) == ducb.index(i));
    if (t > 3) CHECK(ucb.select(t, none) == ducb.select(t, none));
    const ArmId arm = h.arms[static_cast<size_t>(t - 1)];
    const double r = h.rewards[static_cast<size_t>(t - 1)];
    ucb.observe(t, arm, r);
    ducb.observe(t, arm, r);
  }
}

TEST_CASE("ducb discounted counts respect the cap (1-gamma^t)/(1-gamma)") {
  const double gamma = 0.9;
  DucbPolicy policy(gamma, 0.6);
  policy.reset(2, 1.0);
  for (long t = 1; t <= 300; ++t) {
    policy.observe(t, 1, 1.0);
    const double cap = (1.0 - std::pow(gamma, static_cast<double>(t))) / (1.0 - gamma);
    CHECK(policy.discounted_count(1) <= cap + 1e-12);
    const double total = policy.discounted_count(1) + policy.discounted_count(2);
    CHECK(std::abs(policy.discounted_total() - total) <= 1e-9 * static_cast<double>(t));
  }
}

TEST_CASE("swucb window bookkeeping") {
  SwucbPolicy policy(3, 0.5);
  policy.reset(3, 1.0);
  policy.observe(1, 1, 1.0);
  policy.observe(2, 1, 0.0);
  policy.observe(3, 2, 1.0);
  policy.observe(4, 3, 1.0);
  CHECK(policy.windowed_count(1) == 1);
  CHECK(policy.windowed_count(2) == 1);
  CHECK(policy.windowed_count(3) == 1);
  CHECK(policy.window_contents().size() == 3);
}

TEST_CASE("swucb without evictions equals plain counts") {
  SwucbPolicy policy(100, 0.5);
  policy.reset(2, 1.0);
  for (long t = 1; t <= 50; ++t) policy.observe(t, t % 2 == 0 ? 2 : 1, 0.5);
  CHECK(policy.windowed_count(1) == 25);
  CHECK(policy.windowed_count(2) == 25);
}

TEST_CASE("swucb statistics match suffix recomputation") {
  SwucbPolicy policy(37, 0.5);
  policy.reset(3, 1.0);
  const History h = random_history(3, 500, 99);
  for (long t = 1; t <= 500; ++t) {
    policy.observe(t, h.arms[static_cast<size_t>(t - 1)], h.rewards[static_cast<size_t>(t - 1)]);
    if (t % 50 != 0) continue;
    const long from = std::max(1L, t - 37 + 1);
    for (ArmId i = 1; i <= 3; ++i) {
      long count = 0;
      double sum = 0.0;
      for (long s = from; s <= t; ++s) {
        if (h.arms[static_cast<size_t>(s - 1)] == i) {
          ++count;
          sum += h.rewards[static_cast<size_t>(s - 1)];
        }
      }
      CHECK(policy.windowed_count(i) == count);
      CHECK(std::abs(policy.windowed_sum(i) - sum) <= 1e-12 * std::max(1.0, std::abs(sum)));
    }
  }
}

TEST_CASE("swucb index values") {
  SwucbPolicy fresh(10, 0.5);
  fresh.reset(2, 1.0);
  fresh.observe(1, 1, 0.3);
  CHECK(fresh.index(1) == doctest::Approx(0.3).epsilon(1e-15));  // log(min(1,10)) = 0

  // min(t,window) = 100, N = 10, mean 0 -> same scalar as the ucb1 case
  SwucbPolicy scalar(100, 0.5);
  scalar.reset(2, 1.0);
  for (long t = 1; t <= 90; ++t) scalar.observe(t, 2, 0.5);
  for (long t = 91; t <= 100; ++t) scalar.observe(t, 1, 0.0);
  const double expected = std::sqrt(0.5 * std::log(100.0) / 10.0);
  CHECK(scalar.index(1) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("swucb with window covering the horizon equals ucb1") {
  const double xi = 0.5;
  Ucb1Policy ucb(xi);
  SwucbPolicy sw(600, xi);
  ucb.reset(3, 1.0);
  sw.reset(3, 1.0);
  const History h = random_history(3, 600, 4);
  RngStream none = derive_stream(0, 0, "unused");
  for (long t = 1; t <= 600; ++t) {
    for (ArmId i = 1; i <= 3; ++i) CHECK(ucb.index(i) == sw.index(i));
    if (t > 3) CHECK(ucb.select(t, none) == sw.select(t, none));
    const ArmId arm = h.arms[static_cast<size_t>(t - 1)];
    const double r = h.rewards[static_cast<size_t>(t - 1)];
    ucb.observe(t, arm, r);
    sw.observe(t, arm, r);
  }
}

TEST_CASE("swucb evicted arms go back to +infinity") {
  SwucbPolicy policy(2, 0.5);
  policy.reset(2, 1.0);
  policy.observe(1, 1, 1.0);
  policy.observe(2, 2, 1.0);
  policy.observe(3, 2, 1.0);  // arm 1 leaves the window
  CHECK(policy.windowed_count(1) == 0);
  CHECK(policy.index(1) == kInf);
}

TEST_CASE("exp3s probabilities") {
  Exp3sPolicy uniform(0.2, 0.0);
  uniform.reset(4, 1.0);
  for (double p : uniform.probabilities()) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  Exp3sPolicy full_mix(1.0, 0.0);
  full_mix.reset(3, 1.0);
  full_mix.observe(1, 2, 1.0);  // skew the weights
  for (double p : full_mix.probabilities()) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // one full-reward update at p = 0.5 multiplies w1 by exp(0.2*(1/0.5)/2)
  Exp3sPolicy skewed(0.2, 0.0);
  skewed.reset(2, 1.0);
  skewed.observe(1, 1, 1.0);
  const double w1 = skewed.weight(1);
  const double w2 = skewed.weight(2);
  CHECK(w1 == doctest::Approx(std::exp(0.2)).epsilon(1e-12));
  CHECK(w2 == 1.0);
  const auto probs = skewed.probabilities();
  CHECK(probs[0] == doctest::Approx(0.8 * w1 / (w1 + w2) + 0.1).epsilon(1e-12));
  CHECK(probs[0] + probs[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exp3s probabilities for fixed weights (3,1)") {
  // p = (1-mix)*w/sum + mix/K evaluated by hand for w = (3,1), mix = 0.2
  const double mix = 0.2;
  const double w[] = {3.0, 1.0};
  const double total = w[0] + w[1];
  const double p1 = (1.0 - mix) * w[0] / total + mix / 2.0;
  const double p2 = (1.0 - mix) * w[1] / total + mix / 2.0;
  CHECK(p1 == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(p2 == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("exp3s update rules") {
  // zero reward, no sharing: weights unchanged
  Exp3sPolicy idle(0.2, 0.0);
  idle.reset(2, 1.0);
  idle.observe(1, 1, 0.0);
  CHECK(idle.weight(1) == 1.0);
  CHECK(idle.weight(2) == 1.0);

  // reward B at probability 1/2 multiplies the played weight by exp(mix*2/K)
  Exp3sPolicy boost(0.2, 0.0);
  boost.reset(2, 1.0);
  boost.observe(1, 1, 1.0);
  CHECK(boost.weight(1) == doctest::Approx(std::exp(0.2)).epsilon(1e-12));
  CHECK(boost.weight(2) == 1.0);

  // sharing preserves uniformity under zero rewards
  Exp3sPolicy sharing(0.2, 0.01);
  sharing.reset(3, 1.0);
  sharing.observe(1, 2, 0.0);
  const auto probs = sharing.probabilities();
  for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(sharing.weight(1) == sharing.weight(3));
}

TEST_CASE("exp3s samples arms at its stated probabilities") {
  Exp3sPolicy policy(0.2, 0.0);
  policy.reset(2, 1.0);
  policy.observe(1, 1, 1.0);  // skew towards arm 1
  const auto p = policy.probabilities();
  RngStream rng = derive_stream(44, 0, "sampling");
  long pulls_arm1 = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i)
    if (policy.select(1, rng) == 1) ++pulls_arm1;
  CHECK(static_cast<double>(pulls_arm1) / draws == doctest::Approx(p[0]).epsilon(0.05));
}

TEST_CASE("exp3s weights stay finite over long greedy streaks") {
  Exp3sPolicy policy(0.05, 0.0);
  policy.reset(2, 1.0);
  for (long t = 1; t <= 200000; ++t) policy.observe(t, 1, 1.0);
  CHECK(std::isfinite(policy.weight(1)));
  CHECK(policy.probabilities()[0] > 0.9);
}

TEST_CASE("oracle selection on the fig1-left schedule") {
  const auto env = fig1_left_environment(10000);
  OraclePolicy oracle(env);
  oracle.reset(3, 1.0);
  RngStream none = derive_stream(0, 0, "unused");
  CHECK(oracle.select(4000, none) == 3);
  CHECK(oracle.select(9000, none) == 1);

  const PiecewiseConstantBernoulli constant(50, {{{1, 0.2}}, {{1, 0.7}}});
  OraclePolicy fixed(constant);
  fixed.reset(2, 1.0);
  for (long t = 1; t <= 50; ++t) CHECK(fixed.select(t, none) == 2);
}

TEST_CASE("rewards outside [0,B] are rejected") {
  Ucb1Policy policy(0.5);
  policy.reset(2, 1.0);
  CHECK_THROWS_AS(policy.observe(1, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(policy.observe(1, 1, -0.1), std::invalid_argument);
}

}  // TEST_SUITE
