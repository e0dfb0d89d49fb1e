// Copyright 2026 The ldp-rl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ldp_rl/environments.hpp"
#include "ldp_rl/errors.hpp"
#include "ldp_rl/mdp.hpp"
#include "test_util.hpp"

namespace ldp_rl {
namespace {

using testing::TabularModel;
using testing::tabular_env;

// One state pair, one action, H = 1: row (0.2, 0.8) from state 0.
TabularModel two_state_model() {
  TabularModel m{2, 1, 1, {0.2, 0.8, 0.5, 0.5}, {0.0, 0.0}, 0};
  return m;
}

LinearMixtureEnv scaled_theta(const LinearMixtureEnv& env, double factor) {
  const auto& shape = env.shape();
  std::vector<double> features;
  std::vector<double> rewards;
  for (int h = 0; h < shape.horizon; ++h) {
    for (int s = 0; s < shape.num_states; ++s) {
      for (int a = 0; a < shape.num_actions; ++a) {
        rewards.push_back(env.reward(h, s, a));
        for (int sn = 0; sn < shape.num_states; ++sn) {
          const auto f = env.feature(h, s, a, sn);
          features.insert(features.end(), f.data(), f.data() + f.size());
        }
      }
    }
  }
  std::vector<Vector> theta;
  for (int h = 0; h < shape.horizon; ++h) theta.push_back(env.theta(h) * factor);
  return LinearMixtureEnv(shape, features, theta, rewards, env.initial_state());
}

TEST(LinearMixtureEnv, RejectsMalformedTables) {
  const TabularModel m = two_state_model();
  const LinearMixtureEnv ok = tabular_env(m);
  std::vector<double> features(2 * 1 * 2 * 4, 0.0);
  EXPECT_THROW(LinearMixtureEnv({2, 1, 1, 4}, std::vector<double>(3), {Vector::Zero(4)},
                                {0.0, 0.0}, 0),
               InvalidArgument);
  EXPECT_THROW(LinearMixtureEnv({2, 1, 1, 4}, features, {}, {0.0, 0.0}, 0), InvalidArgument);
  EXPECT_THROW(LinearMixtureEnv({2, 1, 1, 4}, features, {Vector::Zero(3)}, {0.0, 0.0}, 0),
               InvalidArgument);
  EXPECT_THROW(LinearMixtureEnv({2, 1, 1, 4}, features, {Vector::Zero(4)}, {0.0}, 0),
               InvalidArgument);
  EXPECT_THROW(LinearMixtureEnv({2, 1, 1, 4}, features, {Vector::Zero(4)}, {0.0, 0.0}, 2),
               InvalidArgument);
  EXPECT_THROW(transition_prob(ok, 1, 0, 0, 0), InvalidArgument);
  EXPECT_THROW(transition_prob(ok, 0, 0, 0, 2), InvalidArgument);
}

TEST(ValueTable, TerminalRowIsZero) {
  ValueTable v(3, 4);
  for (int s = 0; s < 4; ++s) EXPECT_EQ(v(3, s), 0.0);
  EXPECT_EQ(v.row(3).size(), 4u);
}

TEST(PhiV, ZeroValueGivesZeroVector) {
  const LinearMixtureEnv env = make_riverswim({});
  const std::vector<double> zero(env.num_states(), 0.0);
  for (int a = 0; a < env.num_actions(); ++a) {
    EXPECT_EQ(phi_v(env, zero, 0, 1, a).squaredNorm(), 0.0);
  }
}

TEST(PhiV, TabularUnitValueIsBlockIndicator) {
  const TabularModel m = two_state_model();
  const LinearMixtureEnv env = tabular_env(m);
  const std::vector<double> ones(2, 1.0);
  const FeatureVector phi = phi_v(env, ones, 0, 0, 0);
  // (s=0, a=0, .) block is indices 0 and 1.
  EXPECT_EQ(phi(0), 1.0);
  EXPECT_EQ(phi(1), 1.0);
  EXPECT_EQ(phi(2), 0.0);
  EXPECT_EQ(phi(3), 0.0);
  EXPECT_DOUBLE_EQ(phi.dot(env.theta(0)), 1.0);
}

TEST(PhiV, RiverSwimMatchesDirectSummation) {
  const LinearMixtureEnv env = make_riverswim({});
  const std::vector<double> v = {0.1, 0.2, 0.3};
  for (int h : {0, 3, 5}) {
    for (int s = 0; s < 3; ++s) {
      for (int a = 0; a < 2; ++a) {
        Vector expected = Vector::Zero(env.dim());
        for (int sn = 0; sn < 3; ++sn) {
          const auto f = env.feature(h, s, a, sn);
          for (int i = 0; i < env.dim(); ++i) expected(i) += f(i) * v[sn];
        }
        EXPECT_LE((phi_v(env, v, h, s, a) - expected).lpNorm<Eigen::Infinity>(), 1e-15);
      }
    }
  }
}

TEST(TransitionProb, TabularReadsBackItsRow) {
  const LinearMixtureEnv env = tabular_env(two_state_model());
  EXPECT_EQ(transition_prob(env, 0, 0, 0, 0), 0.2);
  EXPECT_EQ(transition_prob(env, 0, 0, 0, 1), 0.8);
}

TEST(TransitionProb, HardInstanceChainAndExit) {
  const int d = 4, H = 4, K = 100;
  const HardInstanceSpec spec = make_hard_instance_spec(d, H, K, 1.0, true, 3);
  const LinearMixtureEnv env = make_hard_instance(spec);
  const double delta = 1.0 / H;
  for (int h = 0; h < H; ++h) {
    for (int a = 0; a < env.num_actions(); ++a) {
      const double mu_a = spec.mu[h].dot(hard_instance_action(d, a));
      const int s = h;  // the chain state visited at stage h
      EXPECT_NEAR(transition_prob(env, h, s, a, s + 1), 1.0 - delta - mu_a,
                  1e-12);
      EXPECT_NEAR(transition_prob(env, h, s, a, H + 1), delta + mu_a, 1e-12);
    }
  }
}

TEST(TransitionProb, HardInstanceSmallCase) {
  // d = 2, H = 4, eps = 1, K = 100: Delta = 0.5 / (2 (e - 1) 10).
  const LinearMixtureEnv env = make_hard_instance(make_hard_instance_spec(2, 4, 100, 1.0));
  const double gap = 0.5 / (2.0 * (std::exp(1.0) - 1.0) * 10.0);
  // Action 1 is the sign vector (+1); mu_1 = (+Delta).
  EXPECT_NEAR(transition_prob(env, 0, 0, 1, 1), 1.0 - 0.25 - gap, 1e-12);
  EXPECT_NEAR(transition_prob(env, 0, 0, 1, 1), 0.7355, 1e-4);
}

TEST(SampleTransition, DeterministicRow) {
  TabularModel m{3, 1, 1, {0, 1, 0, 1, 0, 0, 0, 0, 1}, {0, 0, 0}, 0};
  const LinearMixtureEnv env = tabular_env(m);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample_transition(env, 0, 0, 0, rng), 1);
}

TEST(SampleTransition, RiverSwimLeftFromInteriorIsHalfHalf) {
  const LinearMixtureEnv env = make_riverswim({});
  Rng rng(2024);
  const int n = 100000;
  int left = 0, stay = 0, right = 0;
  for (int i = 0; i < n; ++i) {
    const int sn = sample_transition(env, 0, 1, kRiverSwimLeft, rng);
    left += sn == 0;
    stay += sn == 1;
    right += sn == 2;
  }
  const double tol = 3.0 * std::sqrt(0.25 / n);
  EXPECT_NEAR(static_cast<double>(left) / n, 0.5, tol);
  EXPECT_NEAR(static_cast<double>(stay) / n, 0.5, tol);
  EXPECT_EQ(right, 0);
}

TEST(SampleTransition, SeededSequenceRepeats) {
  const LinearMixtureEnv env = make_riverswim({});
  Rng a(9), b(9);
  for (int i = 0; i < 500; ++i) {
    ASSERT_EQ(sample_transition(env, i % 6, i % 3, i % 2, a),
              sample_transition(env, i % 6, i % 3, i % 2, b));
  }
}

TEST(SampleTransition, InvalidRowThrows) {
  const LinearMixtureEnv env = scaled_theta(make_riverswim({}), 2.0);
  Rng rng(0);
  EXPECT_THROW(sample_transition(env, 0, 1, 1, rng), EnvironmentInvalid);
}

TEST(OptimalValues, ZeroRewardsGiveZeroValues) {
  Rng rng(5);
  TabularModel m = testing::random_model(rng, 3, 2, 4);
  std::fill(m.rewards.begin(), m.rewards.end(), 0.0);
  const auto sol = optimal_values(tabular_env(m));
  for (int h = 0; h <= 4; ++h) {
    for (int s = 0; s < 3; ++s) EXPECT_EQ(sol.v(h, s), 0.0);
  }
}

TEST(OptimalValues, UnitRewardChainSumsRewards) {
  TabularModel m{2, 1, 2, {0, 1, 1, 0, 0, 1, 1, 0}, {1, 1, 1, 1}, 0};
  const auto sol = optimal_values(tabular_env(m));
  EXPECT_EQ(sol.v(0, 0), 2.0);
  EXPECT_EQ(sol.v(0, 1), 2.0);
  EXPECT_EQ(sol.v(1, 0), 1.0);
}

TEST(PolicyValue, GreedyOnQStarIsOptimal) {
  const LinearMixtureEnv env = make_riverswim({});
  const auto sol = optimal_values(env);
  const ValueTable v = policy_value(env, greedy_policy(sol.q));
  for (int h = 0; h <= env.horizon(); ++h) {
    for (int s = 0; s < env.num_states(); ++s) EXPECT_EQ(v(h, s), sol.v(h, s));
  }
}

TEST(PolicyValue, AnyPolicyIsDominated) {
  const LinearMixtureEnv env = make_riverswim({5, false, 0.9, 17});
  const auto sol = optimal_values(env);
  for (int fill = 0; fill < 2; ++fill) {
    const ValueTable v = policy_value(env, Policy(env.horizon(), env.num_states(), fill));
    for (int h = 0; h < env.horizon(); ++h) {
      for (int s = 0; s < env.num_states(); ++s) EXPECT_LE(v(h, s), sol.v(h, s) + 1e-12);
    }
  }
}

TEST(PolicyValue, RejectsOutOfRangeAction) {
  const LinearMixtureEnv env = make_riverswim({});
  EXPECT_THROW(policy_value(env, Policy(env.horizon(), env.num_states(), 2)), InvalidArgument);
}

TEST(Argmax, TiesGoToLowestIndex) {
  const std::vector<double> up = {1.0, 2.0};
  const std::vector<double> tie = {2.0, 2.0};
  const std::vector<double> triple = {0.5, 3.0, 3.0};
  EXPECT_EQ(argmax_lowest(up), 1);
  EXPECT_EQ(argmax_lowest(tie), 0);
  EXPECT_EQ(argmax_lowest(triple), 1);
}

TEST(ValidateEnv, RiverSwimPasses) {
  const ValidationReport report = validate_env(make_riverswim({}), 1e-9);
  EXPECT_TRUE(report.all_passed());
  ASSERT_NE(report.find("phi_v_norm_bound"), nullptr);
  EXPECT_FALSE(report.find("phi_v_norm_bound")->partial);
}

TEST(ValidateEnv, DoubledThetaFailsDistributionCheck) {
  const ValidationReport report = validate_env(scaled_theta(make_riverswim({}), 2.0), 1e-9);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.find("transition_rows_sum_to_one")->passed);
}

TEST(ValidateEnv, HardInstancePasses) {
  const LinearMixtureEnv env = make_hard_instance(make_hard_instance_spec(4, 4, 100, 1.0));
  EXPECT_TRUE(validate_env(env, 1e-9).all_passed());
}

TEST(ValidateEnv, UnitScaledRiverSwimViolatesPhiVBound) {
  RiverSwimSpec spec;
  spec.scaling = FeatureScaling::kUnit;
  const ValidationReport report = validate_env(make_riverswim(spec), 1e-9);
  EXPECT_FALSE(report.find("phi_v_norm_bound")->passed);
  EXPECT_TRUE(report.find("transition_rows_sum_to_one")->passed);
}

TEST(ValidateEnv, RewardOutsideUnitIntervalFails) {
  TabularModel m = two_state_model();
  m.rewards[0] = 1.5;
  EXPECT_FALSE(validate_env(tabular_env(m), 1e-9).find("rewards_in_unit_interval")->passed);
}

TEST(ValidateEnv, SerialAndParallelReportsAgree) {
  const LinearMixtureEnv env = make_riverswim({5, false, 0.9, 3});
  const auto serial = validate_env(env, 1e-9, Execution::kSerial);
  const auto parallel = validate_env(env, 1e-9, Execution::kParallel);
  ASSERT_EQ(serial.checks.size(), parallel.checks.size());
  for (std::size_t i = 0; i < serial.checks.size(); ++i) {
    EXPECT_EQ(serial.checks[i].name, parallel.checks[i].name);
    EXPECT_EQ(serial.checks[i].passed, parallel.checks[i].passed);
    EXPECT_EQ(serial.checks[i].worst_slack, parallel.checks[i].worst_slack);
  }
}

}  // namespace
}  // namespace ldp_rl
