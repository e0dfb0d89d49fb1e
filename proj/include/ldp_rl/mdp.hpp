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

#ifndef LDP_RL_MDP_HPP_
#define LDP_RL_MDP_HPP_

// Finite episodic linear mixture MDPs.
//
// Transition kernels are linear in a known triplet feature map:
//   P_h(s'|s,a) = <phi(s'|s,a), theta*_h>,
// and for a value function V over next states the aggregated feature
//   phi_V(s,a) = sum_{s'} phi(s'|s,a) V(s')
// satisfies [P_h V](s,a) = <phi_V(s,a), theta*_h>.
//
// Stages are 0-based throughout: h in [0, H). Value tables carry an extra
// terminal row h = H which is identically zero.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldp_rl/execution.hpp"
#include "ldp_rl/rng.hpp"

namespace ldp_rl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using FeatureVector = Eigen::VectorXd;

// Absolute tolerance for distribution checks on closed-form constructions.
inline constexpr double kDistributionTol = 1e-9;

// Largest feature support for which the phi_V norm bound is checked by
// exhaustive enumeration of the vertices {0,H}^S.
inline constexpr int kVertexScanLimit = 20;

struct EnvShape {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  int dim = 0;
};

// Immutable after construction; safe to share across threads.
class LinearMixtureEnv {
 public:
  // `features` is laid out as [h][s][a][s'][i] (row-major, i fastest).
  // `rewards` is laid out as [h][s][a].
  LinearMixtureEnv(EnvShape shape, std::vector<double> features,
                   std::vector<Vector> theta_star, std::vector<double> rewards,
                   int initial_state);

  int num_states() const { return shape_.num_states; }
  int num_actions() const { return shape_.num_actions; }
  int horizon() const { return shape_.horizon; }
  int dim() const { return shape_.dim; }
  const EnvShape& shape() const { return shape_; }
  int initial_state() const { return initial_state_; }

  Eigen::Map<const Vector> feature(int h, int s, int a, int s_next) const;
  const Vector& theta(int h) const { return theta_star_[h]; }
  double reward(int h, int s, int a) const {
    return rewards_[(static_cast<std::size_t>(h) * shape_.num_states + s) *
                        shape_.num_actions +
                    a];
  }

  // Unclamped <phi(s'|s,a), theta*_h>, cached at construction.
  double raw_prob(int h, int s, int a, int s_next) const {
    return probs_[row_offset(h, s, a) + s_next];
  }
  std::span<const double> raw_row(int h, int s, int a) const {
    return {probs_.data() + row_offset(h, s, a),
            static_cast<std::size_t>(shape_.num_states)};
  }

  void check_indices(int h, int s, int a) const;

 private:
  std::size_t row_offset(int h, int s, int a) const {
    return ((static_cast<std::size_t>(h) * shape_.num_states + s) *
                shape_.num_actions +
            a) *
           shape_.num_states;
  }

  EnvShape shape_;
  std::vector<double> features_;
  std::vector<Vector> theta_star_;
  std::vector<double> rewards_;
  std::vector<double> probs_;
  int initial_state_;
};

// V(h, s) for h in [0, H]; row H is the zero terminal row.
class ValueTable {
 public:
  ValueTable(int horizon, int num_states)
      : horizon_(horizon),
        num_states_(num_states),
        values_(static_cast<std::size_t>(horizon + 1) * num_states, 0.0) {}

  double& operator()(int h, int s) {
    return values_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  double operator()(int h, int s) const {
    return values_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  std::span<const double> row(int h) const {
    return {values_.data() + static_cast<std::size_t>(h) * num_states_,
            static_cast<std::size_t>(num_states_)};
  }
  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }

 private:
  int horizon_;
  int num_states_;
  std::vector<double> values_;
};

// Q(h, s, a) for h in [0, H).
class QTable {
 public:
  QTable(int horizon, int num_states, int num_actions)
      : horizon_(horizon),
        num_states_(num_states),
        num_actions_(num_actions),
        values_(static_cast<std::size_t>(horizon) * num_states * num_actions,
                0.0) {}

  double& operator()(int h, int s, int a) { return values_[index(h, s, a)]; }
  double operator()(int h, int s, int a) const {
    return values_[index(h, s, a)];
  }
  std::span<const double> row(int h, int s) const {
    return {values_.data() + index(h, s, 0),
            static_cast<std::size_t>(num_actions_)};
  }
  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

 private:
  std::size_t index(int h, int s, int a) const {
    return (static_cast<std::size_t>(h) * num_states_ + s) * num_actions_ + a;
  }
  int horizon_;
  int num_states_;
  int num_actions_;
  std::vector<double> values_;
};

// Deterministic non-stationary policy: action(h, s).
class Policy {
 public:
  Policy(int horizon, int num_states, int fill = 0)
      : num_states_(num_states),
        actions_(static_cast<std::size_t>(horizon) * num_states, fill) {}

  int& operator()(int h, int s) {
    return actions_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  int operator()(int h, int s) const {
    return actions_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  bool operator==(const Policy&) const = default;

 private:
  int num_states_;
  std::vector<int> actions_;
};

// Index of the largest entry; ties go to the lowest index.
int argmax_lowest(std::span<const double> row);

Policy greedy_policy(const QTable& q);

FeatureVector phi_v(const LinearMixtureEnv& env, std::span<const double> v_next,
                    int h, int s, int a);

// <phi(s'|s,a), theta*_h>, unclamped.
double transition_prob(const LinearMixtureEnv& env, int h, int s, int a,
                       int s_next);

// Inverse-CDF draw over the clamped, renormalized row. Throws
// EnvironmentInvalid when the raw row is not a distribution within
// kDistributionTol.
int sample_transition(const LinearMixtureEnv& env, int h, int s, int a,
                      Rng& rng);

struct OptimalSolution {
  ValueTable v;
  QTable q;
};

OptimalSolution optimal_values(const LinearMixtureEnv& env);

ValueTable policy_value(const LinearMixtureEnv& env, const Policy& policy);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  // Distance to the failure threshold; negative when violated.
  double worst_slack = 0.0;
  // Set when the check could not be carried out exhaustively.
  bool partial = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  const ValidationCheck* find(std::string_view name) const;
};

ValidationReport validate_env(const LinearMixtureEnv& env,
                              double tol = kDistributionTol,
                              Execution exec = Execution::kParallel);

// Largest ||phi_V(s,a)||_2 over vertex value functions V in {0,H}^S at
// one (h, s, a). Sets `partial` when the feature support exceeds
// kVertexScanLimit and only V = H was checked.
double max_phi_v_norm(const LinearMixtureEnv& env, int h, int s, int a,
                      bool* partial);

}  // namespace ldp_rl

#endif  // LDP_RL_MDP_HPP_
