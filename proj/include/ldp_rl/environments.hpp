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

#ifndef LDP_RL_ENVIRONMENTS_HPP_
#define LDP_RL_ENVIRONMENTS_HPP_

#include <cstdint>
#include <vector>

#include "ldp_rl/mdp.hpp"

namespace ldp_rl {

// How the tabular embedding phi(s'|s,a) = e_(s,a,s') is scaled.
//
// kUnit stores the raw basis vectors and theta*_h = the flattened kernel,
// so transition_prob reads the kernel back bit-exactly. Its phi_V has norm
// ||V||_2, which exceeds the H bound for S > 1.
//
// kNormalized stores e/sqrt(S) and theta*_h = sqrt(S) * kernel. Then
// ||phi_V|| <= H and ||theta*_h|| <= sqrt(d) hold for every kernel, which is
// what the privacy calibration relies on. This is the default.
enum class FeatureScaling { kUnit, kNormalized };

struct RiverSwimSpec {
  int num_states = 3;
  bool homogeneous = true;
  // Success probability of the right action (homogeneous case).
  double p = 0.9;
  // Seeds the per-stage p_h ~ U(0.8, 1) draw (inhomogeneous case).
  std::uint64_t env_seed = 0;
  FeatureScaling scaling = FeatureScaling::kNormalized;
};

inline constexpr int kRiverSwimLeft = 0;
inline constexpr int kRiverSwimRight = 1;

// H = 2S, A = 2, d = S^2 A.
int riverswim_horizon(int num_states);
int riverswim_dim(int num_states);

// Per-stage success probabilities p_h.
std::vector<double> riverswim_success_probs(const RiverSwimSpec& spec);

// The RiverSwim transition row from state s under action a with success
// probability p, as a dense vector over next states.
std::vector<double> riverswim_kernel_row(int num_states, int s, int a, double p);

LinearMixtureEnv make_riverswim(const RiverSwimSpec& spec);

// Lower-bound instance: a chain s_1 .. s_H with two absorbing states
// s_{H+1} (index H) and s_{H+2} (index H+1, the only rewarding one).
// Actions are sign vectors in {-1,1}^{d-1}; action index bit j set means
// coordinate j is +1.
struct HardInstanceSpec {
  int dim = 2;
  int horizon = 4;
  int episodes = 100;
  double epsilon = 1.0;
  // Per-stage mu_h in {-gap, +gap}^{d-1}. Empty means all +gap.
  std::vector<Vector> mu;
};

struct HardInstanceConstants {
  double exit_prob = 0.0;     // delta = 1/H
  double gap = 0.0;           // Delta
  double bias_scale = 0.0;    // alpha
  double action_scale = 0.0;  // beta
};

// Delta = sqrt(delta) / (min{2, e^eps} (e^eps - 1) sqrt(K)),
// alpha = sqrt(1 / (1 + (d-1) Delta)), beta = sqrt(Delta / (1 + (d-1) Delta)).
HardInstanceConstants hard_instance_constants(int dim, int horizon, int episodes,
                                              double epsilon);

// Fills spec.mu with all +gap vectors, or with per-stage random signs drawn
// from `sign_seed` when `random_signs` is set.
HardInstanceSpec make_hard_instance_spec(int dim, int horizon, int episodes,
                                         double epsilon, bool random_signs = false,
                                         std::uint64_t sign_seed = 0);

// Action index -> sign vector in {-1,1}^{d-1}.
Vector hard_instance_action(int dim, int action);

LinearMixtureEnv make_hard_instance(const HardInstanceSpec& spec);

}  // namespace ldp_rl

#endif  // LDP_RL_ENVIRONMENTS_HPP_
