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

#ifndef LDP_RL_AGENT_HPP_
#define LDP_RL_AGENT_HPP_

// User side of LDP-UCRL-VTR and its non-private UCRL-VTR counterpart.
//
// Each episode the user receives the server's shifted Gram matrices and
// ridge estimates, plans optimistically by backward induction, acts
// greedily, and reports per-stage value-targeted regression statistics.
// The LDP user privatizes those statistics with the Gaussian mechanism
// before they leave; the baseline keeps its own noiseless accumulators.

#include <cstdint>
#include <functional>
#include <vector>

#include "ldp_rl/mdp.hpp"
#include "ldp_rl/protocol.hpp"
#include "ldp_rl/rng.hpp"
#include "ldp_rl/server.hpp"

namespace ldp_rl {

enum class BetaMode {
  kTheorem,       // full schedule with the log factors and sqrt(1/eps)
  kExperimental,  // c d^{3/4} (H-h+1)^{3/2} k^{1/4}
  kBaseline,      // UCRL-VTR bonus, driven by log det Sigma
};

enum class SigmaMode {
  kTheory,        // H^3 calibration
  kExperimental,  // H^1 calibration for normalized rewards
  kFixed,         // sigma_fixed, e.g. 0 for the noiseless pipeline
};

struct AgentConfig {
  double epsilon = 1.0;
  double delta = 0.1;
  double alpha = 0.01;
  double lambda = 1.0;
  double c = 1.0;
  BetaMode beta_mode = BetaMode::kExperimental;
  SigmaMode sigma_mode = SigmaMode::kExperimental;
  double sigma_fixed = 0.0;
  // Total episodes K. Enters T = KH and the baseline's log(1/K).
  int episodes = 1;

  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

// Noise standard deviation for the configured sigma mode.
double noise_sigma(const AgentConfig& cfg, int horizon);

// Bonus multiplier beta for episode k (1-based) at stage h (0-based, so
// H - h is the number of remaining stages). total_steps is T = K H.
double beta_schedule(int k, int h, int dim, int horizon, std::int64_t total_steps,
                     const AgentConfig& cfg);

// sqrt(beta) = c sqrt(d1) + (H - h) sqrt(2 log(1/K) + log det M), with the
// radicand floored at zero.
double baseline_bonus(double c, int d1, int episodes, int h, int horizon,
                      double log_det);

// (k, h, log det Sigma_{k,h}) -> multiplier on ||Sigma^{-1/2} phi||.
using BonusFn = std::function<double(int k, int h, double log_det)>;

BonusFn make_bonus(const AgentConfig& cfg, const LinearMixtureEnv& env);

struct EpisodePlan {
  QTable q;
  ValueTable v;
  // phi_{V_{k,h+1}}(s, a), laid out as [h][s][a].
  std::vector<FeatureVector> phi;

  const FeatureVector& phi_at(int h, int s, int a) const {
    return phi[(static_cast<std::size_t>(h) * q.num_states() + s) * q.num_actions() + a];
  }
};

// Backward induction for h = H-1 .. 0:
//   Q(h,s,a) = min{H - h, r_h(s,a) + <theta_hat_h, phi> + beta_h ||Sigma_h^{-1/2} phi||}
// with phi = phi_{V_{h+1}}(s,a). One Cholesky factorization of Sigma_h per
// stage; ||Sigma^{-1/2} phi|| is ||L^{-1} phi||. Throws ServerStateInvalid
// when Sigma_h does not factor.
EpisodePlan plan_episode(const LinearMixtureEnv& env, const ServerBroadcast& broadcast,
                         const BonusFn& bonus, int k);

int act(const EpisodePlan& plan, int h, int s);

struct Trajectory {
  std::vector<int> states;   // H + 1 entries, states[0] is the initial state
  std::vector<int> actions;  // H entries
};

// Rolls one episode through env, acting greedily on the plan.
Trajectory rollout(const LinearMixtureEnv& env, const EpisodePlan& plan, Rng& rng);

// Noiseless per-stage statistics from a realized trajectory:
//   gram_h   = phi phi^T,
//   target_h = phi V_{h+1}(s_{h+1}),  phi = phi_{V_{h+1}}(s_h, a_h).
struct EpisodeStatistics {
  std::vector<Matrix> gram;
  std::vector<Vector> target;
};
EpisodeStatistics episode_statistics(const EpisodePlan& plan, const Trajectory& traj);

struct LdpEpisode {
  EpisodePlan plan;
  Trajectory trajectory;  // stays with the user
  PrivatizedUpdate payload;
};

// Plan, act, build statistics and privatize them. Transitions draw from
// env_rng and noise from noise_rng, so sigma does not perturb the state
// sequence for a fixed env_rng.
LdpEpisode run_episode_ldp(const LinearMixtureEnv& env, const ServerBroadcast& broadcast,
                           const BonusFn& bonus, double sigma, int k, Rng& env_rng,
                           Rng& noise_rng);

struct BaselineEpisode {
  EpisodePlan plan;
  Trajectory trajectory;
};

// Noiseless accumulators: Lambda = lambda I, fixed shift 0.
ServerState init_baseline(const LinearMixtureEnv& env, double lambda);

// Same pipeline with sigma = 0 and r = 0: ridge estimate from the
// accumulators, plan, act, then fold the exact statistics back in.
BaselineEpisode run_episode_baseline(const LinearMixtureEnv& env,
                                     ServerState& accumulators, const BonusFn& bonus,
                                     int k, Rng& env_rng);

}  // namespace ldp_rl

#endif  // LDP_RL_AGENT_HPP_
