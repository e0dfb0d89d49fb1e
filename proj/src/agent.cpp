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

#include "ldp_rl/agent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "ldp_rl/errors.hpp"
#include "ldp_rl/privacy.hpp"

namespace ldp_rl {

void AgentConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument(fmt::format("epsilon must be > 0, got {}", epsilon));
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument(fmt::format("delta must lie in (0, 1), got {}", delta));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  }
  if (!(lambda > 0.0)) throw InvalidArgument(fmt::format("lambda must be > 0, got {}", lambda));
  if (!(c >= 0.0)) throw InvalidArgument(fmt::format("c must be >= 0, got {}", c));
  if (!(sigma_fixed >= 0.0)) throw InvalidArgument("sigma_fixed must be >= 0");
  if (episodes < 1) throw InvalidArgument("episodes must be >= 1");
}

double noise_sigma(const AgentConfig& cfg, int horizon) {
  switch (cfg.sigma_mode) {
    case SigmaMode::kTheory:
      return sigma_theory(cfg.epsilon, cfg.delta, horizon);
    case SigmaMode::kExperimental:
      return sigma_experimental(cfg.epsilon, cfg.delta, horizon);
    case SigmaMode::kFixed:
      return cfg.sigma_fixed;
  }
  return 0.0;
}

double beta_schedule(int k, int h, int dim, int horizon, std::int64_t total_steps,
                     const AgentConfig& cfg) {
  if (k < 1) throw InvalidArgument("beta_schedule needs k >= 1");
  if (h < 0 || h >= horizon) throw InvalidArgument("stage out of range");
  const double remaining = horizon - h;
  const double base = cfg.c * std::pow(double(dim), 0.75) * std::pow(remaining, 1.5) *
                      std::pow(double(k), 0.25);
  if (cfg.beta_mode != BetaMode::kTheorem) return base;
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw InvalidArgument("theorem-mode beta needs delta in (0, 1)");
  }
  if (!(cfg.epsilon > 0.0) || !(cfg.alpha > 0.0)) {
    throw InvalidArgument("theorem-mode beta needs epsilon > 0 and alpha > 0");
  }
  const double log_t = std::log(double(dim) * double(total_steps) / cfg.alpha);
  const double log_h = std::log(remaining / cfg.delta);
  return base * log_t * std::pow(log_h, 0.25) * std::sqrt(1.0 / cfg.epsilon);
}

double baseline_bonus(double c, int d1, int episodes, int h, int horizon,
                      double log_det) {
  const double radicand = 2.0 * std::log(1.0 / episodes) + log_det;
  double root = 0.0;
  if (radicand >= 0.0) {
    root = std::sqrt(radicand);
  } else {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      spdlog::warn("baseline bonus radicand 2 log(1/K) + log det M = {} < 0; flooring at 0",
                   radicand);
    } else {
      spdlog::trace("baseline bonus radicand {} floored at 0", radicand);
    }
  }
  return c * std::sqrt(double(d1)) + (horizon - h) * root;
}

BonusFn make_bonus(const AgentConfig& cfg, const LinearMixtureEnv& env) {
  cfg.validate();
  const int d = env.dim(), H = env.horizon();
  if (cfg.beta_mode == BetaMode::kBaseline) {
    const int d1 = env.num_states() * env.num_actions();
    const double c = cfg.c;
    const int K = cfg.episodes;
    return [c, d1, K, H](int, int h, double log_det) {
      return baseline_bonus(c, d1, K, h, H, log_det);
    };
  }
  const std::int64_t T = std::int64_t{cfg.episodes} * H;
  return [cfg, d, H, T](int k, int h, double) { return beta_schedule(k, h, d, H, T, cfg); };
}

EpisodePlan plan_episode(const LinearMixtureEnv& env, const ServerBroadcast& broadcast,
                         const BonusFn& bonus, int k) {
  const int S = env.num_states(), A = env.num_actions(), H = env.horizon();
  const int d = env.dim();
  if (broadcast.sigma.size() != static_cast<std::size_t>(H) ||
      broadcast.theta_hat.size() != static_cast<std::size_t>(H)) {
    throw InvalidArgument("broadcast stage count does not match the environment");
  }
  EpisodePlan plan{QTable(H, S, A), ValueTable(H, S),
                   std::vector<FeatureVector>(static_cast<std::size_t>(H) * S * A)};
  for (int h = H - 1; h >= 0; --h) {
    const auto& sigma = broadcast.sigma[h];
    const auto& theta_hat = broadcast.theta_hat[h];
    if (sigma.rows() != d || sigma.cols() != d || theta_hat.size() != d) {
      throw InvalidArgument(fmt::format("broadcast stage {} has wrong dimension", h));
    }
    const Eigen::LLT<Matrix> llt(sigma);
    if (llt.info() != Eigen::Success) {
      throw ServerStateInvalid(
          fmt::format("Sigma at stage {} is not positive-definite (shift too small)", h));
    }
    const auto lower = llt.matrixL();
    double log_det = 0.0;
    for (int i = 0; i < d; ++i) log_det += std::log(llt.matrixLLT()(i, i));
    log_det *= 2.0;
    const double beta = bonus(k, h, log_det);
    const double cap = H - h;
    const auto v_next = plan.v.row(h + 1);

    for (int s = 0; s < S; ++s) {
      double best = 0.0;
      for (int a = 0; a < A; ++a) {
        FeatureVector phi = phi_v(env, v_next, h, s, a);
        const double width = lower.solve(phi).norm();
        const double q = std::min(cap, env.reward(h, s, a) + theta_hat.dot(phi) + beta * width);
        plan.q(h, s, a) = q;
        best = a == 0 ? q : std::max(best, q);
        plan.phi[(static_cast<std::size_t>(h) * S + s) * A + a] = std::move(phi);
      }
      plan.v(h, s) = best;
    }
  }
  return plan;
}

int act(const EpisodePlan& plan, int h, int s) { return argmax_lowest(plan.q.row(h, s)); }

Trajectory rollout(const LinearMixtureEnv& env, const EpisodePlan& plan, Rng& rng) {
  const int H = env.horizon();
  Trajectory traj;
  traj.states.reserve(H + 1);
  traj.actions.reserve(H);
  int s = env.initial_state();
  traj.states.push_back(s);
  for (int h = 0; h < H; ++h) {
    const int a = act(plan, h, s);
    s = sample_transition(env, h, s, a, rng);
    traj.actions.push_back(a);
    traj.states.push_back(s);
  }
  return traj;
}

EpisodeStatistics episode_statistics(const EpisodePlan& plan, const Trajectory& traj) {
  const int H = plan.q.horizon();
  EpisodeStatistics stats;
  stats.gram.reserve(H);
  stats.target.reserve(H);
  for (int h = 0; h < H; ++h) {
    const FeatureVector& phi = plan.phi_at(h, traj.states[h], traj.actions[h]);
    stats.gram.push_back(phi * phi.transpose());
    stats.target.push_back(phi * plan.v(h + 1, traj.states[h + 1]));
  }
  return stats;
}

LdpEpisode run_episode_ldp(const LinearMixtureEnv& env, const ServerBroadcast& broadcast,
                           const BonusFn& bonus, double sigma, int k, Rng& env_rng,
                           Rng& noise_rng) {
  EpisodePlan plan = plan_episode(env, broadcast, bonus, k);
  Trajectory traj = rollout(env, plan, env_rng);
  EpisodeStatistics stats = episode_statistics(plan, traj);
  PrivatizedUpdate payload = privatize_episode(stats.gram, stats.target, sigma, noise_rng);
  return {std::move(plan), std::move(traj), std::move(payload)};
}

ServerState init_baseline(const LinearMixtureEnv& env, double lambda) {
  return init_server(env.dim(), env.horizon(), lambda,
                     ShiftConfig{ShiftMode::kFixed, 0.0, 0.0, 0.01});
}

BaselineEpisode run_episode_baseline(const LinearMixtureEnv& env,
                                     ServerState& accumulators, const BonusFn& bonus,
                                     int k, Rng& env_rng) {
  const ServerBroadcast estimate = broadcast(accumulators);
  EpisodePlan plan = plan_episode(env, estimate, bonus, k);
  Trajectory traj = rollout(env, plan, env_rng);
  EpisodeStatistics stats = episode_statistics(plan, traj);
  aggregate(accumulators, PrivatizedUpdate{std::move(stats.gram), std::move(stats.target)});
  return {std::move(plan), std::move(traj)};
}

}  // namespace ldp_rl
