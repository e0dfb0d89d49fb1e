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

#include "ldp_rl/environments.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"
#include "ldp_rl/rng.hpp"

namespace ldp_rl {

int riverswim_horizon(int num_states) { return 2 * num_states; }
int riverswim_dim(int num_states) { return num_states * num_states * 2; }

std::vector<double> riverswim_success_probs(const RiverSwimSpec& spec) {
  const int H = riverswim_horizon(spec.num_states);
  if (spec.homogeneous) return std::vector<double>(H, spec.p);
  Rng rng(derive_seed({0x5249564552ULL, spec.env_seed}));
  std::vector<double> p(H);
  for (double& ph : p) ph = 0.8 + 0.2 * rng.uniform_open();
  return p;
}

std::vector<double> riverswim_kernel_row(int num_states, int s, int a, double p) {
  const int S = num_states;
  std::vector<double> row(S, 0.0);
  const double right = a * p;
  const double back = (1.0 - a * p) / 2.0;
  if (s == 0) {
    // Left mass folds into the self-loop.
    row[0] = 1.0 - right;
    row[1] += right;
  } else if (s == S - 1) {
    // Right mass folds into the self-loop.
    row[s - 1] = back;
    row[s] = back + right;
  } else {
    row[s - 1] = back;
    row[s] = back;
    row[s + 1] = right;
  }
  return row;
}

LinearMixtureEnv make_riverswim(const RiverSwimSpec& spec) {
  const int S = spec.num_states;
  if (S < 2) throw InvalidArgument("RiverSwim needs at least 2 states");
  if (spec.homogeneous && !(spec.p > 0.0 && spec.p <= 1.0)) {
    throw InvalidArgument(fmt::format("RiverSwim p must lie in (0, 1], got {}", spec.p));
  }
  const int A = 2, H = riverswim_horizon(S), d = riverswim_dim(S);
  const auto probs = riverswim_success_probs(spec);
  const bool normalized = spec.scaling == FeatureScaling::kNormalized;
  const double feature_value = normalized ? 1.0 / std::sqrt(double(S)) : 1.0;
  const double theta_scale = normalized ? std::sqrt(double(S)) : 1.0;

  std::vector<double> features(static_cast<std::size_t>(H) * S * A * S * d, 0.0);
  std::vector<Vector> theta(H, Vector::Zero(d));
  std::vector<double> rewards(static_cast<std::size_t>(H) * S * A, 0.0);
  auto flat = [&](int s, int a, int sn) { return (s * A + a) * S + sn; };

  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        const auto row = riverswim_kernel_row(S, s, a, probs[h]);
        for (int sn = 0; sn < S; ++sn) {
          const std::size_t base =
              ((((static_cast<std::size_t>(h) * S + s) * A + a) * S) + sn) * d;
          features[base + flat(s, a, sn)] = feature_value;
          theta[h](flat(s, a, sn)) = theta_scale * row[sn];
        }
      }
    }
    rewards[(static_cast<std::size_t>(h) * S + 0) * A + kRiverSwimLeft] = 5.0 / (1000.0 * H);
    rewards[(static_cast<std::size_t>(h) * S + (S - 1)) * A + kRiverSwimRight] = 1.0 / H;
  }
  return LinearMixtureEnv({S, A, H, d}, std::move(features), std::move(theta),
                          std::move(rewards), /*initial_state=*/0);
}

HardInstanceConstants hard_instance_constants(int dim, int horizon, int episodes,
                                              double epsilon) {
  if (dim < 2 || horizon < 2 || episodes < 1 || !(epsilon > 0.0)) {
    throw InvalidArgument(fmt::format(
        "hard instance needs d >= 2, H >= 2, K >= 1, eps > 0 (got d={} H={} K={} eps={})",
        dim, horizon, episodes, epsilon));
  }
  HardInstanceConstants c;
  c.exit_prob = 1.0 / horizon;
  const double e = std::exp(epsilon);
  c.gap = std::sqrt(c.exit_prob) / (std::min(2.0, e) * (e - 1.0) * std::sqrt(double(episodes)));
  const double denom = 1.0 + (dim - 1) * c.gap;
  c.bias_scale = std::sqrt(1.0 / denom);
  c.action_scale = std::sqrt(c.gap / denom);
  return c;
}

HardInstanceSpec make_hard_instance_spec(int dim, int horizon, int episodes,
                                         double epsilon, bool random_signs,
                                         std::uint64_t sign_seed) {
  const auto c = hard_instance_constants(dim, horizon, episodes, epsilon);
  HardInstanceSpec spec{dim, horizon, episodes, epsilon, {}};
  Rng rng(derive_seed({0x48415244ULL, sign_seed}));
  for (int h = 0; h < horizon; ++h) {
    Vector mu = Vector::Constant(dim - 1, c.gap);
    if (random_signs) {
      for (int j = 0; j < dim - 1; ++j) {
        if (rng.uniform() < 0.5) mu(j) = -c.gap;
      }
    }
    spec.mu.push_back(std::move(mu));
  }
  return spec;
}

Vector hard_instance_action(int dim, int action) {
  if (dim < 2 || dim - 1 > 8) {
    throw InvalidArgument(fmt::format("hard instance dim {} out of range", dim));
  }
  if (action < 0 || action >= (1 << (dim - 1))) {
    throw InvalidArgument(fmt::format("action {} outside [0, 2^{})", action, dim - 1));
  }
  Vector a(dim - 1);
  for (int j = 0; j < dim - 1; ++j) a(j) = (action >> j) & 1 ? 1.0 : -1.0;
  return a;
}

LinearMixtureEnv make_hard_instance(const HardInstanceSpec& spec) {
  const int d = spec.dim, H = spec.horizon;
  if (d - 1 > 8) {
    throw InvalidArgument(fmt::format("hard instance action space 2^{} too large", d - 1));
  }
  const auto c = hard_instance_constants(d, H, spec.episodes, spec.epsilon);
  if ((d - 1) * c.gap > c.exit_prob / 2.0) {
    throw InvalidArgument(fmt::format("(d-1) * gap = {} exceeds exit_prob / 2 = {}",
                                      (d - 1) * c.gap, c.exit_prob / 2.0));
  }
  std::vector<Vector> mu = spec.mu;
  if (mu.empty()) mu.assign(H, Vector::Constant(d - 1, c.gap));
  if (mu.size() != static_cast<std::size_t>(H)) {
    throw InvalidArgument(fmt::format("expected {} mu vectors, got {}", H, mu.size()));
  }
  for (const Vector& m : mu) {
    if (m.size() != d - 1) throw InvalidArgument("mu vector has wrong length");
    for (int j = 0; j < d - 1; ++j) {
      if (std::abs(std::abs(m(j)) - c.gap) > 1e-15) {
        throw InvalidArgument(fmt::format("mu entries must be +/-{}, got {}", c.gap, m(j)));
      }
    }
  }

  const int S = H + 2, A = 1 << (d - 1);
  const int chain_end = H, rewarding = H + 1;
  std::vector<double> features(static_cast<std::size_t>(H) * S * A * S * d, 0.0);
  std::vector<double> rewards(static_cast<std::size_t>(H) * S * A, 0.0);
  auto slot = [&](int h, int s, int a, int sn) {
    return features.begin() +
           static_cast<std::ptrdiff_t>(
               ((((static_cast<std::size_t>(h) * S + s) * A + a) * S) + sn) * d);
  };
  for (int h = 0; h < H; ++h) {
    for (int a = 0; a < A; ++a) {
      const Vector sign = hard_instance_action(d, a);
      for (int s = 0; s < H; ++s) {
        auto advance = slot(h, s, a, s + 1);
        advance[0] = c.bias_scale * (1.0 - c.exit_prob);
        for (int j = 0; j < d - 1; ++j) advance[1 + j] = -c.action_scale * sign(j);
        auto exit = slot(h, s, a, rewarding);
        exit[0] = c.bias_scale * c.exit_prob;
        for (int j = 0; j < d - 1; ++j) exit[1 + j] = c.action_scale * sign(j);
      }
      slot(h, chain_end, a, chain_end)[0] = c.bias_scale;
      slot(h, rewarding, a, rewarding)[0] = c.bias_scale;
      rewards[(static_cast<std::size_t>(h) * S + rewarding) * A + a] = 1.0;
    }
  }
  std::vector<Vector> theta(H, Vector(d));
  for (int h = 0; h < H; ++h) {
    theta[h](0) = 1.0 / c.bias_scale;
    theta[h].tail(d - 1) = mu[h] / c.action_scale;
  }
  return LinearMixtureEnv({S, A, H, d}, std::move(features), std::move(theta),
                          std::move(rewards), /*initial_state=*/0);
}

}  // namespace ldp_rl
