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

#ifndef LDP_RL_TESTS_TEST_UTIL_HPP_
#define LDP_RL_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ldp_rl/mdp.hpp"
#include "ldp_rl/rng.hpp"

namespace ldp_rl::testing {

inline constexpr int kPropertyCases = 128;

// Runs `body` on kPropertyCases (or `cases`) independently seeded
// generators. A failing case is reported with its index and seed so it can
// be replayed in isolation.
inline void for_all(const std::string& name, const std::function<void(Rng&)>& body,
                    int cases = kPropertyCases, std::uint64_t base = 0x5eed) {
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t seed = derive_seed({base, static_cast<std::uint64_t>(i)});
    SCOPED_TRACE(name + " case " + std::to_string(i) + " seed " + std::to_string(seed));
    Rng rng(seed);
    body(rng);
    if (::testing::Test::HasFatalFailure() || ::testing::Test::HasNonfatalFailure()) return;
  }
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

// kernel[((h * S + s) * A + a) * S + s'], rewards[(h * S + s) * A + a].
struct TabularModel {
  int S = 0, A = 0, H = 0;
  std::vector<double> kernel;
  std::vector<double> rewards;
  int initial_state = 0;

  double p(int h, int s, int a, int sn) const {
    return kernel[((static_cast<std::size_t>(h) * S + s) * A + a) * S + sn];
  }
  double r(int h, int s, int a) const {
    return rewards[(static_cast<std::size_t>(h) * S + s) * A + a];
  }
};

inline TabularModel random_model(Rng& rng, int S, int A, int H, double sparsity = 0.3) {
  TabularModel m{S, A, H, {}, {}, 0};
  m.kernel.resize(static_cast<std::size_t>(H) * S * A * S);
  m.rewards.resize(static_cast<std::size_t>(H) * S * A);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double total = 0.0;
        const std::size_t base = ((static_cast<std::size_t>(h) * S + s) * A + a) * S;
        for (int sn = 0; sn < S; ++sn) {
          const double w = rng.uniform() < sparsity ? 0.0 : rng.uniform_open();
          m.kernel[base + sn] = w;
          total += w;
        }
        if (total == 0.0) {
          m.kernel[base + uniform_int(rng, 0, S - 1)] = 1.0;
          total = 1.0;
        }
        for (int sn = 0; sn < S; ++sn) m.kernel[base + sn] /= total;
        m.rewards[(static_cast<std::size_t>(h) * S + s) * A + a] = rng.uniform();
      }
    }
  }
  m.initial_state = uniform_int(rng, 0, S - 1);
  return m;
}

// Tabular embedding phi(s'|s,a) = scale * e_(s,a,s'), theta_h = kernel_h / scale.
inline LinearMixtureEnv tabular_env(const TabularModel& m, double scale = 1.0) {
  const int d = m.S * m.S * m.A;
  std::vector<double> features(static_cast<std::size_t>(m.H) * m.S * m.A * m.S * d, 0.0);
  std::vector<Vector> theta(m.H, Vector::Zero(d));
  for (int h = 0; h < m.H; ++h) {
    for (int s = 0; s < m.S; ++s) {
      for (int a = 0; a < m.A; ++a) {
        for (int sn = 0; sn < m.S; ++sn) {
          const int i = (s * m.A + a) * m.S + sn;
          const std::size_t row = ((static_cast<std::size_t>(h) * m.S + s) * m.A + a) * m.S + sn;
          features[row * d + i] = scale;
          theta[h](i) = m.p(h, s, a, sn) / scale;
        }
      }
    }
  }
  return LinearMixtureEnv({m.S, m.A, m.H, d}, std::move(features), std::move(theta), m.rewards,
                          m.initial_state);
}

// Straight-loop Bellman backup for a fixed policy, independent of mdp.cpp.
inline std::vector<double> brute_policy_value(const TabularModel& m, const std::vector<int>& pi) {
  std::vector<double> next(m.S, 0.0), cur(m.S, 0.0);
  for (int h = m.H - 1; h >= 0; --h) {
    for (int s = 0; s < m.S; ++s) {
      const int a = pi[static_cast<std::size_t>(h) * m.S + s];
      double q = m.r(h, s, a);
      for (int sn = 0; sn < m.S; ++sn) q += m.p(h, s, a, sn) * next[sn];
      cur[s] = q;
    }
    next = cur;
  }
  return next;
}

// Best value over all A^(S H) deterministic policies, by enumeration.
inline std::vector<double> exhaustive_optimum(const TabularModel& m) {
  const int slots = m.S * m.H;
  std::vector<int> pi(slots, 0);
  std::vector<double> best(m.S, -1e300);
  while (true) {
    const auto v = brute_policy_value(m, pi);
    for (int s = 0; s < m.S; ++s) best[s] = std::max(best[s], v[s]);
    int i = 0;
    while (i < slots && ++pi[i] == m.A) pi[i++] = 0;
    if (i == slots) break;
  }
  return best;
}

inline TabularModel model_of(const LinearMixtureEnv& env) {
  TabularModel m{env.num_states(), env.num_actions(), env.horizon(), {}, {}, env.initial_state()};
  for (int h = 0; h < m.H; ++h) {
    for (int s = 0; s < m.S; ++s) {
      for (int a = 0; a < m.A; ++a) {
        for (int sn = 0; sn < m.S; ++sn) m.kernel.push_back(env.raw_prob(h, s, a, sn));
        m.rewards.push_back(env.reward(h, s, a));
      }
    }
  }
  return m;
}

}  // namespace ldp_rl::testing

#endif  // LDP_RL_TESTS_TEST_UTIL_HPP_
