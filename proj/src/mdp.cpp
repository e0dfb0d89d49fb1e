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

#include "ldp_rl/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {

LinearMixtureEnv::LinearMixtureEnv(EnvShape shape, std::vector<double> features,
                                   std::vector<Vector> theta_star,
                                   std::vector<double> rewards,
                                   int initial_state)
    : shape_(shape),
      features_(std::move(features)),
      theta_star_(std::move(theta_star)),
      rewards_(std::move(rewards)),
      initial_state_(initial_state) {
  const auto [S, A, H, d] = shape_;
  if (S <= 0 || A <= 0 || H <= 0 || d <= 0) {
    throw InvalidArgument(fmt::format(
        "environment shape must be positive: S={} A={} H={} d={}", S, A, H, d));
  }
  const std::size_t rows = static_cast<std::size_t>(H) * S * A;
  if (features_.size() != rows * S * d) {
    throw InvalidArgument(fmt::format("feature table has {} entries, expected {}",
                                      features_.size(), rows * S * d));
  }
  if (theta_star_.size() != static_cast<std::size_t>(H)) {
    throw InvalidArgument(fmt::format("expected {} parameter vectors, got {}", H,
                                      theta_star_.size()));
  }
  for (const Vector& t : theta_star_) {
    if (t.size() != d) {
      throw InvalidArgument(
          fmt::format("parameter vector has length {}, expected {}", t.size(), d));
    }
  }
  if (rewards_.size() != rows) {
    throw InvalidArgument(fmt::format("reward table has {} entries, expected {}",
                                      rewards_.size(), rows));
  }
  if (initial_state_ < 0 || initial_state_ >= S) {
    throw InvalidArgument(fmt::format("initial state {} out of range", initial_state_));
  }

  probs_.resize(rows * S);
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        for (int sn = 0; sn < S; ++sn) {
          probs_[row_offset(h, s, a) + sn] = feature(h, s, a, sn).dot(theta_star_[h]);
        }
      }
    }
  }
}

Eigen::Map<const Vector> LinearMixtureEnv::feature(int h, int s, int a,
                                                   int s_next) const {
  const std::size_t offset = (row_offset(h, s, a) + s_next) * shape_.dim;
  return Eigen::Map<const Vector>(features_.data() + offset, shape_.dim);
}

void LinearMixtureEnv::check_indices(int h, int s, int a) const {
  if (h < 0 || h >= shape_.horizon || s < 0 || s >= shape_.num_states || a < 0 ||
      a >= shape_.num_actions) {
    throw InvalidArgument(fmt::format("index out of range: h={} s={} a={}", h, s, a));
  }
}

int argmax_lowest(std::span<const double> row) {
  int best = 0;
  for (int a = 1; a < static_cast<int>(row.size()); ++a) {
    if (row[a] > row[best]) best = a;
  }
  return best;
}

Policy greedy_policy(const QTable& q) {
  Policy pi(q.horizon(), q.num_states());
  for (int h = 0; h < q.horizon(); ++h) {
    for (int s = 0; s < q.num_states(); ++s) pi(h, s) = argmax_lowest(q.row(h, s));
  }
  return pi;
}

FeatureVector phi_v(const LinearMixtureEnv& env, std::span<const double> v_next,
                    int h, int s, int a) {
  env.check_indices(h, s, a);
  if (v_next.size() != static_cast<std::size_t>(env.num_states())) {
    throw InvalidArgument(fmt::format("value vector has length {}, expected {}",
                                      v_next.size(), env.num_states()));
  }
  FeatureVector out = FeatureVector::Zero(env.dim());
  for (int sn = 0; sn < env.num_states(); ++sn) {
    if (v_next[sn] != 0.0) out.noalias() += v_next[sn] * env.feature(h, s, a, sn);
  }
  return out;
}

double transition_prob(const LinearMixtureEnv& env, int h, int s, int a,
                       int s_next) {
  env.check_indices(h, s, a);
  if (s_next < 0 || s_next >= env.num_states()) {
    throw InvalidArgument(fmt::format("next state {} out of range", s_next));
  }
  return env.raw_prob(h, s, a, s_next);
}

int sample_transition(const LinearMixtureEnv& env, int h, int s, int a,
                      Rng& rng) {
  env.check_indices(h, s, a);
  const auto row = env.raw_row(h, s, a);
  double sum = 0.0;
  double clamped_total = 0.0;
  for (double p : row) {
    if (p < -kDistributionTol || p > 1.0 + kDistributionTol) {
      throw EnvironmentInvalid(fmt::format(
          "transition probability {} out of range at h={} s={} a={}", p, h, s, a));
    }
    sum += p;
    clamped_total += std::clamp(p, 0.0, 1.0);
  }
  if (std::abs(sum - 1.0) > kDistributionTol) {
    throw EnvironmentInvalid(fmt::format(
        "transition row sums to {} at h={} s={} a={}", sum, h, s, a));
  }
  const double u = rng.uniform() * clamped_total;
  double cumulative = 0.0;
  int last_positive = 0;
  for (int sn = 0; sn < static_cast<int>(row.size()); ++sn) {
    const double p = std::clamp(row[sn], 0.0, 1.0);
    if (p <= 0.0) continue;
    cumulative += p;
    last_positive = sn;
    if (u < cumulative) return sn;
  }
  return last_positive;
}

namespace {

double expected_next(const LinearMixtureEnv& env, const ValueTable& v, int h,
                     int s, int a) {
  const auto row = env.raw_row(h, s, a);
  const auto next = v.row(h + 1);
  double acc = 0.0;
  for (std::size_t sn = 0; sn < row.size(); ++sn) acc += row[sn] * next[sn];
  return acc;
}

}  // namespace

OptimalSolution optimal_values(const LinearMixtureEnv& env) {
  const int S = env.num_states(), A = env.num_actions(), H = env.horizon();
  OptimalSolution out{ValueTable(H, S), QTable(H, S, A)};
  for (int h = H - 1; h >= 0; --h) {
    for (int s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A; ++a) {
        const double q = env.reward(h, s, a) + expected_next(env, out.v, h, s, a);
        out.q(h, s, a) = q;
        best = std::max(best, q);
      }
      out.v(h, s) = best;
    }
  }
  return out;
}

ValueTable policy_value(const LinearMixtureEnv& env, const Policy& policy) {
  const int S = env.num_states(), H = env.horizon();
  ValueTable v(H, S);
  for (int h = H - 1; h >= 0; --h) {
    for (int s = 0; s < S; ++s) {
      const int a = policy(h, s);
      env.check_indices(h, s, a);
      v(h, s) = env.reward(h, s, a) + expected_next(env, v, h, s, a);
    }
  }
  return v;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double max_phi_v_norm(const LinearMixtureEnv& env, int h, int s, int a,
                      bool* partial) {
  const double H = env.horizon();
  // Zero features never contribute, so enumerating subsets of the support
  // covers every vertex of {0,H}^S.
  std::vector<int> support;
  for (int sn = 0; sn < env.num_states(); ++sn) {
    if (!env.feature(h, s, a, sn).isZero(0.0)) support.push_back(sn);
  }
  const int n = static_cast<int>(support.size());
  if (n > kVertexScanLimit) {
    if (partial != nullptr) *partial = true;
    Vector acc = Vector::Zero(env.dim());
    for (int sn : support) acc += H * env.feature(h, s, a, sn);
    return acc.norm();
  }
  double best = 0.0;
  Vector acc(env.dim());
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    acc.setZero();
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j)) acc.noalias() += H * env.feature(h, s, a, support[j]);
    }
    best = std::max(best, acc.norm());
  }
  return best;
}

ValidationReport validate_env(const LinearMixtureEnv& env, double tol,
                              Execution exec) {
  const int S = env.num_states(), A = env.num_actions(), H = env.horizon();
  const int d = env.dim();
  const double inf = std::numeric_limits<double>::infinity();

  double min_prob = inf, max_prob = -inf, worst_sum_dev = 0.0;
  double min_reward = inf, max_reward = -inf;
  bool finite = true;
  for (int h = 0; h < H; ++h) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double sum = 0.0;
        for (int sn = 0; sn < S; ++sn) {
          const double p = env.raw_prob(h, s, a, sn);
          min_prob = std::min(min_prob, p);
          max_prob = std::max(max_prob, p);
          sum += p;
          finite = finite && env.feature(h, s, a, sn).allFinite();
        }
        worst_sum_dev = std::max(worst_sum_dev, std::abs(sum - 1.0));
        min_reward = std::min(min_reward, env.reward(h, s, a));
        max_reward = std::max(max_reward, env.reward(h, s, a));
      }
    }
  }
  double max_theta_norm = 0.0;
  for (int h = 0; h < H; ++h) {
    finite = finite && env.theta(h).allFinite();
    max_theta_norm = std::max(max_theta_norm, env.theta(h).norm());
  }

  // Vertex scan: one independent task per (h, s, a); max is exact under
  // any reduction order so both paths agree bit-for-bit.
  const int tasks = H * S * A;
  double max_norm = 0.0;
  int partial_count = 0;
  auto scan_one = [&](int t, double& local_max, int& local_partial) {
    const int h = t / (S * A), s = (t / A) % S, a = t % A;
    bool partial = false;
    local_max = std::max(local_max, max_phi_v_norm(env, h, s, a, &partial));
    local_partial += partial ? 1 : 0;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic) reduction(max : max_norm) reduction(+ : partial_count)
    for (int t = 0; t < tasks; ++t) scan_one(t, max_norm, partial_count);
  } else {
    for (int t = 0; t < tasks; ++t) scan_one(t, max_norm, partial_count);
  }

  ValidationReport report;
  auto add = [&](std::string name, double slack, bool partial = false) {
    report.checks.push_back({std::move(name), slack >= 0.0, slack, partial});
  };
  add("finite_parameters", finite ? 0.0 : -inf);
  add("transition_nonnegative", min_prob + tol);
  add("transition_at_most_one", 1.0 + tol - max_prob);
  add("transition_rows_sum_to_one", tol - worst_sum_dev);
  add("theta_norm_bound", std::sqrt(static_cast<double>(d)) + tol - max_theta_norm);
  add("phi_v_norm_bound", H + tol - max_norm, partial_count > 0);
  add("rewards_in_unit_interval", std::min(min_reward, 1.0 - max_reward) + tol);
  return report;
}

}  // namespace ldp_rl
