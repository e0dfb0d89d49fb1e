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

#include "ldp_rl/privacy.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {
namespace {

void check_budget(double epsilon, double delta, int horizon) {
  if (!(epsilon > 0.0)) {
    throw InvalidArgument(fmt::format("epsilon must be positive, got {}", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument(fmt::format("delta must lie in (0, 1), got {}", delta));
  }
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
}

}  // namespace

double sigma_theory(double epsilon, double delta, int horizon) {
  check_budget(epsilon, delta, horizon);
  const double H = horizon;
  return 4.0 * H * H * H * std::sqrt(2.0 * std::log(2.5 * H / delta)) / epsilon;
}

double sigma_experimental(double epsilon, double delta, int horizon) {
  check_budget(epsilon, delta, horizon);
  const double H = horizon;
  return 4.0 * H * std::sqrt(2.0 * std::log(2.5 * H / delta)) / epsilon;
}

Eigen::MatrixXd privatize_gram(const Eigen::MatrixXd& gram, double sigma, Rng& rng) {
  if (gram.rows() != gram.cols()) throw InvalidArgument("Gram matrix must be square");
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be nonnegative");
  const Eigen::Index d = gram.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      if (std::abs(gram(i, j) - gram(j, i)) > 1e-12) {
        throw InvalidArgument(fmt::format("Gram matrix asymmetric at ({}, {})", i, j));
      }
    }
  }
  if (sigma == 0.0) return gram;
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const double v = gram(i, j) + sigma * rng.gaussian();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Eigen::VectorXd privatize_target(const Eigen::VectorXd& target, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be nonnegative");
  if (sigma == 0.0) return target;
  Eigen::VectorXd out = target;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += sigma * rng.gaussian();
  return out;
}

PrivatizedUpdate privatize_episode(const std::vector<Eigen::MatrixXd>& grams,
                                   const std::vector<Eigen::VectorXd>& targets,
                                   double sigma, Rng& rng) {
  if (grams.size() != targets.size()) {
    throw InvalidArgument("Gram and target stage counts differ");
  }
  PrivatizedUpdate out;
  out.delta_gram.reserve(grams.size());
  out.delta_target.reserve(targets.size());
  for (std::size_t h = 0; h < grams.size(); ++h) {
    out.delta_gram.push_back(privatize_gram(grams[h], sigma, rng));
    out.delta_target.push_back(privatize_target(targets[h], sigma, rng));
  }
  return out;
}

SensitivityBounds sensitivity_bounds(int horizon, bool normalized) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  if (normalized) return {2.0, 2.0};
  const double s = 2.0 * horizon * horizon;
  return {s, s};
}

StageBudget per_stage_budget(double epsilon, double delta, int horizon) {
  check_budget(epsilon, delta, horizon);
  return {epsilon / (2.0 * horizon), delta / (2.0 * horizon)};
}

double estimate_privacy_loss(double sigma, double sensitivity, double epsilon,
                             std::int64_t n_samples, Rng& rng) {
  if (n_samples < 10000) throw InvalidArgument("n_samples must be at least 1e4");
  if (!(sigma > 0.0) || !(sensitivity > 0.0) || !(epsilon >= 0.0)) {
    throw InvalidArgument("sigma and sensitivity must be positive, epsilon nonnegative");
  }
  if (std::isinf(sigma)) return 0.0;
  // x = 0, x' = sensitivity, o ~ N(x, sigma^2):
  // loss(o) = log p(o | x) - log p(o | x') = ((o - s)^2 - o^2) / (2 sigma^2).
  const double two_var = 2.0 * sigma * sigma;
  std::int64_t exceed = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double o = sigma * rng.gaussian();
    const double loss = ((o - sensitivity) * (o - sensitivity) - o * o) / two_var;
    if (loss > epsilon) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(n_samples);
}

double gaussian_privacy_loss_tail(double sigma, double sensitivity, double epsilon) {
  const double z = sensitivity / (2.0 * sigma) - epsilon * sigma / sensitivity;
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

}  // namespace ldp_rl
