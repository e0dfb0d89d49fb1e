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

#ifndef LDP_RL_PRIVACY_HPP_
#define LDP_RL_PRIVACY_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ldp_rl/protocol.hpp"
#include "ldp_rl/rng.hpp"

namespace ldp_rl {

struct NoiseScale {
  double sigma = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  int horizon = 0;
  double sensitivity = 0.0;
};

// 4 H^3 sqrt(2 log(2.5 H / delta)) / epsilon: calibrated for the
// unnormalized statistics with sensitivity 2H^2 per stage.
double sigma_theory(double epsilon, double delta, int horizon);

// 4 H sqrt(2 log(2.5 H / delta)) / epsilon: the same calibration once
// rewards are normalized so that |Q| <= 1.
double sigma_experimental(double epsilon, double delta, int horizon);

// gram + W with W symmetric, W(i,j) ~ N(0, sigma^2) i.i.d. for i <= j,
// drawn row by row over the upper triangle. The result is exactly
// symmetric. sigma == 0 returns the input unchanged and draws nothing.
Eigen::MatrixXd privatize_gram(const Eigen::MatrixXd& gram, double sigma, Rng& rng);

// u + xi with xi ~ N(0, sigma^2 I).
Eigen::VectorXd privatize_target(const Eigen::VectorXd& target, double sigma, Rng& rng);

// Privatizes every stage: for h = 0..H-1, the Gram matrix then the target.
PrivatizedUpdate privatize_episode(const std::vector<Eigen::MatrixXd>& grams,
                                   const std::vector<Eigen::VectorXd>& targets,
                                   double sigma, Rng& rng);

struct SensitivityBounds {
  double gram = 0.0;    // Frobenius
  double target = 0.0;  // l2
};

// (2H^2, 2H^2), or (2, 2) when rewards are normalized.
SensitivityBounds sensitivity_bounds(int horizon, bool normalized);

// Per-mechanism budget when an (epsilon, delta) episode budget is split over
// 2H Gaussian mechanisms (a Gram and a target release per stage).
struct StageBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};
StageBudget per_stage_budget(double epsilon, double delta, int horizon);

// Monte-Carlo estimate of P[privacy loss > epsilon] for the Gaussian
// mechanism on a worst-case adjacent pair at l2 distance `sensitivity`.
// Only the projection onto x - x' affects the loss, so one coordinate is
// sampled per draw.
double estimate_privacy_loss(double sigma, double sensitivity, double epsilon,
                             std::int64_t n_samples, Rng& rng);

// Closed form of the same probability: Phi(s / (2 sigma) - eps sigma / s).
double gaussian_privacy_loss_tail(double sigma, double sensitivity, double epsilon);

}  // namespace ldp_rl

#endif  // LDP_RL_PRIVACY_HPP_
