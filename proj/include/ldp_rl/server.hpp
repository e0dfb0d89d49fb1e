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

#ifndef LDP_RL_SERVER_HPP_
#define LDP_RL_SERVER_HPP_

// Server side of the protocol: aggregates privatized payloads, applies the
// shifted regularizer and broadcasts ridge estimates. The server only ever
// sees PrivatizedUpdate values.

#include <vector>

#include <Eigen/Dense>

#include "ldp_rl/protocol.hpp"

namespace ldp_rl {

enum class ShiftMode {
  kFixed,          // r = r_fixed
  kGammaSchedule,  // r = 2 Gamma(k + 1) with k payloads absorbed
};

struct ShiftConfig {
  ShiftMode mode = ShiftMode::kGammaSchedule;
  double r_fixed = 0.0;
  // Inputs to Gamma.
  double sigma = 0.0;
  double alpha = 0.01;
};

struct ServerState {
  int dim = 0;
  int horizon = 0;
  double lambda = 1.0;
  // Payloads absorbed so far.
  int k = 0;
  ShiftConfig shift;
  std::vector<Eigen::MatrixXd> gram;    // Lambda_h
  std::vector<Eigen::VectorXd> target;  // u_h
};

// Maximum number of times broadcast() doubles the shift before giving up.
inline constexpr int kMaxShiftDoublings = 10;

// Lambda_h = lambda I, u_h = 0, k = 0.
ServerState init_server(int dim, int horizon, double lambda, ShiftConfig shift = {});

// sqrt(k - 1) sigma (sqrt(4d) + 2 log(6H / alpha)); zero at k = 1.
double gamma(int k, double sigma, int dim, int horizon, double alpha);

// Shift r the next broadcast starts from (before any repair).
double nominal_shift(const ServerState& state);

// Lambda_h += delta_gram_h, u_h += delta_target_h, ++k.
void aggregate(ServerState& state, const PrivatizedUpdate& payload);

// Sigma_h = Lambda_h + r I and theta_hat_h = Sigma_h^{-1} u_h through a
// Cholesky factorization. If any stage fails to factor, r is doubled
// (starting from 1 when r = 0) up to kMaxShiftDoublings times, then
// ServerStateInvalid is thrown.
ServerBroadcast broadcast(const ServerState& state);

}  // namespace ldp_rl

#endif  // LDP_RL_SERVER_HPP_
