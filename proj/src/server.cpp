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

#include "ldp_rl/server.hpp"

#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {

ServerState init_server(int dim, int horizon, double lambda, ShiftConfig shift) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (dim < 1 || horizon < 1) throw InvalidArgument("dim and horizon must be positive");
  ServerState state;
  state.dim = dim;
  state.horizon = horizon;
  state.lambda = lambda;
  state.shift = shift;
  state.gram.assign(horizon, lambda * Eigen::MatrixXd::Identity(dim, dim));
  state.target.assign(horizon, Eigen::VectorXd::Zero(dim));
  return state;
}

double gamma(int k, double sigma, int dim, int horizon, double alpha) {
  if (k < 1) throw InvalidArgument("gamma needs k >= 1");
  return std::sqrt(static_cast<double>(k - 1)) * sigma *
         (std::sqrt(4.0 * dim) + 2.0 * std::log(6.0 * horizon / alpha));
}

double nominal_shift(const ServerState& state) {
  if (state.shift.mode == ShiftMode::kFixed) return state.shift.r_fixed;
  return 2.0 * gamma(state.k + 1, state.shift.sigma, state.dim, state.horizon,
                     state.shift.alpha);
}

void aggregate(ServerState& state, const PrivatizedUpdate& payload) {
  if (payload.horizon() != state.horizon ||
      payload.delta_target.size() != static_cast<std::size_t>(state.horizon)) {
    throw InvalidArgument(fmt::format("payload has {} stages, server expects {}",
                                      payload.horizon(), state.horizon));
  }
  for (int h = 0; h < state.horizon; ++h) {
    const auto& g = payload.delta_gram[h];
    const auto& t = payload.delta_target[h];
    if (g.rows() != state.dim || g.cols() != state.dim || t.size() != state.dim) {
      throw InvalidArgument(fmt::format("payload stage {} has wrong dimension", h));
    }
  }
  for (int h = 0; h < state.horizon; ++h) {
    state.gram[h] += payload.delta_gram[h];
    state.target[h] += payload.delta_target[h];
  }
  ++state.k;
}

ServerBroadcast broadcast(const ServerState& state) {
  ServerBroadcast out;
  double r = nominal_shift(state);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(state.dim, state.dim);
  for (int attempt = 0; attempt <= kMaxShiftDoublings; ++attempt) {
    out.sigma.clear();
    out.theta_hat.clear();
    bool ok = true;
    for (int h = 0; h < state.horizon && ok; ++h) {
      Eigen::MatrixXd sigma = state.gram[h] + r * eye;
      Eigen::LLT<Eigen::MatrixXd> llt(sigma);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      out.theta_hat.push_back(llt.solve(state.target[h]));
      out.sigma.push_back(std::move(sigma));
    }
    if (ok) {
      out.shift = r;
      out.repairs = attempt;
      return out;
    }
    if (attempt == kMaxShiftDoublings) break;
    const double next = r > 0.0 ? 2.0 * r : 1.0;
    spdlog::warn("server k={}: shifted Gram not positive-definite at r={}, retrying with r={}",
                 state.k, r, next);
    r = next;
  }
  throw ServerStateInvalid(fmt::format(
      "shifted Gram still not positive-definite after {} doublings (k={}, r={})",
      kMaxShiftDoublings, state.k, r));
}

}  // namespace ldp_rl
