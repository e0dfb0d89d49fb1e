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

#ifndef LDP_RL_PROTOCOL_HPP_
#define LDP_RL_PROTOCOL_HPP_

// Messages exchanged between users and the server. These are the only
// types that cross the user/server boundary; raw trajectories never do.

#include <vector>

#include <Eigen/Dense>

namespace ldp_rl {

// One user's per-episode payload: a privatized Gram increment and a
// privatized regression target for every stage.
struct PrivatizedUpdate {
  std::vector<Eigen::MatrixXd> delta_gram;    // H symmetric d x d
  std::vector<Eigen::VectorXd> delta_target;  // H vectors of length d

  int horizon() const { return static_cast<int>(delta_gram.size()); }
  int dim() const {
    return delta_gram.empty() ? 0 : static_cast<int>(delta_gram.front().rows());
  }
};

// What the server sends to the next user.
struct ServerBroadcast {
  std::vector<Eigen::MatrixXd> sigma;      // shifted Gram per stage, SPD
  std::vector<Eigen::VectorXd> theta_hat;  // ridge estimate per stage
  // Shift actually applied (after any positive-definiteness repair).
  double shift = 0.0;
  int repairs = 0;
};

}  // namespace ldp_rl

#endif  // LDP_RL_PROTOCOL_HPP_
