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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ldp_rl/errors.hpp"
#include "ldp_rl/privacy.hpp"
#include "ldp_rl/server.hpp"

namespace ldp_rl {
namespace {

PrivatizedUpdate outer_payload(const std::vector<Eigen::VectorXd>& phis,
                               const std::vector<double>& ys) {
  PrivatizedUpdate p;
  for (std::size_t h = 0; h < phis.size(); ++h) {
    p.delta_gram.push_back(phis[h] * phis[h].transpose());
    p.delta_target.push_back(phis[h] * ys[h]);
  }
  return p;
}

ShiftConfig fixed_shift(double r) { return ShiftConfig{ShiftMode::kFixed, r, 0.0, 0.01}; }

TEST(InitServer, IdentityGramAndZeroEstimate) {
  const ServerState s = init_server(2, 3, 1.0, fixed_shift(0.0));
  ASSERT_EQ(s.gram.size(), 3u);
  for (int h = 0; h < 3; ++h) {
    EXPECT_EQ(s.gram[h], Eigen::MatrixXd::Identity(2, 2));
    EXPECT_EQ(s.target[h], Eigen::VectorXd::Zero(2));
  }
  EXPECT_EQ(s.k, 0);
  const ServerBroadcast b = broadcast(s);
  for (int h = 0; h < 3; ++h) {
    EXPECT_EQ(b.theta_hat[h], Eigen::VectorXd::Zero(2));
    EXPECT_EQ(b.sigma[h], Eigen::MatrixXd::Identity(2, 2));
  }
  EXPECT_EQ(b.shift, 0.0);
  EXPECT_EQ(b.repairs, 0);
}

TEST(InitServer, RejectsBadArguments) {
  EXPECT_THROW(init_server(0, 3, 1.0), InvalidArgument);
  EXPECT_THROW(init_server(2, 0, 1.0), InvalidArgument);
  EXPECT_THROW(init_server(2, 3, 0.0), InvalidArgument);
}

TEST(Gamma, Values) {
  EXPECT_EQ(gamma(1, 10.0, 4, 6, 0.01), 0.0);
  // sqrt(100) * 10 * (sqrt(16) + 2 log(6 * 6 / 0.01))
  EXPECT_NEAR(gamma(101, 10.0, 4, 6, 0.01), 100.0 * (4.0 + 2.0 * std::log(3600.0)), 1e-9);
  EXPECT_NEAR(gamma(101, 10.0, 4, 6, 0.01), 2037.74, 0.01);
}

TEST(Gamma, GrowsAsSquareRoot) {
  for (int km1 : {100, 400}) {
    const double ratio = gamma(4 * km1 + 1, 3.0, 18, 6, 0.01) / gamma(km1 + 1, 3.0, 18, 6, 0.01);
    EXPECT_NEAR(ratio, 2.0, 1e-9);
  }
}

TEST(Aggregate, ZeroPayloadOnlyAdvancesK) {
  ServerState s = init_server(3, 2, 1.0, fixed_shift(0.0));
  const ServerState before = s;
  PrivatizedUpdate zero{{Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(3, 3)},
                        {Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)}};
  aggregate(s, zero);
  EXPECT_EQ(s.k, 1);
  for (int h = 0; h < 2; ++h) {
    EXPECT_EQ(s.gram[h], before.gram[h]);
    EXPECT_EQ(s.target[h], before.target[h]);
  }
}

TEST(Aggregate, RejectsMismatchedPayload) {
  ServerState s = init_server(3, 2, 1.0);
  PrivatizedUpdate wrong_h{{Eigen::MatrixXd::Zero(3, 3)}, {Eigen::VectorXd::Zero(3)}};
  EXPECT_THROW(aggregate(s, wrong_h), InvalidArgument);
  PrivatizedUpdate wrong_d{{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)},
                           {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)}};
  EXPECT_THROW(aggregate(s, wrong_d), InvalidArgument);
  EXPECT_EQ(s.k, 0);
}

TEST(Aggregate, OrderInvariantUpToRounding) {
  Rng rng(1);
  const int d = 4, H = 2;
  std::vector<PrivatizedUpdate> payloads;
  const std::vector<Eigen::MatrixXd> grams(H, Eigen::MatrixXd::Identity(d, d));
  const std::vector<Eigen::VectorXd> targets(H, Eigen::VectorXd::Ones(d));
  for (int i = 0; i < 10; ++i) payloads.push_back(privatize_episode(grams, targets, 5.0, rng));
  ServerState a = init_server(d, H, 1.0), b = init_server(d, H, 1.0);
  std::vector<int> order(10);
  std::iota(order.begin(), order.end(), 0);
  for (int i : order) aggregate(a, payloads[i]);
  std::reverse(order.begin(), order.end());
  std::swap(order[2], order[7]);
  for (int i : order) aggregate(b, payloads[i]);
  for (int h = 0; h < H; ++h) {
    EXPECT_LE((a.gram[h] - b.gram[h]).lpNorm<Eigen::Infinity>(), 1e-8);
    EXPECT_LE((a.target[h] - b.target[h]).lpNorm<Eigen::Infinity>(), 1e-8);
  }
}

TEST(Aggregate, NoiselessTelescoping) {
  Rng rng(2);
  const int d = 3;
  ServerState s = init_server(d, 1, 0.5, fixed_shift(0.0));
  Eigen::MatrixXd expected = 0.5 * Eigen::MatrixXd::Identity(d, d);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd phi(d);
    for (int i = 0; i < d; ++i) phi(i) = rng.gaussian();
    expected += phi * phi.transpose();
    aggregate(s, outer_payload({phi}, {1.0}));
  }
  EXPECT_LE((s.gram[0] - expected).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(Broadcast, ZeroTargetGivesZeroEstimate) {
  ServerState s = init_server(3, 1, 1.0, fixed_shift(2.0));
  s.gram[0] = Eigen::MatrixXd::Identity(3, 3) * 7.0;
  EXPECT_EQ(broadcast(s).theta_hat[0], Eigen::VectorXd::Zero(3));
}

TEST(Broadcast, ScalarRidge) {
  ServerState s = init_server(1, 1, 1.0, fixed_shift(1.0));
  s.gram[0](0, 0) = 4.0;
  s.target[0](0) = 2.0;
  const ServerBroadcast b = broadcast(s);
  EXPECT_DOUBLE_EQ(b.sigma[0](0, 0), 5.0);
  EXPECT_DOUBLE_EQ(b.theta_hat[0](0), 0.4);
  EXPECT_EQ(b.shift, 1.0);
}

TEST(Broadcast, NoiselessEqualsIndependentRidgeSolve) {
  Rng rng(3);
  const int d = 5;
  const double lambda = 0.7;
  ServerState s = init_server(d, 1, lambda, fixed_shift(0.0));
  Eigen::MatrixXd X(30, d);
  Eigen::VectorXd y(30);
  for (int t = 0; t < 30; ++t) {
    for (int i = 0; i < d; ++i) X(t, i) = rng.uniform() - 0.5;
    y(t) = rng.gaussian();
    aggregate(s, outer_payload({X.row(t).transpose()}, {y(t)}));
  }
  const Eigen::MatrixXd normal = X.transpose() * X + lambda * Eigen::MatrixXd::Identity(d, d);
  const Eigen::VectorXd oracle = normal.colPivHouseholderQr().solve(X.transpose() * y);
  EXPECT_LE((broadcast(s).theta_hat[0] - oracle).norm(), 1e-8);
}

TEST(Broadcast, GammaShiftUsesAbsorbedCount) {
  const double sigma = 2.0, alpha = 0.01;
  ServerState s = init_server(2, 3, 1.0, ShiftConfig{ShiftMode::kGammaSchedule, 0.0, sigma, alpha});
  EXPECT_EQ(nominal_shift(s), 0.0);
  PrivatizedUpdate zero{std::vector<Eigen::MatrixXd>(3, Eigen::MatrixXd::Zero(2, 2)),
                        std::vector<Eigen::VectorXd>(3, Eigen::VectorXd::Zero(2))};
  for (int i = 0; i < 4; ++i) aggregate(s, zero);
  EXPECT_NEAR(nominal_shift(s), 2.0 * gamma(5, sigma, 2, 3, alpha), 1e-12);
  const ServerBroadcast b = broadcast(s);
  EXPECT_NEAR(b.sigma[1](0, 0), 1.0 + 2.0 * gamma(5, sigma, 2, 3, alpha), 1e-9);
}

TEST(Broadcast, RepairsIndefiniteGramByDoubling) {
  ServerState s = init_server(2, 1, 1.0, fixed_shift(0.0));
  s.gram[0] = Eigen::MatrixXd::Identity(2, 2) * -2.5;
  const ServerBroadcast b = broadcast(s);
  // r: 0 -> 1 -> 2 -> 4; -2.5 + 4 > 0.
  EXPECT_EQ(b.shift, 4.0);
  EXPECT_EQ(b.repairs, 3);
  EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(b.sigma[0]).info(), Eigen::Success);
}

TEST(Broadcast, GivesUpAfterMaxDoublings) {
  ServerState s = init_server(2, 1, 1.0, fixed_shift(1.0));
  s.gram[0] = Eigen::MatrixXd::Identity(2, 2) * -1e6;
  EXPECT_THROW(broadcast(s), ServerStateInvalid);
}

// Collects the project headers reachable from `file` through quoted
// ldp_rl includes.
void reachable_headers(const std::string& path, std::set<std::string>& seen) {
  std::ifstream in(path);
  ASSERT_TRUE(in) << "cannot open " << path;
  const std::regex include_re(R"re(#include\s+"ldp_rl/([a-z_]+\.hpp)")re");
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_search(line, m, include_re) && seen.insert(m[1]).second) {
      reachable_headers(std::string(LDP_RL_SOURCE_DIR) + "/include/ldp_rl/" + m[1].str(), seen);
    }
  }
}

TEST(ServerIsolation, NoTrajectoryTypesReachable) {
  std::set<std::string> seen;
  reachable_headers(std::string(LDP_RL_SOURCE_DIR) + "/src/server.cpp", seen);
  EXPECT_TRUE(seen.contains("server.hpp"));
  EXPECT_TRUE(seen.contains("protocol.hpp"));
  for (const char* forbidden : {"agent.hpp", "mdp.hpp", "environments.hpp", "harness.hpp",
                                "journal.hpp"}) {
    EXPECT_FALSE(seen.contains(forbidden)) << "server reaches " << forbidden;
  }
  for (const std::string& header : seen) {
    std::ifstream in(std::string(LDP_RL_SOURCE_DIR) + "/include/ldp_rl/" + header);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str().find("Trajectory"), std::string::npos) << header;
  }
}

}  // namespace
}  // namespace ldp_rl
