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

#ifndef LDP_RL_CSV_HPP_
#define LDP_RL_CSV_HPP_

// Regret CSV:
//   # <resolved config, one "key: value" comment line per top-level key>
//   algorithm,epsilon,seed,episode,per_episode_regret,cumulative_regret
// Summary CSV:
//   algorithm,epsilon,episode,mean_cumulative_regret,std_cumulative_regret
// Reals are written with 17 significant digits; baseline rows leave the
// epsilon field empty.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ldp_rl/harness.hpp"

namespace ldp_rl {

inline constexpr const char* kRegretHeader =
    "algorithm,epsilon,seed,episode,per_episode_regret,cumulative_regret";
inline constexpr const char* kSummaryHeader =
    "algorithm,epsilon,episode,mean_cumulative_regret,std_cumulative_regret";

std::string format_real(double value);

void write_regret_csv(std::ostream& out, std::span<const std::string> comments,
                      std::span<const RegretRecord> records);

// Skips '#' lines. Throws InvalidArgument naming the line on bad input.
std::vector<RegretRecord> read_regret_csv(std::istream& in);

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace ldp_rl

#endif  // LDP_RL_CSV_HPP_
