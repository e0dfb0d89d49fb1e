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

#ifndef LDP_RL_CONFIG_HPP_
#define LDP_RL_CONFIG_HPP_

// JSON experiment configuration.
//
// Unknown keys are rejected. Errors are ConfigError carrying the JSON path
// of the offending field, or the line and column for syntax errors.
// See README.md for the full key list.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldp_rl/harness.hpp"

namespace ldp_rl {

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

// Command-line overrides, applied after the file.
struct ConfigOverrides {
  std::optional<std::string> out;
  std::optional<int> seeds;
  std::optional<std::uint64_t> base_seed;
  std::optional<std::vector<double>> epsilons;  // replaces every LDP entry's list
  std::optional<int> episodes;
  std::optional<std::string> env;  // riverswim | riverswim-inhomogeneous | hard-instance
  std::optional<int> parallel;
};

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

// Parses "1,10,0.5".
std::vector<double> parse_double_list(const std::string& text);

}  // namespace ldp_rl

#endif  // LDP_RL_CONFIG_HPP_
