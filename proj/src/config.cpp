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

#include "ldp_rl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ldp_rl/errors.hpp"

namespace ldp_rl {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError(fmt::format("{}: {}", path, why));
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.contains(key)) fail(path + "/" + key, "unknown key");
  }
}

double get_double(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key,
                      std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) fail(path + "/" + key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(path + "/" + key, "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_doubles(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array()) fail(path + "/" + key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(fmt::format("{}/{}/{}", path, key, i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

template <typename Enum>
Enum get_enum(const json& obj, const std::string& path, const char* key, Enum fallback,
              std::initializer_list<std::pair<const char*, Enum>> names) {
  if (!obj.contains(key)) return fallback;
  const std::string value = get_string(obj, path, key, "");
  std::string choices;
  for (const auto& [name, e] : names) {
    if (value == name) return e;
    choices += choices.empty() ? name : fmt::format(", {}", name);
  }
  fail(path + "/" + key, fmt::format("unknown value '{}' (expected one of: {})", value, choices));
}

void set_env_name(EnvironmentConfig& env, const std::string& name, const std::string& path) {
  if (name == "riverswim") {
    env.kind = EnvKind::kRiverSwim;
    env.riverswim.homogeneous = true;
  } else if (name == "riverswim-inhomogeneous" || name == "riverswim_inhomogeneous") {
    env.kind = EnvKind::kRiverSwim;
    env.riverswim.homogeneous = false;
  } else if (name == "hard-instance" || name == "hard_instance") {
    env.kind = EnvKind::kHardInstance;
  } else {
    fail(path, fmt::format("unknown environment '{}' (expected riverswim, "
                           "riverswim-inhomogeneous or hard-instance)",
                           name));
  }
}

EnvironmentConfig parse_environment(const json& obj) {
  const std::string path = "/environment";
  check_keys(obj, path,
             {"name", "states", "homogeneous", "p", "env_seed", "feature_scaling",
              "resample_per_seed", "dim", "horizon", "epsilon", "episodes", "random_signs",
              "sign_seed"});
  EnvironmentConfig env;
  set_env_name(env, get_string(obj, path, "name", "riverswim"), path + "/name");
  auto& rs = env.riverswim;
  rs.num_states = get_int(obj, path, "states", rs.num_states);
  rs.homogeneous = get_bool(obj, path, "homogeneous", rs.homogeneous);
  rs.p = get_double(obj, path, "p", rs.p);
  rs.env_seed = get_u64(obj, path, "env_seed", rs.env_seed);
  rs.scaling = get_enum(obj, path, "feature_scaling", rs.scaling,
                        {{"normalized", FeatureScaling::kNormalized},
                         {"unit", FeatureScaling::kUnit}});
  env.resample_per_seed = get_bool(obj, path, "resample_per_seed", false);
  env.hard_dim = get_int(obj, path, "dim", env.hard_dim);
  env.hard_horizon = get_int(obj, path, "horizon", env.hard_horizon);
  env.hard_epsilon = get_double(obj, path, "epsilon", env.hard_epsilon);
  env.hard_episodes = get_int(obj, path, "episodes", env.hard_episodes);
  env.hard_random_signs = get_bool(obj, path, "random_signs", false);
  env.hard_sign_seed = get_u64(obj, path, "sign_seed", 0);
  return env;
}

AlgorithmSpec parse_algorithm(const json& obj, const std::string& path) {
  check_keys(obj, path, {"type", "epsilons", "c", "c_grid"});
  AlgorithmSpec a;
  a.kind = get_enum(obj, path, "type", AlgorithmKind::kLdp,
                    {{"ldp", AlgorithmKind::kLdp}, {"baseline", AlgorithmKind::kBaseline}});
  if (!obj.contains("type")) fail(path + "/type", "missing (ldp or baseline)");
  a.epsilons = get_doubles(obj, path, "epsilons");
  if (a.kind == AlgorithmKind::kBaseline && !a.epsilons.empty()) {
    fail(path + "/epsilons", "baseline entries take no epsilons");
  }
  a.c = get_double(obj, path, "c", a.c);
  a.c_grid = get_doubles(obj, path, "c_grid");
  return a;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, "",
             {"environment", "algorithms", "episodes", "runs", "base_seed", "delta", "alpha",
              "lambda", "sigma_mode", "sigma", "beta_mode", "shift_mode", "r",
              "pilot_episodes", "pilot_runs", "parallel", "output", "journal_dir"});
  ExperimentConfig c;
  if (doc.contains("environment")) c.env = parse_environment(doc.at("environment"));
  if (doc.contains("algorithms")) {
    const json& algs = doc.at("algorithms");
    if (!algs.is_array()) fail("/algorithms", "expected an array");
    for (std::size_t i = 0; i < algs.size(); ++i) {
      c.algorithms.push_back(parse_algorithm(algs[i], fmt::format("/algorithms/{}", i)));
    }
  }
  c.episodes = get_int(doc, "", "episodes", c.episodes);
  c.runs = get_int(doc, "", "runs", c.runs);
  c.base_seed = get_u64(doc, "", "base_seed", c.base_seed);
  c.delta = get_double(doc, "", "delta", c.delta);
  c.alpha = get_double(doc, "", "alpha", c.alpha);
  c.lambda = get_double(doc, "", "lambda", c.lambda);
  c.sigma_mode = get_enum(doc, "", "sigma_mode", c.sigma_mode,
                          {{"theory", SigmaMode::kTheory},
                           {"experimental", SigmaMode::kExperimental},
                           {"fixed", SigmaMode::kFixed}});
  c.sigma_fixed = get_double(doc, "", "sigma", c.sigma_fixed);
  c.beta_mode = get_enum(doc, "", "beta_mode", c.beta_mode,
                         {{"theorem", BetaMode::kTheorem},
                          {"experimental", BetaMode::kExperimental},
                          {"baseline", BetaMode::kBaseline}});
  c.shift_mode = get_enum(doc, "", "shift_mode", c.shift_mode,
                          {{"gamma", ShiftMode::kGammaSchedule},
                           {"fixed", ShiftMode::kFixed}});
  c.r_fixed = get_double(doc, "", "r", c.r_fixed);
  c.pilot_episodes = get_int(doc, "", "pilot_episodes", c.pilot_episodes);
  c.pilot_runs = get_int(doc, "", "pilot_runs", c.pilot_runs);
  c.parallel = get_int(doc, "", "parallel", c.parallel);
  c.output = get_string(doc, "", "output", c.output);
  c.journal_dir = get_string(doc, "", "journal_dir", c.journal_dir);
  c.validate();
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() already carries "line L, column C".
    throw ConfigError(fmt::format("syntax error: {}", e.what()));
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

json to_json(const ExperimentConfig& c) {
  json env;
  if (c.env.kind == EnvKind::kRiverSwim) {
    const auto& rs = c.env.riverswim;
    env = {{"name", rs.homogeneous ? "riverswim" : "riverswim-inhomogeneous"},
           {"states", rs.num_states},
           {"p", rs.p},
           {"env_seed", rs.env_seed},
           {"feature_scaling",
            rs.scaling == FeatureScaling::kNormalized ? "normalized" : "unit"},
           {"resample_per_seed", c.env.resample_per_seed}};
  } else {
    env = {{"name", "hard-instance"},
           {"dim", c.env.hard_dim},
           {"horizon", c.env.hard_horizon},
           {"epsilon", c.env.hard_epsilon},
           {"episodes", c.env.hard_episodes},
           {"random_signs", c.env.hard_random_signs},
           {"sign_seed", c.env.hard_sign_seed},
           {"resample_per_seed", c.env.resample_per_seed}};
  }
  json algs = json::array();
  for (const auto& a : c.algorithms) {
    json j = {{"type", a.kind == AlgorithmKind::kLdp ? "ldp" : "baseline"}, {"c", a.c}};
    if (a.kind == AlgorithmKind::kLdp) j["epsilons"] = a.epsilons;
    if (!a.c_grid.empty()) j["c_grid"] = a.c_grid;
    algs.push_back(std::move(j));
  }
  auto sigma_name = [](SigmaMode m) {
    return m == SigmaMode::kTheory ? "theory" : m == SigmaMode::kFixed ? "fixed" : "experimental";
  };
  auto beta_name = [](BetaMode m) {
    return m == BetaMode::kTheorem ? "theorem" : m == BetaMode::kBaseline ? "baseline"
                                                                          : "experimental";
  };
  return {{"environment", env},
          {"algorithms", algs},
          {"episodes", c.episodes},
          {"runs", c.runs},
          {"base_seed", c.base_seed},
          {"delta", c.delta},
          {"alpha", c.alpha},
          {"lambda", c.lambda},
          {"sigma_mode", sigma_name(c.sigma_mode)},
          {"sigma", c.sigma_fixed},
          {"beta_mode", beta_name(c.beta_mode)},
          {"shift_mode", c.shift_mode == ShiftMode::kFixed ? "fixed" : "gamma"},
          {"r", c.r_fixed},
          {"pilot_episodes", c.pilot_episodes},
          {"pilot_runs", c.pilot_runs},
          {"parallel", c.parallel},
          {"output", c.output},
          {"journal_dir", c.journal_dir}};
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& o) {
  if (o.out) config.output = *o.out;
  if (o.seeds) config.runs = *o.seeds;
  if (o.base_seed) config.base_seed = *o.base_seed;
  if (o.episodes) config.episodes = *o.episodes;
  if (o.parallel) config.parallel = *o.parallel;
  if (o.env) set_env_name(config.env, *o.env, "--env");
  if (o.epsilons) {
    for (auto& a : config.algorithms) {
      if (a.kind == AlgorithmKind::kLdp) a.epsilons = *o.epsilons;
    }
  }
  config.validate();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw ConfigError(fmt::format("bad number '{}' in list '{}'", item, text));
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(fmt::format("empty list '{}'", text));
  return out;
}

}  // namespace ldp_rl
