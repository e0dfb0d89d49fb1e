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

#include "ldp_rl/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include "ldp_rl/errors.hpp"
#include "ldp_rl/journal.hpp"
#include "ldp_rl/privacy.hpp"

namespace ldp_rl {

std::string_view algorithm_label(AlgorithmKind kind) {
  return kind == AlgorithmKind::kBaseline ? "UCRL-VTR" : "LDP-UCRL-VTR";
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(fmt::format("{}: {}", field, why));
  };
  if (episodes < 1) fail("episodes", "must be >= 1");
  if (runs < 1) fail("runs", "must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta", "must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
  if (!(lambda > 0.0)) fail("lambda", "must be > 0");
  if (!(sigma_fixed >= 0.0)) fail("sigma", "must be >= 0");
  if (!(r_fixed >= 0.0)) fail("r", "must be >= 0");
  if (pilot_episodes < 0) fail("pilot_episodes", "must be >= 0");
  if (pilot_runs < 1) fail("pilot_runs", "must be >= 1");
  if (parallel < 0) fail("parallel", "must be >= 0");
  if (algorithms.empty()) fail("algorithms", "at least one algorithm is required");
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    const auto& a = algorithms[i];
    const std::string field = fmt::format("algorithms[{}]", i);
    if (a.kind == AlgorithmKind::kLdp && a.epsilons.empty()) {
      fail(field + ".epsilons", "LDP entries need at least one epsilon");
    }
    for (double e : a.epsilons) {
      if (!(e > 0.0)) fail(field + ".epsilons", fmt::format("epsilon must be > 0, got {}", e));
    }
    if (!(a.c >= 0.0)) fail(field + ".c", "must be >= 0");
    for (double c : a.c_grid) {
      if (!(c >= 0.0)) fail(field + ".c_grid", fmt::format("grid values must be >= 0, got {}", c));
    }
  }
  if (env.kind == EnvKind::kRiverSwim) {
    if (env.riverswim.num_states < 2) fail("environment.states", "must be >= 2");
    if (!(env.riverswim.p > 0.0 && env.riverswim.p <= 1.0)) {
      fail("environment.p", "must lie in (0, 1]");
    }
  }
}

LinearMixtureEnv build_environment(const EnvironmentConfig& env, int episodes,
                                   int seed_index) {
  if (env.kind == EnvKind::kRiverSwim) {
    RiverSwimSpec spec = env.riverswim;
    if (env.resample_per_seed) {
      spec.env_seed = derive_seed({spec.env_seed, static_cast<std::uint64_t>(seed_index)});
    }
    return make_riverswim(spec);
  }
  const int K = env.hard_episodes > 0 ? env.hard_episodes : episodes;
  std::uint64_t sign_seed = env.hard_sign_seed;
  if (env.resample_per_seed) {
    sign_seed = derive_seed({sign_seed, static_cast<std::uint64_t>(seed_index)});
  }
  return make_hard_instance(make_hard_instance_spec(env.hard_dim, env.hard_horizon, K,
                                                    env.hard_epsilon, env.hard_random_signs,
                                                    sign_seed));
}

std::string cell_label(const Cell& cell) {
  if (!cell.epsilon) return std::string(algorithm_label(cell.kind));
  return fmt::format("{} eps={}", algorithm_label(cell.kind), *cell.epsilon);
}

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (const auto& a : config.algorithms) {
    if (a.kind == AlgorithmKind::kBaseline) {
      cells.push_back({a.kind, std::nullopt, a.c});
    } else {
      for (double e : a.epsilons) cells.push_back({a.kind, e, a.c});
    }
  }
  return cells;
}

AgentConfig agent_config(const ExperimentConfig& config, const Cell& cell) {
  AgentConfig cfg;
  cfg.epsilon = cell.epsilon.value_or(1.0);
  cfg.delta = config.delta;
  cfg.alpha = config.alpha;
  cfg.lambda = config.lambda;
  cfg.c = cell.c;
  cfg.beta_mode =
      cell.kind == AlgorithmKind::kBaseline ? BetaMode::kBaseline : config.beta_mode;
  cfg.sigma_mode = config.sigma_mode;
  cfg.sigma_fixed = config.sigma_fixed;
  cfg.episodes = config.episodes;
  return cfg;
}

namespace {

std::uint64_t noise_seed(const ExperimentConfig& config, const Cell& cell, int seed,
                         int episode) {
  const std::uint64_t eps_bits =
      cell.epsilon ? std::bit_cast<std::uint64_t>(*cell.epsilon) : 0;
  return derive_seed({config.base_seed, kNoiseStream, static_cast<std::uint64_t>(cell.kind),
                      eps_bits, static_cast<std::uint64_t>(seed),
                      static_cast<std::uint64_t>(episode)});
}

std::uint64_t transition_seed(const ExperimentConfig& config, int seed, int episode) {
  return derive_seed({config.base_seed, kTransitionStream, static_cast<std::uint64_t>(seed),
                      static_cast<std::uint64_t>(episode)});
}

}  // namespace

CellRun run_cell(const ExperimentConfig& config, const Cell& cell, int seed) {
  CellRun out{cell, seed, {}, {}, 0};
  try {
    const LinearMixtureEnv env = build_environment(config.env, config.episodes, seed);
    const int H = env.horizon(), s0 = env.initial_state();
    const double v_star = optimal_values(env).v(0, s0);
    const AgentConfig acfg = agent_config(config, cell);
    const BonusFn bonus = make_bonus(acfg, env);
    const bool private_cell = cell.kind == AlgorithmKind::kLdp;
    const double sigma = private_cell ? noise_sigma(acfg, H) : 0.0;
    ServerState state =
        private_cell ? init_server(env.dim(), H, config.lambda,
                                   ShiftConfig{config.shift_mode, config.r_fixed, sigma,
                                               config.alpha})
                     : init_baseline(env, config.lambda);

    std::ofstream journal;
    if (private_cell && !config.journal_dir.empty()) {
      std::filesystem::create_directories(config.journal_dir);
      const auto path = std::filesystem::path(config.journal_dir) /
                        fmt::format("{}_eps{}_seed{}.journal", algorithm_label(cell.kind),
                                    *cell.epsilon, seed);
      journal.open(path);
      if (!journal) throw std::runtime_error("cannot open journal " + path.string());
    }

    const std::string label(algorithm_label(cell.kind));
    out.records.reserve(config.episodes);
    double cumulative = 0.0;
    for (int k = 1; k <= config.episodes; ++k) {
      Rng env_rng(transition_seed(config, seed, k));
      std::optional<EpisodePlan> plan;
      if (private_cell) {
        const ServerBroadcast b = broadcast(state);
        out.shift_repairs += b.repairs;
        Rng noise_rng(noise_seed(config, cell, seed, k));
        LdpEpisode ep = run_episode_ldp(env, b, bonus, sigma, k, env_rng, noise_rng);
        if (journal.is_open()) write_journal_entry(journal, k, ep.payload);
        aggregate(state, ep.payload);
        plan = std::move(ep.plan);
      } else {
        plan = std::move(run_episode_baseline(env, state, bonus, k, env_rng).plan);
      }
      const double v_pi = policy_value(env, greedy_policy(plan->q))(0, s0);
      const double regret = v_star - v_pi;
      if (regret < -1e-9) {
        throw std::logic_error(
            fmt::format("negative regret {} at episode {}: V* is not optimal", regret, k));
      }
      cumulative += regret;
      out.records.push_back({label, cell.epsilon, seed, k, regret, cumulative});
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    spdlog::error("cell {} seed {} failed: {}", cell_label(cell), seed, out.error);
  }
  return out;
}

std::vector<CellRun> run_cells(const ExperimentConfig& config, std::span<const Cell> cells,
                               Execution exec) {
  const int runs = config.runs;
  const int tasks = static_cast<int>(cells.size()) * runs;
  std::vector<CellRun> results(tasks);
  if (exec == Execution::kParallel) {
    const int threads = config.parallel > 0 ? config.parallel : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int t = 0; t < tasks; ++t) {
      results[t] = run_cell(config, cells[t / runs], t % runs);
    }
  } else {
    for (int t = 0; t < tasks; ++t) {
      results[t] = run_cell(config, cells[t / runs], t % runs);
    }
  }
  return results;
}

std::vector<CellRun> run_experiment(const ExperimentConfig& config, Execution exec) {
  config.validate();
  const auto cells = expand_cells(config);
  return run_cells(config, cells, exec);
}

std::vector<RegretRecord> flatten_records(const std::vector<CellRun>& runs) {
  std::vector<RegretRecord> out;
  for (const auto& r : runs) out.insert(out.end(), r.records.begin(), r.records.end());
  return out;
}

std::vector<TunedCell> tune_c(const ExperimentConfig& config, Execution exec) {
  config.validate();
  ExperimentConfig pilot = config;
  pilot.episodes =
      config.pilot_episodes > 0 ? config.pilot_episodes : std::max(1, config.episodes / 10);
  pilot.runs = config.pilot_runs;
  pilot.base_seed = derive_seed({config.base_seed, kPilotStream});
  pilot.journal_dir.clear();

  std::vector<TunedCell> tuned;
  std::vector<std::vector<double>> grids;
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    const auto& a = config.algorithms[i];
    std::vector<double> grid = a.c_grid.empty() ? std::vector<double>{a.c} : a.c_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<std::optional<double>> eps;
    if (a.kind == AlgorithmKind::kBaseline) {
      eps.push_back(std::nullopt);
    } else {
      eps.assign(a.epsilons.begin(), a.epsilons.end());
    }
    for (const auto& e : eps) {
      tuned.push_back({static_cast<int>(i), Cell{a.kind, e, grid.front()}, {}});
      grids.push_back(grid);
      for (double c : grid) cells.push_back({a.kind, e, c});
    }
  }

  const auto results = run_cells(pilot, cells, exec);
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < tuned.size(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : grids[t]) {
      double total = 0.0;
      bool failed = false;
      for (int s = 0; s < pilot.runs; ++s) {
        const CellRun& run = results[cursor * pilot.runs + s];
        if (!run.ok() || run.records.empty()) {
          failed = true;
        } else {
          total += run.records.back().cumulative_regret;
        }
      }
      ++cursor;
      const double score =
          failed ? std::numeric_limits<double>::infinity() : total / pilot.runs;
      tuned[t].scores.emplace_back(c, score);
      if (score < best) {
        best = score;
        tuned[t].cell.c = c;
      }
    }
    spdlog::info("tuned {}: c = {} (pilot mean final regret {})", cell_label(tuned[t].cell),
                 tuned[t].cell.c, best);
  }
  return tuned;
}

ExperimentConfig resolve_tuning(const ExperimentConfig& config,
                                const std::vector<TunedCell>& tuned) {
  ExperimentConfig out = config;
  out.algorithms.clear();
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    const auto& a = config.algorithms[i];
    if (a.c_grid.empty()) {
      out.algorithms.push_back(a);
      continue;
    }
    for (const auto& t : tuned) {
      if (t.algorithm_index != static_cast<int>(i)) continue;
      AlgorithmSpec resolved{a.kind, {}, t.cell.c, {}};
      if (t.cell.epsilon) resolved.epsilons.push_back(*t.cell.epsilon);
      out.algorithms.push_back(std::move(resolved));
    }
  }
  return out;
}

std::vector<SummaryRow> summarize(std::span<const RegretRecord> records) {
  struct Group {
    std::string algorithm;
    std::optional<double> epsilon;
    std::map<int, std::vector<double>> by_episode;
  };
  std::vector<Group> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.algorithm == r.algorithm && g.epsilon == r.epsilon;
    });
    if (it == groups.end()) {
      groups.push_back({r.algorithm, r.epsilon, {}});
      it = std::prev(groups.end());
    }
    it->by_episode[r.episode].push_back(r.cumulative_regret);
  }
  std::vector<SummaryRow> rows;
  bool warned = false;
  for (const auto& g : groups) {
    for (const auto& [episode, values] : g.by_episode) {
      const double n = static_cast<double>(values.size());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= n;
      double sd = 0.0;
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        sd = std::sqrt(ss / (n - 1.0));
      } else if (!warned) {
        spdlog::warn("{}: only one seed, reporting zero standard deviation", g.algorithm);
        warned = true;
      }
      rows.push_back({g.algorithm, g.epsilon, episode, mean, sd,
                      static_cast<int>(values.size())});
    }
  }
  return rows;
}

}  // namespace ldp_rl
