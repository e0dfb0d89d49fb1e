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

#ifndef LDP_RL_HARNESS_HPP_
#define LDP_RL_HARNESS_HPP_

// Experiment orchestration: sweeps over (algorithm, epsilon, seed) cells,
// exact regret accounting, grid search over the bonus multiplier c, and
// summary statistics.
//
// Random streams. Every episode gets fresh generators:
//   transitions: derive_seed({base_seed, kTransitionStream, seed, episode})
//   noise:       derive_seed({base_seed, kNoiseStream, algorithm, bits(eps), seed, episode})
// The transition stream deliberately omits the algorithm and epsilon, so
// cells sharing a seed index face common random numbers. Pilot runs for c
// tuning use derive_seed({base_seed, kPilotStream}) as their base seed, so
// they never share streams with the evaluation runs.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldp_rl/agent.hpp"
#include "ldp_rl/environments.hpp"
#include "ldp_rl/execution.hpp"
#include "ldp_rl/mdp.hpp"
#include "ldp_rl/server.hpp"

namespace ldp_rl {

inline constexpr std::uint64_t kTransitionStream = 0x7472616e73ULL;
inline constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;
inline constexpr std::uint64_t kPilotStream = 0x70696c6f74ULL;

enum class AlgorithmKind { kBaseline, kLdp };

// "UCRL-VTR" or "LDP-UCRL-VTR".
std::string_view algorithm_label(AlgorithmKind kind);

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kLdp;
  std::vector<double> epsilons;  // LDP only
  double c = 1.0;
  // When nonempty, c is chosen from this grid by pilot runs.
  std::vector<double> c_grid;
};

enum class EnvKind { kRiverSwim, kHardInstance };

struct EnvironmentConfig {
  EnvKind kind = EnvKind::kRiverSwim;
  RiverSwimSpec riverswim;
  // Hard-instance parameters. hard_episodes = 0 uses the experiment's K.
  int hard_dim = 4;
  int hard_horizon = 4;
  double hard_epsilon = 1.0;
  int hard_episodes = 0;
  bool hard_random_signs = false;
  std::uint64_t hard_sign_seed = 0;
  // Redraw the inhomogeneous RiverSwim p_h (or hard-instance signs) per seed.
  bool resample_per_seed = false;
};

struct ExperimentConfig {
  EnvironmentConfig env;
  std::vector<AlgorithmSpec> algorithms;
  int episodes = 10000;
  int runs = 10;
  std::uint64_t base_seed = 0;
  double delta = 0.1;
  double alpha = 0.01;
  double lambda = 1.0;
  SigmaMode sigma_mode = SigmaMode::kExperimental;
  double sigma_fixed = 0.0;
  BetaMode beta_mode = BetaMode::kExperimental;
  ShiftMode shift_mode = ShiftMode::kGammaSchedule;
  double r_fixed = 0.0;
  // Pilot length for c tuning; 0 means max(1, K / 10).
  int pilot_episodes = 0;
  int pilot_runs = 3;
  // Worker threads for the cell sweep; 0 leaves the OpenMP default.
  int parallel = 0;
  std::string output;
  std::string journal_dir;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

LinearMixtureEnv build_environment(const EnvironmentConfig& env, int episodes,
                                   int seed_index);

struct Cell {
  AlgorithmKind kind = AlgorithmKind::kLdp;
  std::optional<double> epsilon;
  double c = 1.0;
};

std::string cell_label(const Cell& cell);

// One cell per baseline entry and per (LDP entry, epsilon), in config order.
std::vector<Cell> expand_cells(const ExperimentConfig& config);

AgentConfig agent_config(const ExperimentConfig& config, const Cell& cell);

struct RegretRecord {
  std::string algorithm;
  std::optional<double> epsilon;
  int seed = 0;
  int episode = 0;  // 1-based
  double per_episode_regret = 0.0;
  double cumulative_regret = 0.0;
};

struct CellRun {
  Cell cell;
  int seed = 0;
  std::vector<RegretRecord> records;
  std::string error;  // empty on success
  int shift_repairs = 0;

  bool ok() const { return error.empty(); }
};

// K episodes of one algorithm on one seed. Failures are captured in
// CellRun::error rather than thrown.
CellRun run_cell(const ExperimentConfig& config, const Cell& cell, int seed);

// Every (cell, seed) pair with seed in [0, config.runs). The parallel path
// distributes pairs over OpenMP threads; results come back in (cell, seed)
// order either way and are identical to the serial reference.
std::vector<CellRun> run_cells(const ExperimentConfig& config, std::span<const Cell> cells,
                               Execution exec = Execution::kParallel);

// Expands cells (using each entry's c) and runs them all.
std::vector<CellRun> run_experiment(const ExperimentConfig& config,
                                    Execution exec = Execution::kParallel);

std::vector<RegretRecord> flatten_records(const std::vector<CellRun>& runs);

struct TunedCell {
  int algorithm_index = 0;  // entry in config.algorithms
  Cell cell;                // with the selected c
  // (c, mean final cumulative regret over pilot runs), in grid order.
  std::vector<std::pair<double, double>> scores;
};

// Grid search over c per (algorithm, epsilon) with pilot runs; the c with
// the smallest mean final cumulative regret wins, ties to the smallest c.
// Entries without a grid are scored on the singleton {c}.
std::vector<TunedCell> tune_c(const ExperimentConfig& config,
                              Execution exec = Execution::kParallel);

// Replaces every gridded entry by one entry per epsilon with its tuned c.
ExperimentConfig resolve_tuning(const ExperimentConfig& config,
                                const std::vector<TunedCell>& tuned);

struct SummaryRow {
  std::string algorithm;
  std::optional<double> epsilon;
  int episode = 0;
  double mean_cumulative_regret = 0.0;
  double std_cumulative_regret = 0.0;  // sample std, n - 1 denominator
  int seeds = 0;
};

// Groups by (algorithm, epsilon) in first-seen order, then by episode.
std::vector<SummaryRow> summarize(std::span<const RegretRecord> records);

}  // namespace ldp_rl

#endif  // LDP_RL_HARNESS_HPP_
