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

// ldp-rl: experiment driver for LDP-UCRL-VTR and UCRL-VTR.

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "ldp_rl/config.hpp"
#include "ldp_rl/csv.hpp"
#include "ldp_rl/errors.hpp"
#include "ldp_rl/harness.hpp"
#include "ldp_rl/logging.hpp"
#include "ldp_rl/mdp.hpp"
#include "ldp_rl/privacy.hpp"

namespace {

using namespace ldp_rl;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config_path;
  std::string out;
  std::optional<int> seeds;
  std::optional<std::uint64_t> base_seed;
  std::string epsilons;
  std::optional<int> episodes;
  std::string env;
  std::optional<int> parallel;
};

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.algorithms = {AlgorithmSpec{AlgorithmKind::kBaseline, {}, 1.0, {}},
                  AlgorithmSpec{AlgorithmKind::kLdp, {1.0, 10.0}, 1.0, {}}};
  return c;
}

ExperimentConfig resolve_config(const Flags& f) {
  ExperimentConfig config = f.config_path.empty() ? default_config() : load_config(f.config_path);
  ConfigOverrides o;
  if (!f.out.empty()) o.out = f.out;
  o.seeds = f.seeds;
  o.base_seed = f.base_seed;
  if (!f.epsilons.empty()) o.epsilons = parse_double_list(f.epsilons);
  o.episodes = f.episodes;
  if (!f.env.empty()) o.env = f.env;
  o.parallel = f.parallel;
  apply_overrides(config, o);
  return config;
}

std::vector<std::string> config_comments(const ExperimentConfig& config) {
  std::vector<std::string> lines;
  const nlohmann::json doc = to_json(config);
  for (const auto& [key, value] : doc.items()) {
    lines.push_back(fmt::format("{}: {}", key, value.dump()));
  }
  return lines;
}

bool has_grid(const ExperimentConfig& config) {
  for (const auto& a : config.algorithms) {
    if (!a.c_grid.empty()) return true;
  }
  return false;
}

void print_tuning(std::ostream& out, const std::vector<TunedCell>& tuned) {
  for (const auto& t : tuned) {
    out << fmt::format("{}: c = {}\n", cell_label(t.cell), t.cell.c);
    for (const auto& [c, score] : t.scores) {
      out << fmt::format("  c {:<8} mean final regret {:.6g}\n", c, score);
    }
  }
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot open output file '{}'", path));
  fn(out);
  if (!out) throw ConfigError(fmt::format("write to '{}' failed", path));
}

int cmd_run(const Flags& f) {
  ExperimentConfig config = resolve_config(f);
  if (has_grid(config)) {
    const auto tuned = tune_c(config);
    print_tuning(std::cerr, tuned);
    config = resolve_tuning(config, tuned);
  }
  const auto runs = run_experiment(config);
  int failed = 0;
  for (const auto& r : runs) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "cell " << cell_label(r.cell) << " seed " << r.seed << " failed: " << r.error
                << '\n';
    }
  }
  const auto records = flatten_records(runs);
  const auto comments = config_comments(config);
  with_output(config.output,
              [&](std::ostream& out) { write_regret_csv(out, comments, records); });
  if (failed > 0) {
    std::cerr << failed << " of " << runs.size() << " runs failed\n";
    return kExitFailure;
  }
  return 0;
}

int cmd_tune(const Flags& f) {
  const ExperimentConfig config = resolve_config(f);
  const auto tuned = tune_c(config);
  print_tuning(std::cout, tuned);
  // The resolved config goes to --out only; config.output names the run CSV.
  if (!f.out.empty()) {
    with_output(f.out, [&](std::ostream& out) {
      out << to_json(resolve_tuning(config, tuned)).dump(2) << '\n';
    });
  }
  return 0;
}

int cmd_validate(const Flags& f, double tol) {
  const ExperimentConfig config = resolve_config(f);
  const LinearMixtureEnv env = build_environment(config.env, config.episodes, 0);
  const ValidationReport report = validate_env(env, tol);
  std::cout << fmt::format("environment: S={} A={} H={} d={}\n", env.num_states(),
                           env.num_actions(), env.horizon(), env.dim());
  for (const auto& c : report.checks) {
    std::cout << fmt::format("{:<28} {}  worst slack {:.3e}{}\n", c.name,
                             c.passed ? "pass" : "FAIL", c.worst_slack,
                             c.partial ? "  (partial)" : "");
  }
  std::cout << (report.all_passed() ? "all checks passed\n" : "validation failed\n");
  return report.all_passed() ? 0 : kExitFailure;
}

int cmd_privacy_check(const Flags& f, std::int64_t samples) {
  const ExperimentConfig config = resolve_config(f);
  const LinearMixtureEnv env = build_environment(config.env, config.episodes, 0);
  const int H = env.horizon();
  bool all_ok = true;
  for (const Cell& cell : expand_cells(config)) {
    if (!cell.epsilon) continue;
    const AgentConfig cfg = agent_config(config, cell);
    const double sigma = noise_sigma(cfg, H);
    if (!(sigma > 0.0)) {
      std::cout << fmt::format("eps {}: sigma = 0, no privacy to check\n", *cell.epsilon);
      all_ok = false;
      continue;
    }
    const double sensitivity =
        sensitivity_bounds(H, cfg.sigma_mode != SigmaMode::kTheory).gram;
    const StageBudget budget = per_stage_budget(cfg.epsilon, cfg.delta, H);
    Rng rng(derive_seed({config.base_seed, 0x70726976ULL, std::bit_cast<std::uint64_t>(cfg.epsilon)}));
    const double est = estimate_privacy_loss(sigma, sensitivity, budget.epsilon, samples, rng);
    const double exact = gaussian_privacy_loss_tail(sigma, sensitivity, budget.epsilon);
    const double tol = 3.0 * std::sqrt(est * (1.0 - est) / static_cast<double>(samples));
    const bool within_budget = est <= budget.delta + tol;
    const bool matches = std::abs(est - exact) <= std::max(tol, 3.0 / samples);
    all_ok = all_ok && within_budget && matches;
    std::cout << fmt::format(
        "eps {} sigma {:.6g} sensitivity {:.6g} stage eps {:.6g} stage delta {:.6g}: "
        "estimate {:.6g} analytic {:.6g} tolerance {:.3g} {}\n",
        *cell.epsilon, sigma, sensitivity, budget.epsilon, budget.delta, est, exact, tol,
        within_budget && matches ? "pass" : "FAIL");
  }
  return all_ok ? 0 : kExitFailure;
}

int cmd_summarize(const std::string& input, const std::string& out_path) {
  std::ifstream in(input);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", input));
  const auto records = read_regret_csv(in);
  const auto rows = summarize(records);
  with_output(out_path, [&](std::ostream& out) { write_summary_csv(out, rows); });
  return 0;
}

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output path (default: config 'output', else stdout)");
  cmd->add_option("--seeds", f.seeds, "number of seeded runs per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--base-seed", f.base_seed, "base seed for every random stream");
  cmd->add_option("--epsilons", f.epsilons, "comma-separated epsilon list for LDP entries");
  cmd->add_option("--episodes", f.episodes, "episodes K")->check(CLI::PositiveNumber);
  cmd->add_option("--env", f.env, "riverswim | riverswim-inhomogeneous | hard-instance");
  cmd->add_option("--parallel", f.parallel, "worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"LDP-UCRL-VTR and UCRL-VTR on linear mixture MDPs"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* run = app.add_subcommand("run", "run the configured sweep and write a regret CSV");
  add_common_flags(run, flags);

  CLI::App* tune =
      app.add_subcommand("tune", "grid-search c with pilot runs; --out writes the resolved config");
  add_common_flags(tune, flags);

  double tol = kDistributionTol;
  CLI::App* validate = app.add_subcommand("validate", "check the environment's invariants");
  add_common_flags(validate, flags);
  validate->add_option("--tol", tol, "distribution tolerance")->check(CLI::PositiveNumber);

  std::int64_t samples = 100000;
  CLI::App* privacy = app.add_subcommand("privacy-check", "Monte-Carlo privacy-loss check");
  add_common_flags(privacy, flags);
  privacy->add_option("--samples", samples, "Monte-Carlo draws (>= 10000)");

  std::string summary_input;
  std::string summary_out;
  CLI::App* summary = app.add_subcommand("summarize", "regret CSV -> summary CSV");
  summary->add_option("input", summary_input, "regret CSV")->required()->check(CLI::ExistingFile);
  summary->add_option("--out", summary_out, "summary CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(flags);
    if (*tune) return cmd_tune(flags);
    if (*validate) return cmd_validate(flags, tol);
    if (*privacy) return cmd_privacy_check(flags, samples);
    if (*summary) return cmd_summarize(summary_input, summary_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
