// Copyright 2026 The STAEB Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "staeb/bench.hpp"
#include "staeb/core.hpp"
#include "staeb/instance_io.hpp"

namespace {

using staeb::Algo;
using staeb::GenConfig;
using staeb::Instance;
using staeb::OracleLimits;
using staeb::RunFlags;
using staeb::SweepAxis;
using staeb::SweepSpec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

void add_gen_options(CLI::App* cmd, GenConfig& cfg) {
  cmd->add_option("--tasks", cfg.num_tasks, "number of tasks");
  cmd->add_option("--workers", cfg.num_workers, "number of workers");
  cmd->add_option("--skills", cfg.num_skills, "catalog size");
  cmd->add_option("--radius", cfg.fixed_radius, "fixed range constraint r (m)");
  cmd->add_option("--budget-min", cfg.budget_min, "extra budget lower bound (m)");
  cmd->add_option("--budget-max", cfg.budget_max, "extra budget upper bound (m)");
  cmd->add_option("--fee-min", cfg.fee_min, "skill fee lower bound");
  cmd->add_option("--fee-max", cfg.fee_max, "skill fee upper bound");
  cmd->add_option("--task-skills-min", cfg.task_skills_min,
                  "min skills per task");
  cmd->add_option("--task-skills-max", cfg.task_skills_max,
                  "max skills per task");
  cmd->add_option("--worker-skills-min", cfg.worker_skills_min,
                  "min skills per worker");
  cmd->add_option("--worker-skills-max", cfg.worker_skills_max,
                  "max skills per worker");
  cmd->add_option("--alpha", cfg.alpha, "platform income share, in (0,1)");
  cmd->add_option("--beta", cfg.beta, "subsidy rate per meter, in (0,1)");
  cmd->add_option("--money-scale", cfg.money_scale,
                  "integer money grid multiplier d");
  cmd->add_option("--box", [&cfg](const std::vector<std::string>& vals) {
        if (vals.size() != 4) return false;
        try {
          cfg.box = {{std::stod(vals[0]), std::stod(vals[1])},
                     {std::stod(vals[2]), std::stod(vals[3])}};
        } catch (const std::exception&) {
          return false;
        }
        return true;
      },
      "bounding box: min_x min_y max_x max_y")
      ->expected(4);
}

OracleLimits parse_oracle_limits(const std::string& text) {
  OracleLimits limits;
  if (text.empty()) return limits;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw staeb::SchemaError("--oracle-limits: expected key=value, got '" +
                               item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "tasks") {
      limits.max_tasks = std::stoi(value);
    } else if (key == "workers") {
      limits.max_workers = std::stoi(value);
    } else if (key == "sets") {
      limits.max_valid_sets_per_task = std::stoi(value);
    } else if (key == "seconds") {
      limits.time_budget_seconds = std::stod(value);
    } else {
      throw staeb::SchemaError("--oracle-limits: unknown key '" + key + "'");
    }
  }
  return limits;
}

double parse_batch_window(const std::string& text) {
  if (text == "off" || text.empty()) return 0.0;
  const double seconds = std::stod(text);
  if (!(seconds > 0.0)) {
    throw staeb::SchemaError("--batch-window: expected a positive number or 'off'");
  }
  return seconds;
}

// Appends rows to a CSV file, writing the versioned header only when the
// file is new or empty.
void append_rows(const std::string& path, const std::vector<staeb::RunRow>& rows,
                 std::int64_t money_scale) {
  namespace fs = std::filesystem;
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw staeb::SchemaError("cannot open '" + path + "' for append");
  if (fresh) out << staeb::csv_header();
  for (const auto& row : rows) out << staeb::csv_row(row, money_scale);
}

std::vector<Algo> parse_algos(const std::string& text) {
  std::vector<Algo> algos;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto algo = staeb::algo_from_string(item);
    if (!algo) throw staeb::SchemaError("unknown algorithm '" + item + "'");
    algos.push_back(*algo);
  }
  if (algos.empty()) throw staeb::SchemaError("no algorithms given");
  return algos;
}

std::vector<double> table_axis_values(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTasks:
      return {800, 900, 1000, 1100, 1200};
    case SweepAxis::kWorkers:
      return {2400, 2700, 3000, 3300, 3600};
    case SweepAxis::kSkills:
      return {10, 11, 12, 13, 14};
    case SweepAxis::kFixedRadius:
      return {600, 800, 1000, 1200, 1400};
    case SweepAxis::kExtraBudget:
      return {400, 600, 800, 1000, 1200};
  }
  return {};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"STAEB: skilled task assignment with extra budget"};
  app.require_subcommand(1);

  // --- gen ---
  GenConfig gen_cfg;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  add_gen_options(gen, gen_cfg);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output instance path")->required();

  // --- solve ---
  GenConfig solve_cfg;
  std::string solve_instance;
  std::string solve_algo = "ebgt";
  std::uint64_t solve_seed = 1;
  std::string solve_out;
  std::string solve_dump;
  std::string solve_batch = "off";
  std::string solve_limits;
  bool solve_certify = false;
  int solve_threads = 1;
  CLI::App* solve = app.add_subcommand("solve", "run one solver on one instance");
  add_gen_options(solve, solve_cfg);
  solve->add_option("--instance", solve_instance,
                    "instance file (otherwise generated from the gen flags)");
  solve->add_option("--algo", solve_algo, "random|greedy|ebgt|exact");
  solve->add_option("--seed", solve_seed,
                    "instance seed when generating; RNG seed for --algo random");
  solve->add_option("--out", solve_out, "append the result row to this CSV");
  solve->add_option("--dump-matching", solve_dump,
                    "write the matching to this JSON file");
  solve->add_option("--batch-window", solve_batch,
                    "batch window in seconds, or 'off'");
  solve->add_option("--oracle-limits", solve_limits,
                    "tasks=N,workers=N,sets=N,seconds=X");
  solve->add_flag("--certify-nash", solve_certify,
                  "run the exhaustive deviation scan on the output");
  solve->add_option("--threads", solve_threads,
                    "threads for move evaluation (0 = OpenMP default)");

  // --- sweep ---
  GenConfig sweep_cfg = staeb::desk_base_config();
  std::string sweep_axis = "tasks";
  std::vector<double> sweep_values;
  int sweep_seeds = 30;
  std::uint64_t sweep_seed_base = 1;
  std::string sweep_algos = "random,greedy,ebgt";
  std::string sweep_out;
  std::string sweep_limits;
  bool sweep_desk = false;
  bool sweep_paper = false;
  bool sweep_certify = false;
  int sweep_jobs = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep to CSV");
  add_gen_options(sweep, sweep_cfg);
  sweep->add_option("--axis", sweep_axis,
                    "tasks|workers|skills|fixed_radius|extra_budget");
  sweep->add_option("--values", sweep_values, "axis values");
  sweep->add_option("--seeds", sweep_seeds, "number of seeds per cell");
  sweep->add_option("--seed-base", sweep_seed_base, "first seed");
  sweep->add_option("--algos", sweep_algos, "comma list of algorithms");
  sweep->add_option("--out", sweep_out, "output CSV path")->required();
  sweep->add_option("--oracle-limits", sweep_limits,
                    "tasks=N,workers=N,sets=N,seconds=X");
  sweep->add_flag("--desk", sweep_desk,
                  "desk-scale preset: tasks {8,16,24} and workers {24,48,72}");
  sweep->add_flag("--paper", sweep_paper,
                  "benchmark-grid preset for the chosen axis");
  sweep->add_flag("--certify-nash", sweep_certify);
  sweep->add_option("--jobs", sweep_jobs, "concurrent sweep cells");

  // --- ingest ---
  GenConfig ingest_cfg;
  std::string ingest_trips;
  std::string ingest_out;
  std::uint64_t ingest_seed = 1;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "build an instance from a trip log (pickup = task, dropoff = worker)");
  add_gen_options(ingest, ingest_cfg);
  ingest->add_option("--trips", ingest_trips, "trip CSV path")->required();
  ingest->add_option("--out", ingest_out, "output instance path")->required();
  ingest->add_option("--seed", ingest_seed, "seed for synthesized skills/fees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) {
    gen_cfg.seed = gen_seed;
    const Instance instance = staeb::generate_instance(gen_cfg);
    staeb::save_instance(instance, gen_out);
    std::cout << "wrote " << gen_out << " (" << instance.tasks.size()
              << " tasks, " << instance.workers.size() << " workers)\n";
    return kExitOk;
  }

  if (solve->parsed()) {
    Instance instance;
    if (!solve_instance.empty()) {
      staeb::LoadedInstance loaded = staeb::load_instance(solve_instance);
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
      instance = std::move(loaded.instance);
    } else {
      solve_cfg.seed = solve_seed;
      instance = staeb::generate_instance(solve_cfg);
    }
    const auto algo = staeb::algo_from_string(solve_algo);
    if (!algo) throw staeb::SchemaError("unknown algorithm '" + solve_algo + "'");

    RunFlags flags;
    flags.certify_nash = solve_certify;
    flags.batch_window_seconds = parse_batch_window(solve_batch);
    flags.threads = solve_threads;
    flags.oracle_limits = parse_oracle_limits(solve_limits);

    staeb::RunOutcome outcome = run_once(instance, *algo, solve_seed, flags);
    std::cout << staeb::csv_header()
              << staeb::csv_row(outcome.row, instance.params.money_scale);
    if (!solve_out.empty()) {
      append_rows(solve_out, {outcome.row}, instance.params.money_scale);
    }
    if (!solve_dump.empty()) {
      staeb::save_matching(outcome.matching, outcome.row.revenue, solve_dump);
    }
    return kExitOk;
  }

  if (sweep->parsed()) {
    std::vector<SweepSpec> specs;
    if (sweep_desk) {
      specs = staeb::desk_sweeps(parse_algos(sweep_algos), sweep_jobs);
      for (auto& spec : specs) {
        spec.flags.certify_nash = sweep_certify;
        spec.flags.oracle_limits = parse_oracle_limits(sweep_limits);
      }
    } else {
      SweepSpec spec;
      const auto axis = staeb::axis_from_string(sweep_axis);
      if (!axis) throw staeb::SchemaError("unknown axis '" + sweep_axis + "'");
      spec.axis = *axis;
      if (sweep_paper) sweep_cfg = GenConfig{};  // benchmark-grid defaults
      spec.base = sweep_cfg;
      spec.values = sweep_values.empty() && sweep_paper
                        ? table_axis_values(*axis)
                        : sweep_values;
      for (int s = 0; s < sweep_seeds; ++s) {
        spec.seeds.push_back(sweep_seed_base + static_cast<std::uint64_t>(s));
      }
      spec.algos = parse_algos(sweep_algos);
      spec.flags.certify_nash = sweep_certify;
      spec.flags.oracle_limits = parse_oracle_limits(sweep_limits);
      spec.run_threads = sweep_jobs;
      specs.push_back(std::move(spec));
    }

    for (const auto& spec : specs) {
      staeb::SweepResult result = run_sweep(spec, nullptr);
      append_rows(sweep_out, result.rows, spec.base.money_scale);
      std::cout << staeb::sweep_summary(spec, result.rows);
    }
    std::cout << "wrote " << sweep_out << "\n";
    return kExitOk;
  }

  if (ingest->parsed()) {
    std::ifstream trips(ingest_trips, std::ios::binary);
    if (!trips) throw staeb::SchemaError("cannot open '" + ingest_trips + "'");
    ingest_cfg.seed = ingest_seed;
    staeb::IngestResult result = staeb::ingest_trips(trips, ingest_cfg);
    if (result.skipped_rows > 0) {
      std::cerr << "warning: skipped " << result.skipped_rows
                << " malformed rows\n";
    }
    staeb::save_instance(result.instance, ingest_out);
    std::cout << "wrote " << ingest_out << " ("
              << result.instance.tasks.size() << " tasks, "
              << result.instance.workers.size() << " workers)\n";
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
