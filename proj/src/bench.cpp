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

#include "staeb/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "staeb/core.hpp"
#include "staeb/feasibility.hpp"
#include "staeb/game.hpp"
#include "staeb/greedy.hpp"

namespace staeb {

const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::kRandom:
      return "random";
    case Algo::kGreedy:
      return "greedy";
    case Algo::kEbgt:
      return "ebgt";
    case Algo::kExact:
      return "exact";
  }
  return "unknown";
}

std::optional<Algo> algo_from_string(const std::string& name) {
  if (name == "random" || name == "ran") return Algo::kRandom;
  if (name == "greedy" || name == "gry") return Algo::kGreedy;
  if (name == "ebgt") return Algo::kEbgt;
  if (name == "exact") return Algo::kExact;
  return std::nullopt;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTasks:
      return "tasks";
    case SweepAxis::kWorkers:
      return "workers";
    case SweepAxis::kSkills:
      return "skills";
    case SweepAxis::kFixedRadius:
      return "fixed_radius";
    case SweepAxis::kExtraBudget:
      return "extra_budget";
  }
  return "unknown";
}

std::optional<SweepAxis> axis_from_string(const std::string& name) {
  if (name == "tasks") return SweepAxis::kTasks;
  if (name == "workers") return SweepAxis::kWorkers;
  if (name == "skills") return SweepAxis::kSkills;
  if (name == "fixed_radius" || name == "radius") return SweepAxis::kFixedRadius;
  if (name == "extra_budget" || name == "budget") return SweepAxis::kExtraBudget;
  return std::nullopt;
}

std::string csv_header() {
  return std::string("# schema=") + kRunRowSchema +
         "\naxis_value,algorithm,seed,revenue,matched_tasks,total_tasks,"
         "rounds,nash_certified,wall_millis,mean_extra_subsidy,served_ratio,"
         "status\n";
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string csv_row(const RunRow& row, std::int64_t money_scale) {
  std::ostringstream out;
  out << row.axis_value << ',' << row.algorithm << ',' << row.seed << ','
      << format_money(row.revenue, money_scale) << ',' << row.matched_tasks
      << ',' << row.total_tasks << ',' << row.rounds << ','
      << (row.nash_certified ? "true" : "false") << ','
      << fixed3(row.wall_millis) << ',' << fixed6(row.mean_extra_subsidy)
      << ',' << fixed6(row.served_ratio) << ',' << row.status << '\n';
  return out.str();
}

namespace {

SolveResult dispatch(const Instance& instance, Algo algo, std::uint64_t seed,
                     const RunFlags& flags) {
  switch (algo) {
    case Algo::kRandom:
      return solve_random(instance, seed);
    case Algo::kGreedy:
      return solve_greedy(instance);
    case Algo::kEbgt: {
      GameConfig cfg;
      cfg.threads = flags.threads;
      return solve_ebgt(instance, cfg);
    }
    case Algo::kExact:
      return solve_exact(instance, flags.oracle_limits);
  }
  throw std::invalid_argument("unknown algorithm");
}

Instance window_slice(const Instance& instance, double begin, double end) {
  Instance window;
  window.catalog = instance.catalog;
  window.params = instance.params;
  window.bounding_box = instance.bounding_box;
  for (const auto& t : instance.tasks) {
    if (t.arrival_time >= begin && t.arrival_time < end) {
      window.tasks.push_back(t);
    }
  }
  for (const auto& w : instance.workers) {
    if (w.arrival_time >= begin && w.arrival_time < end) {
      window.workers.push_back(w);
    }
  }
  return window;
}

// Each window is solved independently; the windows partition tasks and
// workers by arrival time, so the merged pairs are disjoint by
// construction.
SolveResult dispatch_batched(const Instance& instance, Algo algo,
                             std::uint64_t seed, const RunFlags& flags) {
  double horizon = 0.0;
  for (const auto& t : instance.tasks) {
    horizon = std::max(horizon, t.arrival_time);
  }
  for (const auto& w : instance.workers) {
    horizon = std::max(horizon, w.arrival_time);
  }
  const double span = flags.batch_window_seconds;
  SolveResult merged;
  merged.report.algorithm = to_string(algo);
  merged.report.nash_checked = algo == Algo::kEbgt;
  merged.report.nash_certified = algo == Algo::kEbgt;
  merged.report.total_tasks = static_cast<int>(instance.tasks.size());

  std::size_t window_index = 0;
  for (double begin = 0.0; begin <= horizon; begin += span, ++window_index) {
    Instance window = window_slice(instance, begin, begin + span);
    if (window.tasks.empty() && window.workers.empty()) continue;
    SolveResult part = dispatch(window, algo, seed + window_index, flags);
    merged.report.revenue += part.report.revenue;
    merged.report.matched_tasks += part.report.matched_tasks;
    merged.report.rounds += part.report.rounds;
    merged.report.improving_moves += part.report.improving_moves;
    merged.report.wall_millis += part.report.wall_millis;
    merged.report.nash_certified =
        merged.report.nash_certified && part.report.nash_certified;
    for (auto& pair : part.matching.pairs) {
      merged.matching.pairs.push_back(std::move(pair));
    }
  }

  std::set<std::string> assigned;
  for (const auto& pair : merged.matching.pairs) {
    for (const auto& m : pair.members) assigned.insert(m.worker_id);
  }
  for (const auto& w : instance.workers) {
    if (!assigned.contains(w.id)) {
      merged.matching.unassigned_workers.push_back(w.id);
    }
  }
  std::sort(merged.matching.unassigned_workers.begin(),
            merged.matching.unassigned_workers.end());
  merged.report.feasible = validate_matching(merged.matching, instance).ok();
  return merged;
}

}  // namespace

RunOutcome run_once(const Instance& instance, Algo algo, std::uint64_t seed,
                    const RunFlags& flags) {
  RunOutcome outcome;
  RunRow& row = outcome.row;
  row.algorithm = to_string(algo);
  row.seed = seed;
  row.total_tasks = static_cast<int>(instance.tasks.size());

  SolveResult result;
  try {
    result = flags.batch_window_seconds > 0.0
                 ? dispatch_batched(instance, algo, seed, flags)
                 : dispatch(instance, algo, seed, flags);
  } catch (const OracleOverflow&) {
    row.status = "oracle_overflow";
    return outcome;
  }

  // Re-derive the revenue from the matching itself; matching_revenue
  // validates as it sums, so an infeasible matching cannot slip through.
  Money rederived = 0;
  try {
    rederived = matching_revenue(result.matching, instance);
  } catch (const ValidationError& e) {
    throw std::logic_error(std::string("solver emitted an infeasible matching: ") +
                           e.what());
  }
  if (rederived != result.report.revenue) {
    throw std::logic_error("solver revenue accumulator disagrees with "
                           "matching_revenue: " +
                           std::to_string(result.report.revenue) + " vs " +
                           std::to_string(rederived));
  }

  row.revenue = rederived;
  row.matched_tasks = result.report.matched_tasks;
  row.rounds = result.report.rounds;
  row.nash_certified = result.report.nash_certified;
  row.wall_millis = result.report.wall_millis;
  row.served_ratio =
      row.total_tasks > 0
          ? static_cast<double>(row.matched_tasks) / row.total_tasks
          : 0.0;

  long long member_count = 0;
  double subsidy_sum = 0.0;
  for (const auto& pair : result.matching.pairs) {
    for (const auto& m : pair.members) {
      subsidy_sum += instance.params.beta * m.extra_cost;
      ++member_count;
    }
  }
  row.mean_extra_subsidy =
      member_count > 0 ? subsidy_sum / static_cast<double>(member_count) : 0.0;

  if (flags.certify_nash && algo == Algo::kEbgt &&
      flags.batch_window_seconds <= 0.0) {
    const CompiledInstance ci = CompiledInstance::build(instance);
    const GameState state = state_from_matching(ci, result.matching);
    const bool certified = is_nash(state, flags.threads);
    if (result.report.nash_certified && !certified) {
      throw std::logic_error(
          "solver reported Nash but the exhaustive scan found a deviation");
    }
    row.nash_certified = certified;
  }

  outcome.matching = std::move(result.matching);
  outcome.improving_moves = result.report.improving_moves;
  return outcome;
}

std::vector<std::string> sweep_spec_check(const SweepSpec& spec) {
  std::vector<std::string> problems;
  if (spec.values.empty()) problems.push_back("sweep needs axis values");
  if (spec.algos.empty()) problems.push_back("sweep needs algorithms");
  if (spec.seeds.empty()) problems.push_back("sweep needs seeds");
  const auto base_problems = gen_config_check(spec.base);
  problems.insert(problems.end(), base_problems.begin(), base_problems.end());
  return problems;
}

namespace {

GenConfig apply_axis(const GenConfig& base, SweepAxis axis, double value) {
  GenConfig cfg = base;
  switch (axis) {
    case SweepAxis::kTasks:
      cfg.num_tasks = static_cast<int>(value);
      break;
    case SweepAxis::kWorkers:
      cfg.num_workers = static_cast<int>(value);
      break;
    case SweepAxis::kSkills:
      cfg.num_skills = static_cast<int>(value);
      cfg.task_skills_max = std::min(cfg.task_skills_max, cfg.num_skills);
      cfg.worker_skills_max = std::min(cfg.worker_skills_max, cfg.num_skills);
      break;
    case SweepAxis::kFixedRadius:
      cfg.fixed_radius = value;
      break;
    case SweepAxis::kExtraBudget: {
      // The benchmark grid lists budgets as windows of fixed width; the
      // axis value slides the window.
      const double width = base.budget_max - base.budget_min;
      cfg.budget_min = value;
      cfg.budget_max = value + width;
      break;
    }
  }
  return cfg;
}

std::string axis_value_label(SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::kTasks:
    case SweepAxis::kWorkers:
    case SweepAxis::kSkills:
      return std::to_string(static_cast<long long>(value));
    default: {
      std::string label = fixed3(value);
      while (label.back() == '0') label.pop_back();
      if (label.back() == '.') label.pop_back();
      return label;
    }
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, std::ostream* out) {
  {
    const auto problems = sweep_spec_check(spec);
    if (!problems.empty()) {
      std::ostringstream msg;
      msg << "invalid sweep spec:";
      for (const auto& p : problems) msg << "\n  " << p;
      throw std::invalid_argument(msg.str());
    }
  }

  struct RunDesc {
    double value;
    Algo algo;
    std::uint64_t seed;
  };
  std::vector<RunDesc> runs;
  for (double value : spec.values) {
    for (Algo algo : spec.algos) {
      for (std::uint64_t seed : spec.seeds) {
        runs.push_back({value, algo, seed});
      }
    }
  }

  SweepResult result;
  result.rows.resize(runs.size());

  RunFlags run_flags = spec.flags;
  run_flags.threads = 1;  // cells run concurrently, each solve serial

  const auto execute = [&](std::size_t i) {
    const RunDesc& run = runs[i];
    RunRow row;
    row.axis_value = axis_value_label(spec.axis, run.value);
    row.algorithm = to_string(run.algo);
    row.seed = run.seed;
    try {
      GenConfig cfg = apply_axis(spec.base, spec.axis, run.value);
      cfg.seed = run.seed;
      const Instance instance = generate_instance(cfg);
      RunOutcome outcome = run_once(instance, run.algo, run.seed, run_flags);
      row = std::move(outcome.row);
      row.axis_value = axis_value_label(spec.axis, run.value);
    } catch (const std::exception& e) {
      row.status = std::string("error:") + e.what();
    }
    result.rows[i] = std::move(row);
  };

  const long long total = static_cast<long long>(runs.size());
#ifdef _OPENMP
  if (spec.run_threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(spec.run_threads)
    for (long long i = 0; i < total; ++i) execute(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < total; ++i) execute(static_cast<std::size_t>(i));
  }
#else
  for (long long i = 0; i < total; ++i) execute(static_cast<std::size_t>(i));
#endif

  std::ostringstream csv;
  csv << csv_header();
  for (const auto& row : result.rows) {
    csv << csv_row(row, spec.base.money_scale);
  }
  result.csv = csv.str();
  if (out != nullptr) {
    *out << result.csv;
    out->flush();
  }
  return result;
}

std::string sweep_summary(const SweepSpec& spec,
                          const std::vector<RunRow>& rows) {
  // cell -> (sum of revenue in money units, run count)
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> cells;
  for (const auto& row : rows) {
    if (row.status != "ok") continue;
    auto& cell = cells[{row.axis_value, row.algorithm}];
    cell.first += money_to_units(row.revenue, spec.base.money_scale);
    cell.second += 1;
  }
  std::ostringstream out;
  out << "axis=" << to_string(spec.axis) << "\n";
  out << "axis_value algorithm mean_revenue runs\n";
  for (const auto& [key, cell] : cells) {
    out << key.first << ' ' << key.second << ' '
        << fixed3(cell.first / std::max(cell.second, 1)) << ' ' << cell.second
        << "\n";
  }
  return out.str();
}

GenConfig desk_base_config() {
  GenConfig cfg;
  cfg.num_tasks = 16;
  cfg.num_workers = 48;
  cfg.num_skills = 6;
  cfg.fixed_radius = 1000.0;
  cfg.budget_min = 800.0;
  cfg.budget_max = 1000.0;
  cfg.box = {{0.0, 0.0}, {5000.0, 5000.0}};
  cfg.task_skills_min = 1;
  cfg.task_skills_max = 3;
  cfg.worker_skills_min = 1;
  cfg.worker_skills_max = 3;
  cfg.alpha = 0.5;
  cfg.beta = 0.05;
  return cfg;
}

std::vector<SweepSpec> desk_sweeps(std::vector<Algo> algos, int run_threads) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 30; ++s) seeds.push_back(s);

  SweepSpec tasks;
  tasks.axis = SweepAxis::kTasks;
  tasks.values = {8, 16, 24};
  tasks.base = desk_base_config();
  tasks.seeds = seeds;
  tasks.algos = algos;
  tasks.run_threads = run_threads;

  SweepSpec workers = tasks;
  workers.axis = SweepAxis::kWorkers;
  workers.values = {24, 48, 72};

  return {tasks, workers};
}

}  // namespace staeb
