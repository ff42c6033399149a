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

#ifndef STAEB_BENCH_HPP
#define STAEB_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "staeb/instance_io.hpp"
#include "staeb/oracle.hpp"
#include "staeb/report.hpp"
#include "staeb/types.hpp"

namespace staeb {

enum class Algo { kRandom, kGreedy, kEbgt, kExact };

const char* to_string(Algo algo);
std::optional<Algo> algo_from_string(const std::string& name);

/// One benchmark-row per solver run. Revenue is re-derived from the
/// matching by matching_revenue before the row is emitted; solver-internal
/// accumulators are never trusted.
struct RunRow {
  std::string axis_value;  // empty for single runs
  std::string algorithm;
  std::uint64_t seed = 0;
  Money revenue = 0;
  int matched_tasks = 0;
  int total_tasks = 0;
  long long rounds = 0;
  bool nash_certified = false;
  double wall_millis = 0.0;
  double mean_extra_subsidy = 0.0;  // mean beta*e over assigned members, money units
  double served_ratio = 0.0;        // matched / total, 0 when no tasks
  std::string status = "ok";        // ok | oracle_overflow | error:<what>
};

/// Fixed, versioned CSV layout.
inline constexpr const char* kRunRowSchema = "run_row.v1";
std::string csv_header();
std::string csv_row(const RunRow& row, std::int64_t money_scale);

struct RunFlags {
  bool certify_nash = false;
  double batch_window_seconds = 0.0;  // 0 = single batch over the instance
  int threads = 1;
  OracleLimits oracle_limits;
};

struct RunOutcome {
  RunRow row;
  Matching matching;
  long long improving_moves = 0;
};

/// Runs one solver on one instance. Internal invariant violations (an
/// infeasible matching escaping a solver) throw std::logic_error.
RunOutcome run_once(const Instance& instance, Algo algo, std::uint64_t seed,
                    const RunFlags& flags);

enum class SweepAxis { kTasks, kWorkers, kSkills, kFixedRadius, kExtraBudget };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> axis_from_string(const std::string& name);

/// A one-axis parameter sweep: for each axis value, each algorithm and
/// each seed, generate an instance from `base` with the axis applied and
/// the run seed, then solve. Rows are emitted in (value, algo, seed)
/// order regardless of execution order.
struct SweepSpec {
  SweepAxis axis = SweepAxis::kTasks;
  std::vector<double> values;
  GenConfig base;
  std::vector<std::uint64_t> seeds;
  std::vector<Algo> algos;
  RunFlags flags;
  int run_threads = 1;  // concurrent sweep cells
};

std::vector<std::string> sweep_spec_check(const SweepSpec& spec);

struct SweepResult {
  std::vector<RunRow> rows;
  std::string csv;  // header + rows, timing column included
};

/// Executes the sweep; per-run failures are recorded in the row status
/// and the sweep continues. Appends to `out` when given.
SweepResult run_sweep(const SweepSpec& spec, std::ostream* out);

/// Per-cell mean-revenue summary table (one line per axis value x algo).
std::string sweep_summary(const SweepSpec& spec,
                          const std::vector<RunRow>& rows);

/// Desk-scale preset: small enough for the exact oracle to join.
/// Two sweeps: tasks {8,16,24} at 48 workers, workers {24,48,72} at
/// 16 tasks; 30 seeds per cell.
GenConfig desk_base_config();
std::vector<SweepSpec> desk_sweeps(std::vector<Algo> algos, int run_threads);

}  // namespace staeb

#endif  // STAEB_BENCH_HPP
