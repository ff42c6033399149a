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

// Times the data-parallel kernels against their serial references on one
// generated instance: the all-workers deviation scan, the Nash check, and
// grid vs. linear candidate queries. The solvers themselves stay
// sequential; these scans are where the cycles go.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "staeb/core.hpp"
#include "staeb/feasibility.hpp"
#include "staeb/game.hpp"
#include "staeb/instance_io.hpp"
#include "staeb/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const auto& fn, int iters) {
  const auto start = Clock::now();
  for (int i = 0; i < iters; ++i) fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         iters;
}

}  // namespace

int main(int argc, char** argv) {
  staeb::GenConfig cfg;
  cfg.num_tasks = 200;
  cfg.num_workers = 600;
  int iters = 3;
  int threads = 0;  // 0 = OpenMP default
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", arg.c_str());
        std::exit(1);
      }
      return argv[++i];
    };
    if (arg == "--tasks") {
      cfg.num_tasks = std::atoi(next());
    } else if (arg == "--workers") {
      cfg.num_workers = std::atoi(next());
    } else if (arg == "--seed") {
      cfg.seed = static_cast<std::uint64_t>(std::atoll(next()));
    } else if (arg == "--iters") {
      iters = std::atoi(next());
    } else if (arg == "--threads") {
      threads = std::atoi(next());
    } else {
      std::fprintf(stderr,
                   "usage: %s [--tasks N] [--workers N] [--seed N] "
                   "[--iters N] [--threads N]\n",
                   argv[0]);
      return 1;
    }
  }

#ifdef _OPENMP
  const int effective_threads = threads > 0 ? threads : omp_get_max_threads();
#else
  const int effective_threads = 1;
#endif

  const staeb::Instance instance = staeb::generate_instance(cfg);
  const staeb::CompiledInstance ci = staeb::CompiledInstance::build(instance);
  const staeb::GameState state = staeb::init_game(ci);

  std::printf("instance: %d tasks, %d workers, seed %llu; threads: %d\n",
              ci.num_tasks(), ci.num_workers(),
              static_cast<unsigned long long>(cfg.seed), effective_threads);

  // Deviation scan: best response of every worker against a frozen state.
  std::vector<staeb::Money> serial_gains, omp_gains;
  const double scan_serial = time_ms(
      [&] { serial_gains = staeb::kernels::deviation_gain_scan_serial(state); },
      iters);
  const double scan_omp = time_ms(
      [&] {
        omp_gains =
            staeb::kernels::deviation_gain_scan_omp(state, effective_threads);
      },
      iters);
  if (serial_gains != omp_gains) {
    std::fprintf(stderr, "kernel mismatch: deviation scans disagree\n");
    return 2;
  }

  const double nash_serial =
      time_ms([&] { (void)staeb::kernels::nash_scan_serial(state); }, iters);
  const double nash_omp = time_ms(
      [&] { (void)staeb::kernels::nash_scan_omp(state, effective_threads); },
      iters);

  // Candidate queries: uniform grid vs. linear scan over the workers.
  const staeb::GridIndex index =
      staeb::build_index(instance.workers, staeb::default_cell_size(instance));
  std::vector<int> grid_hits, linear_hits;
  const double query_grid = time_ms(
      [&] {
        for (const auto& task : instance.tasks) {
          grid_hits = index.query_radius(task.location,
                                         task.fixed_radius + task.extra_budget);
        }
      },
      iters);
  const double query_linear = time_ms(
      [&] {
        for (const auto& task : instance.tasks) {
          linear_hits.clear();
          const double reach = task.fixed_radius + task.extra_budget;
          for (int w = 0; w < static_cast<int>(instance.workers.size()); ++w) {
            if (staeb::travel_cost(task.location,
                                   instance.workers[w].location) <= reach) {
              linear_hits.push_back(w);
            }
          }
        }
      },
      iters);

  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial(ms)", "parallel(ms)",
              "speedup");
  std::printf("%-28s %12.3f %12.3f %8.2fx\n", "deviation_gain_scan",
              scan_serial, scan_omp, scan_serial / scan_omp);
  std::printf("%-28s %12.3f %12.3f %8.2fx\n", "nash_scan", nash_serial,
              nash_omp, nash_serial / nash_omp);
  std::printf("%-28s %12.3f %12.3f %8.2fx  (linear vs grid)\n",
              "candidate_query", query_linear, query_grid,
              query_linear / query_grid);
  return 0;
}
