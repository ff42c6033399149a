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

#ifndef STAEB_ORACLE_HPP
#define STAEB_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "staeb/compiled.hpp"
#include "staeb/report.hpp"
#include "staeb/types.hpp"

namespace staeb {

/// Hard limits for the exact solver; the problem is NP-complete, so the
/// oracle only runs at desk scale. Exceeding any limit raises
/// OracleOverflow.
struct OracleLimits {
  int max_tasks = 6;
  int max_workers = 12;
  int max_valid_sets_per_task = 200000;
  double time_budget_seconds = 60.0;
};

/// Seeded random baseline: shuffle tasks, then cover each task's skills
/// by drawing a uniformly random feasible candidate per skill; a task
/// with an uncoverable skill releases its tentative picks.
SolveResult solve_random(const Instance& instance, std::uint64_t seed);

/// All irredundant valid worker sets of one task: every subset of its
/// candidates that covers S_t within budget and admits a crediting
/// partition giving each member at least one skill. Crediting is
/// canonicalized deterministically (revenue does not depend on it).
std::vector<PairAssignment> enumerate_valid_sets(const Task& task,
                                                 const Instance& instance,
                                                 const OracleLimits& limits);

/// Exact optimum via the reduction to maximum-weight independent set:
/// vertices are enumerated valid sets weighted by pair revenue, edges
/// join sets of the same task or sets sharing a worker; solved by
/// branch and bound.
SolveResult solve_exact(const Instance& instance, const OracleLimits& limits);

namespace detail {

/// Conflict-graph vertex: one candidate pair for one task.
struct MwisVertex {
  int task;
  std::uint64_t worker_mask;  // oracle limits keep workers <= 64
  Money weight;
};

/// Branch-and-bound maximum-weight independent set; returns chosen
/// vertex indices. Exposed for the brute-force cross-check in tests.
std::vector<int> max_weight_independent_set(
    const std::vector<MwisVertex>& vertices, double time_budget_seconds);

}  // namespace detail

}  // namespace staeb

#endif  // STAEB_ORACLE_HPP
