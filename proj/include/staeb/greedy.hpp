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

#ifndef STAEB_GREEDY_HPP
#define STAEB_GREEDY_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "staeb/compiled.hpp"
#include "staeb/feasibility.hpp"
#include "staeb/report.hpp"
#include "staeb/types.hpp"

namespace staeb {

struct GreedyConfig {
  /// Candidate ordering when several workers cover the same number of
  /// remaining skills.
  enum class TieBreak {
    // Most remaining skills covered, then smallest extra cost, then
    // smallest worker id.
    kMostSkillsThenCostThenId,
  };
  TieBreak tie_break = TieBreak::kMostSkillsThenCostThenId;
};

/// Task ids in processing order: descending average skill fee
/// (sum of fees over S_t divided by |S_t|), ties by ascending task id.
/// The comparison is exact (cross-multiplied integer fees).
std::vector<std::string> rank_tasks(const std::vector<Task>& tasks,
                                    const SkillCatalog& catalog,
                                    const Params& params);

/// One task's greedy valid worker set: repeatedly take the candidate
/// covering the most remaining skills within the shrinking reachable
/// range r_t + remaining budget. Returns nothing when some remaining
/// skill has no candidate; tentative picks are discarded.
/// Pure: `available` is not modified.
std::optional<PairAssignment> assign_task_greedy(
    const Task& task, const std::set<std::string>& available,
    const GridIndex& index, const Instance& instance, const GreedyConfig& cfg);

/// Full greedy solve over the compiled fast path. Deterministic for a
/// given instance and config; the output always passes validate_matching.
SolveResult solve_greedy(const Instance& instance, const GreedyConfig& cfg = {});

/// Reference path used in tests: the same algorithm expressed through the
/// public per-task operations (grid queries and id sets). Must produce
/// exactly the matching of solve_greedy.
SolveResult solve_greedy_reference(const Instance& instance,
                                   const GreedyConfig& cfg = {});

}  // namespace staeb

#endif  // STAEB_GREEDY_HPP
