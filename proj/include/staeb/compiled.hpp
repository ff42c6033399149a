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

#ifndef STAEB_COMPILED_HPP
#define STAEB_COMPILED_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "staeb/types.hpp"

namespace staeb {

/// Skill sets as bitmasks. The catalog is capped at 64 skills, which
/// covers the experiment grid with a wide margin.
using SkillMask = std::uint64_t;

/// Dense numeric view of an instance shared by all solvers: integer ids,
/// skill bitmasks, scaled fees, and per-task candidate lists precomputed
/// against the full reachable range r_t + b_t. Immutable after build.
struct CompiledInstance {
  struct Candidate {
    int worker;
    double cost;   // travel cost to the task
    double extra;  // max(0, cost - r)
  };

  // A task's candidates holding one specific skill, ascending id rank.
  struct SkillCandidates {
    int skill;
    std::vector<int> workers;  // indices into CompiledInstance worker arrays
  };

  Params params;

  std::vector<std::string> skill_ids;  // ascending; index = skill number
  std::vector<Money> skill_fee;        // scaled

  std::vector<std::string> task_ids;
  std::vector<Point> task_pos;
  std::vector<double> task_radius;
  std::vector<double> task_budget;
  std::vector<SkillMask> task_skills;
  std::vector<Money> task_fee_sum;  // scaled sum of fees over S_t

  std::vector<std::string> worker_ids;
  std::vector<Point> worker_pos;
  std::vector<SkillMask> worker_skills;

  // Lexicographic id ranks; all deterministic orderings go through these.
  std::vector<int> task_rank;
  std::vector<int> worker_rank;
  std::vector<int> tasks_by_rank;
  std::vector<int> workers_by_rank;

  // Workers with any skill overlap within r_t + b_t, ascending id rank.
  std::vector<std::vector<Candidate>> task_candidates;
  // The same candidates split per required skill.
  std::vector<std::vector<SkillCandidates>> task_skill_candidates;
  // Tasks a worker could conceivably join (overlap + in range), by id rank.
  std::vector<std::vector<int>> worker_task_options;

  int num_tasks() const { return static_cast<int>(task_ids.size()); }
  int num_workers() const { return static_cast<int>(worker_ids.size()); }
  int num_skills() const { return static_cast<int>(skill_ids.size()); }

  double travel(int task, int worker) const {
    const double dx = task_pos[task].x - worker_pos[worker].x;
    const double dy = task_pos[task].y - worker_pos[worker].y;
    return std::sqrt(dx * dx + dy * dy);
  }

  Money fee_sum(SkillMask mask) const {
    Money sum = 0;
    while (mask != 0) {
      const int s = std::countr_zero(mask);
      sum += skill_fee[s];
      mask &= mask - 1;
    }
    return sum;
  }

  /// alpha * F - beta * e on the scaled grid; F already scaled.
  Money revenue(Money credited_fee_sum, double extra) const {
    return std::llround(params.alpha * static_cast<double>(credited_fee_sum) -
                        params.beta * extra *
                            static_cast<double>(params.money_scale));
  }

  int skill_index(const std::string& id) const;
  int task_index(const std::string& id) const;
  int worker_index(const std::string& id) const;

  SkillMask mask_of(const std::vector<std::string>& skills) const;
  std::vector<std::string> skills_of(SkillMask mask) const;

  /// Validates the instance and precomputes the dense view. Throws
  /// std::invalid_argument listing every structural problem.
  static CompiledInstance build(const Instance& instance);
};

}  // namespace staeb

#endif  // STAEB_COMPILED_HPP
