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

#include "staeb/compiled.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "staeb/core.hpp"
#include "staeb/feasibility.hpp"

namespace staeb {

namespace {

std::vector<int> ranks_by_id(const std::vector<std::string>& ids) {
  std::vector<int> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<int> rank(ids.size());
  for (int r = 0; r < static_cast<int>(order.size()); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace

int CompiledInstance::skill_index(const std::string& id) const {
  const auto it = std::lower_bound(skill_ids.begin(), skill_ids.end(), id);
  if (it == skill_ids.end() || *it != id) {
    throw std::invalid_argument("unknown skill id '" + id + "'");
  }
  return static_cast<int>(it - skill_ids.begin());
}

int CompiledInstance::task_index(const std::string& id) const {
  for (int i = 0; i < num_tasks(); ++i) {
    if (task_ids[i] == id) return i;
  }
  throw std::invalid_argument("unknown task id '" + id + "'");
}

int CompiledInstance::worker_index(const std::string& id) const {
  for (int i = 0; i < num_workers(); ++i) {
    if (worker_ids[i] == id) return i;
  }
  throw std::invalid_argument("unknown worker id '" + id + "'");
}

SkillMask CompiledInstance::mask_of(
    const std::vector<std::string>& skills) const {
  SkillMask mask = 0;
  for (const auto& s : skills) mask |= SkillMask{1} << skill_index(s);
  return mask;
}

std::vector<std::string> CompiledInstance::skills_of(SkillMask mask) const {
  std::vector<std::string> out;
  while (mask != 0) {
    out.push_back(skill_ids[std::countr_zero(mask)]);
    mask &= mask - 1;
  }
  return out;
}

CompiledInstance CompiledInstance::build(const Instance& instance) {
  const std::vector<std::string> problems = instance_check(instance);
  if (!problems.empty()) {
    std::ostringstream out;
    out << "invalid instance:";
    for (const auto& p : problems) out << "\n  " << p;
    throw std::invalid_argument(out.str());
  }

  CompiledInstance ci;
  ci.params = instance.params;

  for (const auto& [id, fee] : instance.catalog.fees) {
    ci.skill_ids.push_back(id);  // map order = ascending id
    ci.skill_fee.push_back(money_from_units(fee, ci.params.money_scale));
  }

  for (const auto& t : instance.tasks) {
    ci.task_ids.push_back(t.id);
    ci.task_pos.push_back(t.location);
    ci.task_radius.push_back(t.fixed_radius);
    ci.task_budget.push_back(t.extra_budget);
    const SkillMask mask = ci.mask_of(t.required_skills);
    ci.task_skills.push_back(mask);
    ci.task_fee_sum.push_back(ci.fee_sum(mask));
  }
  for (const auto& w : instance.workers) {
    ci.worker_ids.push_back(w.id);
    ci.worker_pos.push_back(w.location);
    ci.worker_skills.push_back(ci.mask_of(w.skills));
  }

  ci.task_rank = ranks_by_id(ci.task_ids);
  ci.worker_rank = ranks_by_id(ci.worker_ids);
  ci.tasks_by_rank.resize(ci.task_ids.size());
  for (int t = 0; t < ci.num_tasks(); ++t) ci.tasks_by_rank[ci.task_rank[t]] = t;
  ci.workers_by_rank.resize(ci.worker_ids.size());
  for (int w = 0; w < ci.num_workers(); ++w) {
    ci.workers_by_rank[ci.worker_rank[w]] = w;
  }

  // Candidate lists via one grid pass; boundary-inclusive, identical to a
  // linear scan.
  const GridIndex index = build_index(instance.workers,
                                      default_cell_size(instance));
  ci.task_candidates.resize(ci.num_tasks());
  ci.task_skill_candidates.resize(ci.num_tasks());
  ci.worker_task_options.resize(ci.num_workers());
  for (int t = 0; t < ci.num_tasks(); ++t) {
    const double reach = ci.task_radius[t] + ci.task_budget[t];
    std::vector<int> near = index.query_radius(ci.task_pos[t], reach);
    std::sort(near.begin(), near.end(),
              [&](int a, int b) { return ci.worker_rank[a] < ci.worker_rank[b]; });
    for (int w : near) {
      if ((ci.worker_skills[w] & ci.task_skills[t]) == 0) continue;
      const double cost = ci.travel(t, w);
      const double extra =
          cost > ci.task_radius[t] ? cost - ci.task_radius[t] : 0.0;
      ci.task_candidates[t].push_back({w, cost, extra});
      ci.worker_task_options[w].push_back(t);
    }
    SkillMask remaining = ci.task_skills[t];
    while (remaining != 0) {
      const int s = std::countr_zero(remaining);
      remaining &= remaining - 1;
      SkillCandidates sc{s, {}};
      for (std::size_t c = 0; c < ci.task_candidates[t].size(); ++c) {
        if (ci.worker_skills[ci.task_candidates[t][c].worker] >>
                s & 1) {
          sc.workers.push_back(static_cast<int>(c));
        }
      }
      ci.task_skill_candidates[t].push_back(std::move(sc));
    }
  }
  for (auto& options : ci.worker_task_options) {
    std::sort(options.begin(), options.end(),
              [&](int a, int b) { return ci.task_rank[a] < ci.task_rank[b]; });
  }
  return ci;
}

}  // namespace staeb
