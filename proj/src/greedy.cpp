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

#include "staeb/greedy.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <unordered_map>

#include "staeb/core.hpp"

namespace staeb {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

std::vector<std::string> rank_tasks(const std::vector<Task>& tasks,
                                    const SkillCatalog& catalog,
                                    const Params& params) {
  struct Entry {
    const Task* task;
    Money fee_sum;  // scaled
    std::int64_t skills;
  };
  std::vector<Entry> entries;
  entries.reserve(tasks.size());
  for (const auto& t : tasks) {
    Money sum = 0;
    for (const auto& s : t.required_skills) {
      sum += money_from_units(catalog.fees.at(s), params.money_scale);
    }
    entries.push_back({&t, sum, static_cast<std::int64_t>(
                                    t.required_skills.size())});
  }
  // Average fees compared exactly by cross-multiplication; ties fall back
  // to ascending task id.
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    const Money lhs = a.fee_sum * b.skills;
    const Money rhs = b.fee_sum * a.skills;
    if (lhs != rhs) return lhs > rhs;
    return a.task->id < b.task->id;
  });
  std::vector<std::string> order;
  order.reserve(entries.size());
  for (const auto& e : entries) order.push_back(e.task->id);
  return order;
}

std::optional<PairAssignment> assign_task_greedy(
    const Task& task, const std::set<std::string>& available,
    const GridIndex& index, const Instance& instance,
    const GreedyConfig& /*cfg*/) {
  std::unordered_map<std::string, const Worker*> by_id;
  for (const auto& w : index.workers()) by_id[w.id] = &w;

  std::set<std::string> remaining(task.required_skills.begin(),
                                  task.required_skills.end());
  std::set<std::string> avail = available;
  double budget = task.extra_budget;
  PairAssignment pair;
  pair.task_id = task.id;

  while (!remaining.empty()) {
    const std::vector<std::string> candidates =
        candidate_workers(index, task, remaining, budget, avail);
    if (candidates.empty()) return std::nullopt;

    const Worker* best = nullptr;
    int best_covers = 0;
    double best_extra = 0.0;
    for (const auto& id : candidates) {
      const Worker* w = by_id.at(id);
      int covers = 0;
      for (const auto& s : w->skills) covers += remaining.contains(s) ? 1 : 0;
      const double extra = extra_cost(task, *w);
      // Ascending-id iteration: strictly better (coverage, extra cost)
      // wins, equal keeps the earlier id.
      if (best == nullptr || covers > best_covers ||
          (covers == best_covers && extra < best_extra)) {
        best = w;
        best_covers = covers;
        best_extra = extra;
      }
    }

    PairMember member;
    member.worker_id = best->id;
    for (const auto& s : best->skills) {
      if (remaining.contains(s)) member.credited_skills.push_back(s);
    }
    std::sort(member.credited_skills.begin(), member.credited_skills.end());
    member.extra_cost = best_extra;
    for (const auto& s : member.credited_skills) remaining.erase(s);
    budget -= best_extra;
    avail.erase(best->id);
    pair.members.push_back(std::move(member));
  }
  return pair;
}

namespace {

Matching compiled_matching(const CompiledInstance& ci,
                           const std::vector<int>& pair_tasks,
                           const std::vector<std::vector<std::tuple<int, SkillMask, double>>>& pair_members) {
  Matching matching;
  std::vector<char> assigned(ci.num_workers(), 0);
  for (std::size_t i = 0; i < pair_tasks.size(); ++i) {
    PairAssignment pair;
    pair.task_id = ci.task_ids[pair_tasks[i]];
    for (const auto& [w, credited, extra] : pair_members[i]) {
      pair.members.push_back({ci.worker_ids[w], ci.skills_of(credited), extra});
      assigned[w] = 1;
    }
    matching.pairs.push_back(std::move(pair));
  }
  for (int w = 0; w < ci.num_workers(); ++w) {
    if (!assigned[w]) matching.unassigned_workers.push_back(ci.worker_ids[w]);
  }
  std::sort(matching.unassigned_workers.begin(),
            matching.unassigned_workers.end());
  return matching;
}

}  // namespace

SolveResult solve_greedy(const Instance& instance, const GreedyConfig& cfg) {
  const CompiledInstance ci = CompiledInstance::build(instance);
  const auto start = Clock::now();

  // Rank: descending average fee, exact integer comparison, id ties.
  std::vector<int> order(ci.num_tasks());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Money lhs = ci.task_fee_sum[a] *
                      static_cast<Money>(std::popcount(ci.task_skills[b]));
    const Money rhs = ci.task_fee_sum[b] *
                      static_cast<Money>(std::popcount(ci.task_skills[a]));
    if (lhs != rhs) return lhs > rhs;
    return ci.task_rank[a] < ci.task_rank[b];
  });

  std::vector<char> avail(ci.num_workers(), 1);
  std::vector<int> pair_tasks;
  std::vector<std::vector<std::tuple<int, SkillMask, double>>> pair_members;
  Money revenue = 0;

  std::vector<std::tuple<int, SkillMask, double>> picks;
  for (int t : order) {
    picks.clear();
    SkillMask remaining = ci.task_skills[t];
    double budget = ci.task_budget[t];
    bool failed = false;
    while (remaining != 0) {
      int best_cand = -1;
      int best_covers = 0;
      double best_extra = 0.0;
      const auto& cands = ci.task_candidates[t];
      for (std::size_t c = 0; c < cands.size(); ++c) {
        const int w = cands[c].worker;
        if (!avail[w]) continue;
        if (std::any_of(picks.begin(), picks.end(), [&](const auto& p) {
              return std::get<0>(p) == w;
            })) {
          continue;
        }
        const SkillMask overlap = ci.worker_skills[w] & remaining;
        if (overlap == 0) continue;
        if (!(cands[c].cost <= ci.task_radius[t] + budget)) continue;
        const int covers = std::popcount(overlap);
        if (best_cand < 0 || covers > best_covers ||
            (covers == best_covers && cands[c].extra < best_extra)) {
          best_cand = static_cast<int>(c);
          best_covers = covers;
          best_extra = cands[c].extra;
        }
      }
      if (best_cand < 0) {
        failed = true;
        break;
      }
      const auto& cand = cands[best_cand];
      const SkillMask credited = ci.worker_skills[cand.worker] & remaining;
      picks.emplace_back(cand.worker, credited, cand.extra);
      remaining &= ~credited;
      budget -= cand.extra;
    }
    if (failed || picks.empty()) continue;
    for (const auto& [w, credited, extra] : picks) {
      avail[w] = 0;
      revenue += ci.revenue(ci.fee_sum(credited), extra);
    }
    pair_tasks.push_back(t);
    pair_members.push_back(picks);
  }

  SolveResult result;
  result.matching = compiled_matching(ci, pair_tasks, pair_members);
  result.report.algorithm = "greedy";
  result.report.revenue = revenue;
  result.report.matched_tasks = static_cast<int>(pair_tasks.size());
  result.report.total_tasks = ci.num_tasks();
  result.report.wall_millis = millis_since(start);
  result.report.feasible =
      validate_matching(result.matching, instance).ok();
  return result;
}

SolveResult solve_greedy_reference(const Instance& instance,
                                   const GreedyConfig& cfg) {
  const auto start = Clock::now();
  const GridIndex index =
      build_index(instance.workers, default_cell_size(instance));
  std::unordered_map<std::string, const Task*> task_by_id;
  for (const auto& t : instance.tasks) task_by_id[t.id] = &t;

  std::set<std::string> available;
  for (const auto& w : instance.workers) available.insert(w.id);

  Matching matching;
  for (const auto& id :
       rank_tasks(instance.tasks, instance.catalog, instance.params)) {
    const Task& task = *task_by_id.at(id);
    std::optional<PairAssignment> pair =
        assign_task_greedy(task, available, index, instance, cfg);
    if (!pair) continue;
    for (const auto& member : pair->members) available.erase(member.worker_id);
    matching.pairs.push_back(std::move(*pair));
  }
  matching.unassigned_workers.assign(available.begin(), available.end());

  SolveResult result;
  result.report.algorithm = "greedy";
  result.report.revenue = matching_revenue(matching, instance);
  result.report.matched_tasks = static_cast<int>(matching.pairs.size());
  result.report.total_tasks = static_cast<int>(instance.tasks.size());
  result.report.wall_millis = millis_since(start);
  result.report.feasible = true;  // matching_revenue validated above
  result.matching = std::move(matching);
  return result;
}

}  // namespace staeb
