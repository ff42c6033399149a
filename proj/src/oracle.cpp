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

#include "staeb/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

#include "staeb/core.hpp"
#include "staeb/feasibility.hpp"
#include "staeb/rng.hpp"

namespace staeb {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct EnumeratedSet {
  std::vector<int> cand_indices;  // into task_candidates[task]
  std::vector<SkillMask> credited;  // parallel to cand_indices
  Money weight;
};

// Kuhn's augmenting paths on the member -> credited-skill graph. Every
// member needs a private witness skill for the set to be irredundant.
bool saturating_matching(const std::vector<SkillMask>& options,
                         std::vector<int>& member_of_skill) {
  member_of_skill.assign(64, -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int member) -> bool {
    SkillMask mask = options[member];
    while (mask != 0) {
      const int s = std::countr_zero(mask);
      mask &= mask - 1;
      if (visited[s]) continue;
      visited[s] = 1;
      if (member_of_skill[s] < 0 || self(self, member_of_skill[s])) {
        member_of_skill[s] = member;
        return true;
      }
    }
    return false;
  };
  for (int m = 0; m < static_cast<int>(options.size()); ++m) {
    visited.assign(64, 0);
    if (!augment(augment, m)) return false;
  }
  return true;
}

// Canonical crediting: each member keeps its witness skill, every other
// required skill goes to its first member (ascending id rank) holding it.
std::vector<SkillMask> canonical_crediting(
    const CompiledInstance& ci, int task,
    const std::vector<int>& member_workers) {
  std::vector<SkillMask> options;
  options.reserve(member_workers.size());
  for (int w : member_workers) {
    options.push_back(ci.worker_skills[w] & ci.task_skills[task]);
  }
  std::vector<int> member_of_skill;
  const bool ok = saturating_matching(options, member_of_skill);
  if (!ok) return {};

  std::vector<SkillMask> credited(member_workers.size(), 0);
  std::vector<char> skill_taken(64, 0);
  for (int s = 0; s < 64; ++s) {
    if (member_of_skill[s] >= 0 && (ci.task_skills[task] >> s & 1)) {
      credited[member_of_skill[s]] |= SkillMask{1} << s;
      skill_taken[s] = 1;
    }
  }
  SkillMask rest = ci.task_skills[task];
  while (rest != 0) {
    const int s = std::countr_zero(rest);
    rest &= rest - 1;
    if (skill_taken[s]) continue;
    for (std::size_t m = 0; m < options.size(); ++m) {
      if (options[m] >> s & 1) {
        credited[m] |= SkillMask{1} << s;
        break;
      }
    }
  }
  return credited;
}

struct EnumerationBudget {
  Clock::time_point deadline;
  long long node_counter = 0;

  void tick() {
    if ((++node_counter & 1023) == 0 && Clock::now() > deadline) {
      throw OracleOverflow("oracle: time budget exhausted");
    }
  }
};

void enumerate_sets_for_task(const CompiledInstance& ci, int task,
                             const OracleLimits& limits,
                             EnumerationBudget& budget,
                             std::vector<EnumeratedSet>& out) {
  const auto& cands = ci.task_candidates[task];
  const int n = static_cast<int>(cands.size());
  const int max_members = std::popcount(ci.task_skills[task]);

  // Suffix coverage masks prune branches that can no longer cover S_t.
  std::vector<SkillMask> suffix_cover(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    suffix_cover[i] = suffix_cover[i + 1] |
                      (ci.worker_skills[cands[i].worker] & ci.task_skills[task]);
  }

  std::vector<int> chosen;
  auto dfs = [&](auto&& self, int index, SkillMask coverage,
                 double extra_sum) -> void {
    budget.tick();
    if (coverage == ci.task_skills[task] && !chosen.empty()) {
      std::vector<int> workers;
      workers.reserve(chosen.size());
      for (int c : chosen) workers.push_back(cands[c].worker);
      std::vector<SkillMask> credited = canonical_crediting(ci, task, workers);
      if (!credited.empty()) {
        EnumeratedSet set;
        set.cand_indices = chosen;
        set.credited = std::move(credited);
        set.weight = 0;
        for (std::size_t m = 0; m < chosen.size(); ++m) {
          set.weight += ci.revenue(ci.fee_sum(set.credited[m]),
                                   cands[chosen[m]].extra);
        }
        out.push_back(std::move(set));
        if (static_cast<int>(out.size()) > limits.max_valid_sets_per_task) {
          throw OracleOverflow(
              "oracle: task '" + ci.task_ids[task] +
              "' exceeds max_valid_sets_per_task");
        }
      }
    }
    if (index >= n) return;
    if (static_cast<int>(chosen.size()) >= max_members) return;
    if ((coverage | suffix_cover[index]) != ci.task_skills[task]) return;

    // include cands[index]
    const double extra = cands[index].extra;
    if (extra_sum + extra <= ci.task_budget[task]) {
      chosen.push_back(index);
      self(self, index + 1,
           coverage | (ci.worker_skills[cands[index].worker] &
                       ci.task_skills[task]),
           extra_sum + extra);
      chosen.pop_back();
    }
    // exclude cands[index]
    self(self, index + 1, coverage, extra_sum);
  };
  dfs(dfs, 0, 0, 0.0);
}

// Worker and task ids double as bit positions in the conflict graph, so
// the oracle is capped at 64 of each on top of the configured limits.
void check_limits(const CompiledInstance& ci, const OracleLimits& limits) {
  if (ci.num_tasks() > limits.max_tasks || ci.num_tasks() > 64) {
    throw OracleOverflow("oracle: instance has " +
                         std::to_string(ci.num_tasks()) +
                         " tasks, limit is " +
                         std::to_string(std::min(limits.max_tasks, 64)));
  }
  if (ci.num_workers() > limits.max_workers || ci.num_workers() > 64) {
    throw OracleOverflow("oracle: instance has " +
                         std::to_string(ci.num_workers()) +
                         " workers, limit is " +
                         std::to_string(std::min(limits.max_workers, 64)));
  }
}

}  // namespace

SolveResult solve_random(const Instance& instance, std::uint64_t seed) {
  const CompiledInstance ci = CompiledInstance::build(instance);
  const auto start = Clock::now();
  Rng rng(seed);

  std::vector<int> order(ci.num_tasks());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  std::vector<char> avail(ci.num_workers(), 1);
  Matching matching;
  Money revenue = 0;
  int matched = 0;

  std::vector<int> feasible;
  for (int t : order) {
    SkillMask remaining = ci.task_skills[t];
    double budget = ci.task_budget[t];
    std::vector<std::tuple<int, SkillMask, double>> picks;
    bool failed = false;
    while (remaining != 0) {
      const int skill = std::countr_zero(remaining);
      feasible.clear();
      for (const auto& sc : ci.task_skill_candidates[t]) {
        if (sc.skill != skill) continue;
        for (int c : sc.workers) {
          const auto& cand = ci.task_candidates[t][c];
          if (!avail[cand.worker]) continue;
          if (std::any_of(picks.begin(), picks.end(), [&](const auto& p) {
                return std::get<0>(p) == cand.worker;
              })) {
            continue;
          }
          if (!(cand.cost <= ci.task_radius[t] + budget)) continue;
          feasible.push_back(c);
        }
        break;
      }
      if (feasible.empty()) {
        failed = true;
        break;
      }
      const auto& cand =
          ci.task_candidates[t][feasible[rng.below(feasible.size())]];
      const SkillMask credited = ci.worker_skills[cand.worker] & remaining;
      picks.emplace_back(cand.worker, credited, cand.extra);
      remaining &= ~credited;
      budget -= cand.extra;
    }
    if (failed || picks.empty()) continue;
    PairAssignment pair;
    pair.task_id = ci.task_ids[t];
    for (const auto& [w, credited, extra] : picks) {
      avail[w] = 0;
      pair.members.push_back({ci.worker_ids[w], ci.skills_of(credited), extra});
      revenue += ci.revenue(ci.fee_sum(credited), extra);
    }
    matching.pairs.push_back(std::move(pair));
    ++matched;
  }
  for (int w = 0; w < ci.num_workers(); ++w) {
    if (avail[w]) matching.unassigned_workers.push_back(ci.worker_ids[w]);
  }
  std::sort(matching.unassigned_workers.begin(),
            matching.unassigned_workers.end());

  SolveResult result;
  result.matching = std::move(matching);
  result.report.algorithm = "random";
  result.report.revenue = revenue;
  result.report.matched_tasks = matched;
  result.report.total_tasks = ci.num_tasks();
  result.report.wall_millis = millis_since(start);
  result.report.feasible = validate_matching(result.matching, instance).ok();
  return result;
}

std::vector<PairAssignment> enumerate_valid_sets(const Task& task,
                                                 const Instance& instance,
                                                 const OracleLimits& limits) {
  const CompiledInstance ci = CompiledInstance::build(instance);
  const int t = ci.task_index(task.id);

  EnumerationBudget budget{
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             limits.time_budget_seconds))};
  std::vector<EnumeratedSet> sets;
  enumerate_sets_for_task(ci, t, limits, budget, sets);

  std::vector<PairAssignment> out;
  for (const auto& set : sets) {
    PairAssignment pair;
    pair.task_id = task.id;
    for (std::size_t m = 0; m < set.cand_indices.size(); ++m) {
      const auto& cand = ci.task_candidates[t][set.cand_indices[m]];
      pair.members.push_back({ci.worker_ids[cand.worker],
                              ci.skills_of(set.credited[m]), cand.extra});
    }
    out.push_back(std::move(pair));
  }
  return out;
}

namespace detail {

std::vector<int> max_weight_independent_set(
    const std::vector<MwisVertex>& vertices, double time_budget_seconds) {
  const int n = static_cast<int>(vertices.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return vertices[a].weight > vertices[b].weight;
  });

  std::vector<Money> suffix(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1] + std::max<Money>(0, vertices[order[i]].weight);
  }

  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(time_budget_seconds));
  long long nodes = 0;

  std::vector<int> best;
  Money best_weight = 0;
  std::vector<int> current;

  auto dfs = [&](auto&& self, int index, Money weight,
                 std::uint64_t worker_mask, std::uint64_t task_mask) -> void {
    if ((++nodes & 4095) == 0 && Clock::now() > deadline) {
      throw OracleOverflow("oracle: time budget exhausted in branch and bound");
    }
    if (weight > best_weight) {
      best_weight = weight;
      best = current;
    }
    if (index >= n) return;
    if (weight + suffix[index] <= best_weight) return;

    const MwisVertex& v = vertices[order[index]];
    const bool compatible = (worker_mask & v.worker_mask) == 0 &&
                            (task_mask >> v.task & 1) == 0;
    if (compatible && v.weight > 0) {
      current.push_back(order[index]);
      self(self, index + 1, weight + v.weight, worker_mask | v.worker_mask,
           task_mask | (std::uint64_t{1} << v.task));
      current.pop_back();
    }
    self(self, index + 1, weight, worker_mask, task_mask);
  };
  dfs(dfs, 0, 0, 0, 0);

  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace detail

SolveResult solve_exact(const Instance& instance, const OracleLimits& limits) {
  const CompiledInstance ci = CompiledInstance::build(instance);
  check_limits(ci, limits);
  const auto start = Clock::now();

  EnumerationBudget budget{
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             limits.time_budget_seconds))};

  std::vector<detail::MwisVertex> vertices;
  std::vector<EnumeratedSet> all_sets;
  std::vector<int> set_task;
  for (int t = 0; t < ci.num_tasks(); ++t) {
    std::vector<EnumeratedSet> sets;
    enumerate_sets_for_task(ci, t, limits, budget, sets);
    for (auto& set : sets) {
      if (set.weight <= 0) continue;  // never helps a maximum matching
      std::uint64_t worker_mask = 0;
      for (int c : set.cand_indices) {
        worker_mask |= std::uint64_t{1} << ci.task_candidates[t][c].worker;
      }
      vertices.push_back({t, worker_mask, set.weight});
      all_sets.push_back(std::move(set));
      set_task.push_back(t);
    }
  }

  const std::vector<int> chosen =
      detail::max_weight_independent_set(vertices, limits.time_budget_seconds);

  Matching matching;
  std::vector<char> assigned(ci.num_workers(), 0);
  Money revenue = 0;
  std::vector<int> chosen_sorted = chosen;
  std::sort(chosen_sorted.begin(), chosen_sorted.end(),
            [&](int a, int b) {
              return ci.task_rank[set_task[a]] < ci.task_rank[set_task[b]];
            });
  for (int v : chosen_sorted) {
    const int t = set_task[v];
    const EnumeratedSet& set = all_sets[v];
    PairAssignment pair;
    pair.task_id = ci.task_ids[t];
    for (std::size_t m = 0; m < set.cand_indices.size(); ++m) {
      const auto& cand = ci.task_candidates[t][set.cand_indices[m]];
      pair.members.push_back({ci.worker_ids[cand.worker],
                              ci.skills_of(set.credited[m]), cand.extra});
      assigned[cand.worker] = 1;
    }
    revenue += set.weight;
    matching.pairs.push_back(std::move(pair));
  }
  for (int w = 0; w < ci.num_workers(); ++w) {
    if (!assigned[w]) matching.unassigned_workers.push_back(ci.worker_ids[w]);
  }
  std::sort(matching.unassigned_workers.begin(),
            matching.unassigned_workers.end());

  SolveResult result;
  result.matching = std::move(matching);
  result.report.algorithm = "exact";
  result.report.revenue = revenue;
  result.report.matched_tasks = static_cast<int>(result.matching.pairs.size());
  result.report.total_tasks = ci.num_tasks();
  result.report.wall_millis = millis_since(start);
  result.report.feasible = validate_matching(result.matching, instance).ok();
  return result;
}

}  // namespace staeb
