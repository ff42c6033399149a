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

#include "staeb/game.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "staeb/feasibility.hpp"
#include "staeb/kernels.hpp"

namespace staeb {

namespace {

using Clock = std::chrono::steady_clock;
using Member = GameState::Member;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

bool contains(const std::vector<int>& xs, int x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Availability during a hypothetical rebuild: idle workers plus the
// displaced members of the move's target, minus whatever this evaluation
// has already claimed.
struct PoolView {
  const GameState& state;
  const std::vector<int>& displaced;
  std::vector<int>& consumed;

  bool available(int worker) const {
    if (contains(consumed, worker)) return false;
    if (state.strategy[worker] == kNullTask) return true;
    return contains(displaced, worker);
  }
};

// The one pair-construction rule shared by initialization, target rebuild
// and old-pair repair: cover the remaining skills in ascending skill
// order, each time taking the candidate whose credited block
// S_w ∩ remaining has the highest revenue (ties: lower extra cost, then
// lower id rank). Strictly negative blocks are skipped, which keeps every
// constructed pair's revenue nonnegative piece by piece and the initial
// potential nonnegative. Appends picks to `members`; returns false when
// some skill has no admissible candidate.
bool fill_remaining(const CompiledInstance& ci, int task, SkillMask remaining,
                    double& budget, const PoolView& pool,
                    std::vector<Member>& members) {
  const auto& cands = ci.task_candidates[task];
  while (remaining != 0) {
    const int skill = std::countr_zero(remaining);
    const std::vector<int>* holders = nullptr;
    for (const auto& sc : ci.task_skill_candidates[task]) {
      if (sc.skill == skill) {
        holders = &sc.workers;
        break;
      }
    }
    int best = -1;
    Money best_rev = 0;
    double best_extra = 0.0;
    if (holders != nullptr) {
      for (int c : *holders) {
        const auto& cand = cands[c];
        if (!pool.available(cand.worker)) continue;
        if (!(cand.cost <= ci.task_radius[task] + budget)) continue;
        const SkillMask credited = ci.worker_skills[cand.worker] & remaining;
        const Money rev = ci.revenue(ci.fee_sum(credited), cand.extra);
        if (rev < 0) continue;
        if (best < 0 || rev > best_rev ||
            (rev == best_rev && cand.extra < best_extra)) {
          best = c;
          best_rev = rev;
          best_extra = cand.extra;
        }
      }
    }
    if (best < 0) return false;
    const auto& cand = cands[best];
    const SkillMask credited = ci.worker_skills[cand.worker] & remaining;
    members.push_back({cand.worker, credited, cand.extra, best_rev});
    pool.consumed.push_back(cand.worker);
    remaining &= ~credited;
    budget -= cand.extra;
  }
  return true;
}

Money members_revenue(const std::vector<Member>& members) {
  Money sum = 0;
  for (const auto& m : members) sum += m.revenue;
  return sum;
}

// Safe upper bound on the revenue of any complete pair of this task:
// alpha * F_t plus one grid unit of rounding headroom per possible member.
Money pair_revenue_bound(const CompiledInstance& ci, int task) {
  return ci.revenue(ci.task_fee_sum[task], 0.0) +
         std::popcount(ci.task_skills[task]) + 1;
}

}  // namespace

GameState init_game(const CompiledInstance& ci) {
  GameState state;
  state.ci = &ci;
  state.strategy.assign(ci.num_workers(), kNullTask);
  state.pairs.resize(ci.num_tasks());
  const std::vector<int> no_displaced;

  for (int t = 0; t < ci.num_tasks(); ++t) {
    std::vector<int> consumed;
    std::vector<Member> members;
    double budget = ci.task_budget[t];
    const PoolView pool{state, no_displaced, consumed};
    if (!fill_remaining(ci, t, ci.task_skills[t], budget, pool, members)) {
      continue;  // uncoverable skill: tentative picks are discarded
    }
    auto& pair = state.pairs[t];
    pair.members = std::move(members);
    pair.budget_left = budget;
    pair.revenue = members_revenue(pair.members);
    for (const auto& m : pair.members) state.strategy[m.worker] = t;
    state.potential += pair.revenue;
  }
  return state;
}

GameState state_from_matching(const CompiledInstance& ci, const Matching& m) {
  GameState state;
  state.ci = &ci;
  state.strategy.assign(ci.num_workers(), kNullTask);
  state.pairs.resize(ci.num_tasks());
  for (const auto& pair : m.pairs) {
    const int t = ci.task_index(pair.task_id);
    auto& dest = state.pairs[t];
    if (dest.matched()) {
      throw std::invalid_argument("state_from_matching: task '" +
                                  pair.task_id + "' appears twice");
    }
    double budget = ci.task_budget[t];
    for (const auto& member : pair.members) {
      const int w = ci.worker_index(member.worker_id);
      if (state.strategy[w] != kNullTask) {
        throw std::invalid_argument("state_from_matching: worker '" +
                                    member.worker_id + "' appears twice");
      }
      const double cost = ci.travel(t, w);
      const double extra =
          cost > ci.task_radius[t] ? cost - ci.task_radius[t] : 0.0;
      const SkillMask credited = ci.mask_of(member.credited_skills);
      const Money rev = ci.revenue(ci.fee_sum(credited), extra);
      dest.members.push_back({w, credited, extra, rev});
      state.strategy[w] = t;
      budget -= extra;
    }
    dest.budget_left = budget;
    dest.revenue = members_revenue(dest.members);
    state.potential += dest.revenue;
  }
  return state;
}

Matching to_matching(const GameState& state) {
  const CompiledInstance& ci = *state.ci;
  Matching matching;
  for (int t = 0; t < ci.num_tasks(); ++t) {
    const auto& pair = state.pairs[t];
    if (!pair.matched()) continue;
    PairAssignment out;
    out.task_id = ci.task_ids[t];
    for (const auto& m : pair.members) {
      out.members.push_back(
          {ci.worker_ids[m.worker], ci.skills_of(m.credited), m.extra});
    }
    matching.pairs.push_back(std::move(out));
  }
  for (int w : ci.workers_by_rank) {
    if (state.strategy[w] == kNullTask) {
      matching.unassigned_workers.push_back(ci.worker_ids[w]);
    }
  }
  return matching;
}

Money potential(const GameState& state) { return state.potential; }

Money recompute_potential(const GameState& state) {
  const CompiledInstance& ci = *state.ci;
  Money total = 0;
  for (const auto& pair : state.pairs) {
    for (const auto& m : pair.members) {
      total += ci.revenue(ci.fee_sum(m.credited), m.extra);
    }
  }
  return total;
}

Money marginal_contribution(const GameState& state, int task, int worker) {
  for (const auto& m : state.pairs[task].members) {
    if (m.worker == worker) return m.revenue;
  }
  return 0;
}

namespace kernels {

std::optional<Move> evaluate_move(const GameState& state, int worker,
                                  int target) {
  const CompiledInstance& ci = *state.ci;
  if (target < 0 || target >= ci.num_tasks()) return std::nullopt;
  if (state.strategy[worker] == target) return std::nullopt;

  const SkillMask overlap = ci.worker_skills[worker] & ci.task_skills[target];
  if (overlap == 0) return std::nullopt;
  const double cost = ci.travel(target, worker);
  double budget = ci.task_budget[target];
  if (!(cost <= ci.task_radius[target] + budget)) return std::nullopt;

  Move move;
  move.worker = worker;
  move.target = target;

  // Rebuild the target pair, mover forced in first with its full
  // intersection; the previous members join the pool and may be re-picked.
  std::vector<int> displaced;
  for (const auto& m : state.pairs[target].members) {
    displaced.push_back(m.worker);
  }
  std::vector<int> consumed{worker};
  const double extra =
      cost > ci.task_radius[target] ? cost - ci.task_radius[target] : 0.0;
  const Money mover_rev = ci.revenue(ci.fee_sum(overlap), extra);
  move.target_members.push_back({worker, overlap, extra, mover_rev});
  budget -= extra;

  const PoolView pool{state, displaced, consumed};
  if (!fill_remaining(ci, target, ci.task_skills[target] & ~overlap, budget,
                      pool, move.target_members)) {
    return std::nullopt;  // target cannot be covered with the mover inside
  }
  move.target_budget_left = budget;
  Money delta =
      members_revenue(move.target_members) - state.pairs[target].revenue;

  // Repair the pair the mover leaves: re-cover its credited skills from
  // the pool, or dissolve the pair when that fails.
  const int old_task = state.strategy[worker];
  if (old_task != kNullTask) {
    move.had_old_pair = true;
    const auto& old_pair = state.pairs[old_task];
    SkillMask uncovered = 0;
    double old_budget = old_pair.budget_left;
    for (const auto& m : old_pair.members) {
      if (m.worker == worker) {
        uncovered = m.credited;
        old_budget += m.extra;
      } else {
        move.old_members.push_back(m);
      }
    }
    if (!fill_remaining(ci, old_task, uncovered, old_budget, pool,
                        move.old_members)) {
      move.old_dissolved = true;
      move.old_members.clear();
      move.old_budget_left = 0.0;
      delta -= old_pair.revenue;
    } else {
      move.old_budget_left = old_budget;
      delta += members_revenue(move.old_members) - old_pair.revenue;
    }
  }
  move.delta = delta;
  return move;
}

namespace {

// Upper bound on the delta of any move of `worker` to `target`, used to
// prune evaluations that cannot beat the best move found so far. The
// old-pair side is target-independent.
Money old_side_bound(const GameState& state, int worker) {
  const int old_task = state.strategy[worker];
  if (old_task == kNullTask) return 0;
  return pair_revenue_bound(*state.ci, old_task) -
         state.pairs[old_task].revenue;
}

}  // namespace

std::optional<Move> best_move_serial(const GameState& state, int worker) {
  const CompiledInstance& ci = *state.ci;
  const Money old_bound = old_side_bound(state, worker);
  std::optional<Move> best;
  for (int target : ci.worker_task_options[worker]) {
    if (target == state.strategy[worker]) continue;
    const Money best_delta = best ? best->delta : 0;
    const Money bound = pair_revenue_bound(ci, target) -
                        state.pairs[target].revenue + old_bound;
    if (bound <= best_delta) continue;
    std::optional<Move> move = evaluate_move(state, worker, target);
    if (move && move->delta > best_delta) best = std::move(move);
  }
  return best;
}

std::optional<Move> best_move_omp(const GameState& state, int worker,
                                  int threads) {
#ifndef _OPENMP
  (void)threads;
  return best_move_serial(state, worker);
#else
  const CompiledInstance& ci = *state.ci;
  const auto& options = ci.worker_task_options[worker];
  if (threads == 1 || options.size() < 8) {
    return best_move_serial(state, worker);
  }
  const Money old_bound = old_side_bound(state, worker);
  const int n = static_cast<int>(options.size());

  struct Local {
    std::optional<Move> move;
    int option_index = -1;
  };
  std::vector<Local> locals;

#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
  {
    Local local;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < n; ++i) {
      const int target = options[i];
      if (target == state.strategy[worker]) continue;
      const Money best_delta = local.move ? local.move->delta : 0;
      const Money bound = pair_revenue_bound(ci, target) -
                          state.pairs[target].revenue + old_bound;
      if (bound <= best_delta) continue;
      std::optional<Move> move = evaluate_move(state, worker, target);
      if (move && move->delta > best_delta) {
        local.move = std::move(move);
        local.option_index = i;
      }
    }
#pragma omp critical(staeb_best_move_merge)
    {
      if (local.move) locals.push_back(std::move(local));
    }
  }

  // Deterministic merge: highest delta, earliest task-id order on ties —
  // exactly the serial scan's result.
  std::optional<Move> best;
  int best_index = -1;
  for (auto& local : locals) {
    if (!best || local.move->delta > best->delta ||
        (local.move->delta == best->delta && local.option_index < best_index)) {
      best = std::move(local.move);
      best_index = local.option_index;
    }
  }
  return best;
#endif
}

bool nash_scan_serial(const GameState& state) {
  const CompiledInstance& ci = *state.ci;
  for (int w = 0; w < ci.num_workers(); ++w) {
    if (best_move_serial(state, w)) return false;
  }
  return true;
}

bool nash_scan_omp(const GameState& state, int threads) {
#ifndef _OPENMP
  (void)threads;
  return nash_scan_serial(state);
#else
  if (threads == 1) return nash_scan_serial(state);
  const int n = state.ci->num_workers();
  std::atomic<bool> deviator{false};
#pragma omp parallel for schedule(dynamic, 8) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (int w = 0; w < n; ++w) {
    if (deviator.load(std::memory_order_relaxed)) continue;
    if (best_move_serial(state, w)) {
      deviator.store(true, std::memory_order_relaxed);
    }
  }
  return !deviator.load();
#endif
}

std::vector<Money> deviation_gain_scan_serial(const GameState& state) {
  const int n = state.ci->num_workers();
  std::vector<Money> gains(n, 0);
  for (int w = 0; w < n; ++w) {
    if (auto move = best_move_serial(state, w)) gains[w] = move->delta;
  }
  return gains;
}

std::vector<Money> deviation_gain_scan_omp(const GameState& state,
                                           int threads) {
#ifndef _OPENMP
  (void)threads;
  return deviation_gain_scan_serial(state);
#else
  const int n = state.ci->num_workers();
  std::vector<Money> gains(n, 0);
#pragma omp parallel for schedule(dynamic, 8) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (int w = 0; w < n; ++w) {
    if (auto move = best_move_serial(state, w)) gains[w] = move->delta;
  }
  return gains;
#endif
}

}  // namespace kernels

std::optional<Move> best_response(const GameState& state, int worker,
                                  int threads) {
  if (threads == 1) return kernels::best_move_serial(state, worker);
  return kernels::best_move_omp(state, worker, threads);
}

void apply_move(GameState& state, const Move& move) {
  const int old_task = state.strategy[move.worker];
  if (move.had_old_pair != (old_task != kNullTask)) {
    throw std::invalid_argument("apply_move: move is stale for this state");
  }

  for (const auto& m : state.pairs[move.target].members) {
    state.strategy[m.worker] = kNullTask;
  }
  if (move.had_old_pair) {
    for (const auto& m : state.pairs[old_task].members) {
      state.strategy[m.worker] = kNullTask;
    }
  }

  auto& target = state.pairs[move.target];
  state.potential -= target.revenue;
  target.members = move.target_members;
  target.budget_left = move.target_budget_left;
  target.revenue = members_revenue(target.members);
  state.potential += target.revenue;
  for (const auto& m : target.members) state.strategy[m.worker] = move.target;

  if (move.had_old_pair) {
    auto& old_pair = state.pairs[old_task];
    state.potential -= old_pair.revenue;
    old_pair.members = move.old_members;
    old_pair.budget_left = move.old_budget_left;
    old_pair.revenue = members_revenue(old_pair.members);
    state.potential += old_pair.revenue;
    for (const auto& m : old_pair.members) state.strategy[m.worker] = old_task;
  }
}

Money apply_move(GameState& state, int worker, int target) {
  std::optional<Move> move = kernels::evaluate_move(state, worker, target);
  if (!move || move->delta < 1) {
    throw std::invalid_argument(
        "apply_move: target is not a strictly improving best-response move");
  }
  apply_move(state, *move);
  return move->delta;
}

bool is_nash(const GameState& state, int threads) {
  if (threads == 1) return kernels::nash_scan_serial(state);
  return kernels::nash_scan_omp(state, threads);
}

SolveResult solve_ebgt(const Instance& instance, const GameConfig& cfg) {
  const CompiledInstance ci = CompiledInstance::build(instance);
  const auto start = Clock::now();

  GameState state = init_game(ci);

  long long cap = cfg.round_cap;
  if (cap <= 0) {
    Money optimum_bound = 0;
    for (int t = 0; t < ci.num_tasks(); ++t) {
      optimum_bound += std::max<Money>(0, ci.revenue(ci.task_fee_sum[t], 0.0));
    }
    cap = 10 * optimum_bound + 10;
  }

  long long rounds = 0;
  long long moves = 0;
  bool certified = false;
  while (rounds < cap) {
    ++rounds;
    long long changed = 0;
    for (int w : ci.workers_by_rank) {
      std::optional<Move> move = best_response(state, w, cfg.threads);
      if (!move) continue;
      apply_move(state, *move);
      ++moves;
      ++changed;
      if (cfg.validate_each_move) {
        const Matching snapshot = to_matching(state);
        if (!validate_matching(snapshot, instance).ok()) {
          throw std::logic_error(
              "solve_ebgt: infeasible state after an applied move");
        }
      }
    }
    if (changed == 0) {
      // A pass with no applied move is exactly the exhaustive deviation
      // scan coming back empty.
      certified = true;
      break;
    }
  }

  SolveResult result;
  result.matching = to_matching(state);
  result.report.algorithm = "ebgt";
  result.report.revenue = state.potential;
  result.report.matched_tasks = static_cast<int>(result.matching.pairs.size());
  result.report.total_tasks = ci.num_tasks();
  result.report.rounds = rounds;
  result.report.improving_moves = moves;
  result.report.nash_checked = true;
  result.report.nash_certified = certified;
  result.report.wall_millis = millis_since(start);
  result.report.feasible = validate_matching(result.matching, instance).ok();
  return result;
}

std::optional<std::string> best_response_task(const GameState& state,
                                              const std::string& worker_id) {
  const auto move =
      kernels::best_move_serial(state, state.ci->worker_index(worker_id));
  if (!move) return std::nullopt;
  return state.ci->task_ids[move->target];
}

Money marginal_contribution(const GameState& state, const std::string& task_id,
                            const std::string& worker_id) {
  return marginal_contribution(state, state.ci->task_index(task_id),
                               state.ci->worker_index(worker_id));
}

Money apply_move(GameState& state, const std::string& worker_id,
                 const std::string& task_id) {
  return apply_move(state, state.ci->worker_index(worker_id),
                    state.ci->task_index(task_id));
}

}  // namespace staeb
