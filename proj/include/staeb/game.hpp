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

#ifndef STAEB_GAME_HPP
#define STAEB_GAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "staeb/compiled.hpp"
#include "staeb/report.hpp"
#include "staeb/types.hpp"

namespace staeb {

/// Strategy of an idle worker.
inline constexpr int kNullTask = -1;

struct GameConfig {
  /// Cap on best-response passes. 0 derives the bound from the scaled
  /// optimum estimate 10 * sum over tasks of alpha-weighted fee sums; the
  /// potential rises by at least one grid unit per applied move, so the
  /// cap is a guard, not a tuning knob.
  long long round_cap = 0;
  /// Threads for the move-evaluation kernels; 1 = serial reference path.
  int threads = 1;
  /// Debug: run validate_matching after every applied move.
  bool validate_each_move = false;
};

/// Joint strategy plus the derived pair structures. The potential is
/// maintained incrementally and equals the matching revenue at all times.
struct GameState {
  struct Member {
    int worker;
    SkillMask credited;
    double extra;
    Money revenue;
  };
  struct TaskPair {
    std::vector<Member> members;  // pick order; empty = unmatched
    double budget_left = 0.0;
    Money revenue = 0;
    bool matched() const { return !members.empty(); }
  };

  const CompiledInstance* ci = nullptr;
  std::vector<int> strategy;    // worker -> task index or kNullTask
  std::vector<TaskPair> pairs;  // by task index
  Money potential = 0;
};

/// A strictly improving unilateral move together with the deterministic
/// rebuild/repair plans realizing it. `delta` is the exact change of the
/// potential: (rebuilt target revenue - its previous revenue) plus
/// (repaired or dissolved previous pair revenue - its previous revenue).
struct Move {
  int worker = -1;
  int target = kNullTask;
  Money delta = 0;
  std::vector<GameState::Member> target_members;
  double target_budget_left = 0.0;
  bool had_old_pair = false;
  bool old_dissolved = false;
  std::vector<GameState::Member> old_members;
  double old_budget_left = 0.0;
};

/// Per-skill revenue-greedy initialization over tasks in input order.
/// Skills iterate in ascending index order; each pick is the candidate
/// maximizing the revenue of its credited block S_w ∩ (remaining skills),
/// strictly negative blocks skipped so the initial potential is
/// nonnegative; a task with an uncoverable skill releases its tentative
/// members. The caller keeps `ci` alive for the state's lifetime.
GameState init_game(const CompiledInstance& ci);

/// Rebuilds a state from an explicit matching (validated first); used to
/// probe specific strategies in tests.
GameState state_from_matching(const CompiledInstance& ci, const Matching& m);

Matching to_matching(const GameState& state);

/// The potential function: total platform revenue, scaled.
Money potential(const GameState& state);

/// Recomputed from scratch by summing member revenues; equals
/// potential(state) exactly on the integer grid.
Money recompute_potential(const GameState& state);

/// Member-wise marginal contribution with everyone else's credited skills
/// held fixed: the worker's own credited revenue when it is a member of
/// the task's pair, zero otherwise.
Money marginal_contribution(const GameState& state, int task, int worker);

/// Best strictly improving move for the worker over its in-range,
/// skill-overlapping tasks, evaluated under the rebuild/repair rule.
/// Returns nothing when no candidate target raises the potential.
/// `threads` > 1 evaluates candidate targets in parallel; the result is
/// identical to the serial scan.
std::optional<Move> best_response(const GameState& state, int worker,
                                  int threads = 1);

/// Commits a move produced by best_response.
void apply_move(GameState& state, const Move& move);

/// Re-evaluates worker -> target and commits it. Throws
/// std::invalid_argument unless the move strictly increases the
/// potential (the monotonicity guard). Returns the exact delta.
Money apply_move(GameState& state, int worker, int target);

/// Exhaustive deviation scan: true iff best_response returns nothing for
/// every worker.
bool is_nash(const GameState& state, int threads = 1);

/// Full EBGT solve: initialization, then sequential best-response passes
/// in ascending worker-id order until a pass applies no move (Nash) or
/// the round cap is hit.
SolveResult solve_ebgt(const Instance& instance, const GameConfig& cfg = {});

// Id-typed conveniences for tests and tools.
std::optional<std::string> best_response_task(const GameState& state,
                                              const std::string& worker_id);
Money marginal_contribution(const GameState& state, const std::string& task_id,
                            const std::string& worker_id);
Money apply_move(GameState& state, const std::string& worker_id,
                 const std::string& task_id);

}  // namespace staeb

#endif  // STAEB_GAME_HPP
