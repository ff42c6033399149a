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

#ifndef STAEB_KERNELS_HPP
#define STAEB_KERNELS_HPP

#include <optional>
#include <vector>

#include "staeb/game.hpp"

// Data-parallel inner loops of the game solver. Moves are applied strictly
// sequentially (the potential argument needs it), but evaluating candidate
// deviations against a frozen state is read-only and parallelizes freely.
// Every OpenMP kernel has a serial reference with bit-identical results;
// the tests compare them and tools/kernel_bench times them.

namespace staeb::kernels {

/// Evaluates one hypothetical deviation of `worker` to `target` against
/// the frozen state: deterministic rebuild of the target pair (mover
/// forced in first) plus repair of the mover's previous pair. Returns
/// nothing when the rebuild cannot cover the target's skills.
std::optional<Move> evaluate_move(const GameState& state, int worker,
                                  int target);

/// argmax over the worker's candidate targets, serial loop in ascending
/// task-id order. Ties prefer the earlier task id. Only strictly positive
/// deltas qualify.
std::optional<Move> best_move_serial(const GameState& state, int worker);

/// Same contract, candidate targets evaluated in parallel.
std::optional<Move> best_move_omp(const GameState& state, int worker,
                                  int threads);

/// True iff no worker has a strictly improving move. The OpenMP variant
/// scans workers in parallel with early bail-out.
bool nash_scan_serial(const GameState& state);
bool nash_scan_omp(const GameState& state, int threads);

/// Best response of every worker against the same frozen state (the
/// benchmark kernel; also handy for inspecting near-equilibria).
/// result[w] is the best delta for worker w, 0 when none.
std::vector<Money> deviation_gain_scan_serial(const GameState& state);
std::vector<Money> deviation_gain_scan_omp(const GameState& state,
                                           int threads);

}  // namespace staeb::kernels

#endif  // STAEB_KERNELS_HPP
