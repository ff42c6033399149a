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

#ifndef STAEB_FEASIBILITY_HPP
#define STAEB_FEASIBILITY_HPP

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "staeb/types.hpp"

namespace staeb {

/// Uniform-grid spatial index over a worker snapshot. Immutable after
/// build; concurrent read-only queries are safe.
class GridIndex {
 public:
  GridIndex(std::vector<Worker> workers, double cell_size);

  /// Indices (into the snapshot) of workers within `radius` of `center`,
  /// boundary inclusive, ascending index order. Equivalent to a linear
  /// scan by construction.
  std::vector<int> query_radius(Point center, double radius) const;

  const std::vector<Worker>& workers() const { return workers_; }
  double cell_size() const { return cell_size_; }
  std::size_t bucket_count() const { return buckets_.size(); }

 private:
  double cell_size_;
  std::vector<Worker> workers_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

/// Builds a grid index over the given workers. cell_size must be > 0.
GridIndex build_index(std::span<const Worker> workers, double cell_size);

/// Default cell size for an instance: max fixed radius plus max extra
/// budget, so any reachability query touches at most one ring of cells.
double default_cell_size(const Instance& instance);

/// Workers from `available` holding at least one of `remaining_skills`
/// within travel cost fixed_radius + remaining_budget of the task.
/// Deterministic ascending worker-id order.
std::vector<std::string> candidate_workers(
    const GridIndex& index, const Task& task,
    const std::set<std::string>& remaining_skills, double remaining_budget,
    const std::set<std::string>& available);

/// Checks all pair invariants: coverage partition, nonempty credited sets,
/// duplicate members, budget, per-member range, stored extra costs.
/// Reports every violation, not just the first.
ValidationReport validate_pair(const Task& task, const PairAssignment& pair,
                               const Instance& instance);

/// Validates every pair plus cross-pair worker disjointness and the
/// one-pair-per-task rule.
ValidationReport validate_matching(const Matching& matching,
                                   const Instance& instance);

}  // namespace staeb

#endif  // STAEB_FEASIBILITY_HPP
