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

#include "staeb/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "staeb/core.hpp"

namespace staeb {

namespace {

// Tolerance for comparing a stored extra cost against the recomputed one.
constexpr double kExtraCostSlack = 1e-9;

std::int64_t cell_coord(double v, double cell_size) {
  return static_cast<std::int64_t>(std::floor(v / cell_size));
}

std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(iy));
}

}  // namespace

GridIndex::GridIndex(std::vector<Worker> workers, double cell_size)
    : cell_size_(cell_size), workers_(std::move(workers)) {
  if (!(cell_size_ > 0.0)) {
    throw std::invalid_argument("GridIndex: cell_size must be > 0");
  }
  for (int i = 0; i < static_cast<int>(workers_.size()); ++i) {
    const Point p = workers_[i].location;
    buckets_[cell_key(cell_coord(p.x, cell_size_), cell_coord(p.y, cell_size_))]
        .push_back(i);
  }
}

std::vector<int> GridIndex::query_radius(Point center, double radius) const {
  std::vector<int> hits;
  if (!(radius >= 0.0)) return hits;
  const std::int64_t x0 = cell_coord(center.x - radius, cell_size_);
  const std::int64_t x1 = cell_coord(center.x + radius, cell_size_);
  const std::int64_t y0 = cell_coord(center.y - radius, cell_size_);
  const std::int64_t y1 = cell_coord(center.y + radius, cell_size_);
  for (std::int64_t ix = x0; ix <= x1; ++ix) {
    for (std::int64_t iy = y0; iy <= y1; ++iy) {
      const auto it = buckets_.find(cell_key(ix, iy));
      if (it == buckets_.end()) continue;
      for (int w : it->second) {
        if (travel_cost(center, workers_[w].location) <= radius) {
          hits.push_back(w);
        }
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

GridIndex build_index(std::span<const Worker> workers, double cell_size) {
  return GridIndex(std::vector<Worker>(workers.begin(), workers.end()),
                   cell_size);
}

double default_cell_size(const Instance& instance) {
  double max_reach = 0.0;
  for (const auto& t : instance.tasks) {
    max_reach = std::max(max_reach, t.fixed_radius + t.extra_budget);
  }
  return max_reach > 0.0 ? max_reach : 1.0;
}

std::vector<std::string> candidate_workers(
    const GridIndex& index, const Task& task,
    const std::set<std::string>& remaining_skills, double remaining_budget,
    const std::set<std::string>& available) {
  std::vector<std::string> result;
  const double reach = task.fixed_radius + remaining_budget;
  for (int i : index.query_radius(task.location, reach)) {
    const Worker& w = index.workers()[i];
    if (!available.contains(w.id)) continue;
    const bool overlaps =
        std::any_of(w.skills.begin(), w.skills.end(),
                    [&](const std::string& s) {
                      return remaining_skills.contains(s);
                    });
    if (overlaps) result.push_back(w.id);
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

const Task* lookup_task(const Instance& instance, const std::string& id) {
  for (const auto& t : instance.tasks) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const Worker* lookup_worker(const Instance& instance, const std::string& id) {
  for (const auto& w : instance.workers) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

}  // namespace

ValidationReport validate_pair(const Task& task, const PairAssignment& pair,
                               const Instance& instance) {
  ValidationReport report;
  auto flag = [&](ViolationCode code, std::string message) {
    report.violations.push_back({code, std::move(message)});
  };

  if (pair.members.empty()) {
    flag(ViolationCode::kUncoveredSkill,
         "task '" + task.id + "': empty worker set covers nothing");
    return report;
  }

  std::set<std::string> required(task.required_skills.begin(),
                                 task.required_skills.end());
  std::map<std::string, int> credit_count;
  std::set<std::string> member_ids;
  double extra_sum = 0.0;

  for (const auto& member : pair.members) {
    const Worker* worker = lookup_worker(instance, member.worker_id);
    if (worker == nullptr) {
      throw std::invalid_argument("validate_pair: unknown worker id '" +
                                  member.worker_id + "'");
    }
    if (!member_ids.insert(member.worker_id).second) {
      flag(ViolationCode::kDuplicateWorker,
           "worker '" + member.worker_id + "' listed twice in task '" +
               task.id + "'");
    }
    if (member.credited_skills.empty()) {
      flag(ViolationCode::kRedundantWorker,
           "worker '" + member.worker_id + "' credited with no skill of task '" +
               task.id + "'");
    }
    const std::set<std::string> held(worker->skills.begin(),
                                     worker->skills.end());
    for (const auto& skill : member.credited_skills) {
      if (!required.contains(skill)) {
        flag(ViolationCode::kRedundantWorker,
             "worker '" + member.worker_id + "' credited with '" + skill +
                 "' which task '" + task.id + "' does not require");
        continue;
      }
      if (!held.contains(skill)) {
        flag(ViolationCode::kUncoveredSkill,
             "worker '" + member.worker_id + "' credited with '" + skill +
                 "' which it does not hold");
        continue;
      }
      ++credit_count[skill];
    }

    const double cost = travel_cost(task.location, worker->location);
    if (cost > task.fixed_radius + task.extra_budget) {
      flag(ViolationCode::kRangeExceeded,
           "worker '" + member.worker_id + "' at cost " + std::to_string(cost) +
               " beyond reach of task '" + task.id + "'");
    }
    const double expected_extra = extra_cost(task, *worker);
    if (std::abs(member.extra_cost - expected_extra) > kExtraCostSlack) {
      flag(ViolationCode::kRangeExceeded,
           "worker '" + member.worker_id + "': stored extra cost " +
               std::to_string(member.extra_cost) + " disagrees with geometry " +
               std::to_string(expected_extra));
    }
    extra_sum += expected_extra;
  }

  for (const auto& skill : required) {
    const auto it = credit_count.find(skill);
    if (it == credit_count.end()) {
      flag(ViolationCode::kUncoveredSkill,
           "skill '" + skill + "' of task '" + task.id + "' is not covered");
    } else if (it->second > 1) {
      flag(ViolationCode::kDuplicateWorker,
           "skill '" + skill + "' of task '" + task.id +
               "' credited to multiple workers");
    }
  }

  if (extra_sum > task.extra_budget) {
    flag(ViolationCode::kBudgetExceeded,
         "task '" + task.id + "': total extra cost " +
             std::to_string(extra_sum) + " exceeds budget " +
             std::to_string(task.extra_budget));
  }
  return report;
}

ValidationReport validate_matching(const Matching& matching,
                                   const Instance& instance) {
  ValidationReport report;
  std::set<std::string> seen_tasks;
  std::set<std::string> seen_workers;
  for (const auto& pair : matching.pairs) {
    const Task* task = lookup_task(instance, pair.task_id);
    if (task == nullptr) {
      throw std::invalid_argument("validate_matching: unknown task id '" +
                                  pair.task_id + "'");
    }
    if (!seen_tasks.insert(pair.task_id).second) {
      report.violations.push_back(
          {ViolationCode::kDuplicateWorker,
           "task '" + pair.task_id + "' has more than one pair"});
    }
    ValidationReport pair_report = validate_pair(*task, pair, instance);
    report.violations.insert(report.violations.end(),
                             pair_report.violations.begin(),
                             pair_report.violations.end());
    for (const auto& member : pair.members) {
      if (!seen_workers.insert(member.worker_id).second) {
        report.violations.push_back(
            {ViolationCode::kDuplicateWorker,
             "worker '" + member.worker_id + "' assigned to multiple tasks"});
      }
    }
  }
  for (const auto& id : matching.unassigned_workers) {
    if (seen_workers.contains(id)) {
      report.violations.push_back(
          {ViolationCode::kDuplicateWorker,
           "worker '" + id + "' both assigned and listed unassigned"});
    }
  }
  return report;
}

}  // namespace staeb
