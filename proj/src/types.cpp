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

#include "staeb/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

namespace staeb {

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::kUncoveredSkill:
      return "UNCOVERED_SKILL";
    case ViolationCode::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
    case ViolationCode::kRedundantWorker:
      return "REDUNDANT_WORKER";
    case ViolationCode::kDuplicateWorker:
      return "DUPLICATE_WORKER";
    case ViolationCode::kRangeExceeded:
      return "RANGE_EXCEEDED";
  }
  return "UNKNOWN";
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << to_string(violations[i].code) << ": " << violations[i].message;
  }
  return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("invalid assignment: " + report.summary()),
      report_(std::move(report)) {}

namespace {

bool finite_point(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void check_skill_list(const std::vector<std::string>& skills,
                      const SkillCatalog& catalog, const std::string& owner,
                      std::vector<std::string>& problems) {
  if (skills.empty()) {
    problems.push_back(owner + ": skill set is empty");
    return;
  }
  std::set<std::string> seen;
  for (const auto& s : skills) {
    if (!seen.insert(s).second) {
      problems.push_back(owner + ": duplicate skill '" + s + "'");
    }
    if (catalog.fees.find(s) == catalog.fees.end()) {
      problems.push_back(owner + ": skill '" + s + "' not in catalog");
    }
  }
}

}  // namespace

std::vector<std::string> instance_check(const Instance& instance) {
  std::vector<std::string> problems;
  if (instance.catalog.fees.empty()) {
    problems.push_back("catalog: no skills");
  }
  for (const auto& [id, fee] : instance.catalog.fees) {
    if (!(fee > 0.0) || !std::isfinite(fee)) {
      problems.push_back("catalog: fee of '" + id + "' must be positive");
    }
  }
  if (instance.catalog.fees.size() > 64) {
    problems.push_back("catalog: more than 64 skills are not supported");
  }
  const Params& p = instance.params;
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
    problems.push_back("params: alpha must lie in (0,1)");
  }
  if (!(p.beta > 0.0 && p.beta < 1.0)) {
    problems.push_back("params: beta must lie in (0,1)");
  }
  if (p.money_scale < 1) {
    problems.push_back("params: money_scale must be >= 1");
  }

  std::unordered_set<std::string> task_ids;
  for (const auto& t : instance.tasks) {
    const std::string owner = "task '" + t.id + "'";
    if (!task_ids.insert(t.id).second) {
      problems.push_back(owner + ": duplicate id");
    }
    if (!finite_point(t.location)) problems.push_back(owner + ": non-finite location");
    if (!(t.fixed_radius >= 0.0)) problems.push_back(owner + ": fixed_radius < 0");
    if (!(t.extra_budget >= 0.0)) problems.push_back(owner + ": extra_budget < 0");
    check_skill_list(t.required_skills, instance.catalog, owner, problems);
  }
  std::unordered_set<std::string> worker_ids;
  for (const auto& w : instance.workers) {
    const std::string owner = "worker '" + w.id + "'";
    if (!worker_ids.insert(w.id).second) {
      problems.push_back(owner + ": duplicate id");
    }
    if (!finite_point(w.location)) problems.push_back(owner + ": non-finite location");
    check_skill_list(w.skills, instance.catalog, owner, problems);
  }
  return problems;
}

void canonicalize(Matching& matching) {
  for (auto& pair : matching.pairs) {
    for (auto& member : pair.members) {
      std::sort(member.credited_skills.begin(), member.credited_skills.end());
    }
    std::sort(pair.members.begin(), pair.members.end(),
              [](const PairMember& a, const PairMember& b) {
                return a.worker_id < b.worker_id;
              });
  }
  std::sort(matching.pairs.begin(), matching.pairs.end(),
            [](const PairAssignment& a, const PairAssignment& b) {
              return a.task_id < b.task_id;
            });
  std::sort(matching.unassigned_workers.begin(),
            matching.unassigned_workers.end());
}

}  // namespace staeb
