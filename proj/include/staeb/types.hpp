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

#ifndef STAEB_TYPES_HPP
#define STAEB_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace staeb {

/// Platform money on an integer grid: every amount is stored premultiplied
/// by Params::money_scale. Keeping revenues integral makes potential
/// comparisons exact, which the best-response solver relies on for
/// termination.
using Money = std::int64_t;

struct Point {
  double x = 0.0;  // meters
  double y = 0.0;  // meters
  bool operator==(const Point&) const = default;
};

struct BoundingBox {
  Point min;
  Point max;
  bool operator==(const BoundingBox&) const = default;
};

/// Skill identifiers mapped to their fee in money units (not yet scaled).
/// Fees must be strictly positive; the map keeps ids unique and ordered.
struct SkillCatalog {
  std::map<std::string, double> fees;
  bool operator==(const SkillCatalog&) const = default;
};

struct Task {
  std::string id;
  Point location;
  double arrival_time = 0.0;           // seconds
  double fixed_radius = 0.0;           // r_t, meters
  double extra_budget = 0.0;           // b_t, meters
  std::vector<std::string> required_skills;  // nonempty, sorted, unique
  bool operator==(const Task&) const = default;
};

struct Worker {
  std::string id;
  Point location;
  double arrival_time = 0.0;  // seconds
  std::vector<std::string> skills;  // nonempty, sorted, unique
  bool operator==(const Worker&) const = default;
};

/// Revenue-model parameters. alpha scales skill income, beta scales the
/// per-meter subsidy for travel beyond a task's fixed radius. money_scale
/// is the integer-grid multiplier d.
struct Params {
  double alpha = 0.5;             // in (0,1)
  double beta = 0.5;              // in (0,1)
  std::int64_t money_scale = 1000;  // d >= 1
  bool operator==(const Params&) const = default;
};

/// One member of a valid worker set: the worker, the required skills it is
/// credited with (its slice of the coverage partition), and its extra
/// travel cost beyond the task's fixed radius.
struct PairMember {
  std::string worker_id;
  std::vector<std::string> credited_skills;  // nonempty, sorted
  double extra_cost = 0.0;                   // meters
  bool operator==(const PairMember&) const = default;
};

/// A task together with its valid worker set. The members' credited skills
/// partition the task's required skills: every required skill is credited
/// to exactly one member, fixed at assignment time.
struct PairAssignment {
  std::string task_id;
  std::vector<PairMember> members;
  bool operator==(const PairAssignment&) const = default;
};

/// A feasible matching: disjoint valid worker sets, at most one per task.
/// Workers not appearing in any pair are idle (the null task).
struct Matching {
  std::vector<PairAssignment> pairs;
  std::vector<std::string> unassigned_workers;
  bool operator==(const Matching&) const = default;
};

struct Instance {
  SkillCatalog catalog;
  std::vector<Task> tasks;
  std::vector<Worker> workers;
  Params params;
  std::optional<BoundingBox> bounding_box;
  bool operator==(const Instance&) const = default;
};

enum class ViolationCode {
  kUncoveredSkill,
  kBudgetExceeded,
  kRedundantWorker,
  kDuplicateWorker,
  kRangeExceeded,
};

const char* to_string(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Thrown by revenue functions when handed a structurally invalid pair or
/// matching; carries the full list of violated invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Thrown when a persisted document does not match the expected schema.
/// The message names the offending field path.
class SchemaError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the exact oracle when an instance exceeds its size or time
/// limits; callers fall back to heuristic-only comparison.
class OracleOverflow : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural checks for an instance: resolvable skills, unique ids,
/// positive fees, parameter ranges. Returns one message per problem.
std::vector<std::string> instance_check(const Instance& instance);

/// Sorts pairs by task id, members by worker id, and skill lists
/// lexicographically so equal matchings serialize identically.
void canonicalize(Matching& matching);

}  // namespace staeb

#endif  // STAEB_TYPES_HPP
