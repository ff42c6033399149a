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

#ifndef STAEB_INSTANCE_IO_HPP
#define STAEB_INSTANCE_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "staeb/types.hpp"

namespace staeb {

/// Synthetic-instance knobs. Defaults reproduce the benchmark grid's
/// center cell: 1000 tasks, 3000 workers, 12 skills, r = 1000 m,
/// b uniform in [800, 1000] m, 10 km x 10 km area.
struct GenConfig {
  int num_tasks = 1000;
  int num_workers = 3000;
  int num_skills = 12;
  double fixed_radius = 1000.0;
  double budget_min = 800.0;
  double budget_max = 1000.0;
  BoundingBox box{{0.0, 0.0}, {10000.0, 10000.0}};
  int fee_min = 10;  // money units, drawn as uniform integers
  int fee_max = 50;
  int task_skills_min = 1;
  int task_skills_max = 4;
  int worker_skills_min = 1;
  int worker_skills_max = 3;
  double alpha = 0.5;
  double beta = 0.5;
  std::int64_t money_scale = 1000;
  std::uint64_t seed = 1;
};

/// Validates a generation config; returns one message per problem.
std::vector<std::string> gen_config_check(const GenConfig& cfg);

/// Deterministic per seed: locations uniform in the box, arrivals uniform
/// over a day, per-task budgets uniform in [budget_min, budget_max],
/// integer fees, uniform-size uniform skill subsets.
Instance generate_instance(const GenConfig& cfg);

/// Trip-log ingestion: one task per record at the pickup location/time and
/// one worker at the dropoff location/time. Skills, fees, radii and
/// budgets do not exist in trip data and are synthesized with the same
/// rules as generate_instance, driven by cfg.seed.
struct IngestResult {
  Instance instance;
  std::size_t skipped_rows = 0;
};
IngestResult ingest_trips(std::istream& records, const GenConfig& cfg);

struct LoadedInstance {
  Instance instance;
  std::vector<std::string> warnings;  // e.g. ignored unknown fields
};

/// Versioned JSON interchange (schema_version 1). Loading rejects missing
/// or ill-typed fields with the exact field path; unknown fields are
/// ignored with a warning. save/load round-trips identically.
void save_instance(const Instance& instance, const std::string& path);
std::string instance_to_json(const Instance& instance);
LoadedInstance load_instance(const std::string& path);
LoadedInstance instance_from_json(const std::string& text);

/// Canonical matching serialization (pairs sorted by task id, members by
/// worker id); byte-stable for regression goldens.
std::string matching_to_json(const Matching& matching, Money revenue_scaled);
void save_matching(const Matching& matching, Money revenue_scaled,
                   const std::string& path);

}  // namespace staeb

#endif  // STAEB_INSTANCE_IO_HPP
