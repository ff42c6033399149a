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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "staeb/core.hpp"
#include "staeb/greedy.hpp"
#include "staeb/instance_io.hpp"
#include "staeb/oracle.hpp"
#include "test_util.hpp"

using namespace staeb;

namespace {

std::set<std::string> member_ids(const PairAssignment& pair) {
  std::set<std::string> out;
  for (const auto& m : pair.members) out.insert(m.worker_id);
  return out;
}

const PairAssignment* pair_of(const Matching& m, const std::string& task_id) {
  for (const auto& p : m.pairs) {
    if (p.task_id == task_id) return &p;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("rank_tasks orders by average skill fee") {
  const Instance inst = testutil::i0();
  // t2 averages 30, t1 averages 15.
  CHECK(rank_tasks(inst.tasks, inst.catalog, inst.params) ==
        std::vector<std::string>{"t2", "t1"});

  Instance tie = testutil::i0();
  tie.tasks[1].required_skills = {"s1", "s2"};  // both average 15 now
  CHECK(rank_tasks(tie.tasks, tie.catalog, tie.params) ==
        std::vector<std::string>{"t1", "t2"});

  CHECK(rank_tasks({inst.tasks[0]}, inst.catalog, inst.params) ==
        std::vector<std::string>{"t1"});
}

TEST_CASE("assign_task_greedy picks the widest coverage first") {
  const Instance inst = testutil::i0();
  const GridIndex index = build_index(inst.workers, default_cell_size(inst));
  const std::set<std::string> everyone = {"w1", "w2", "w3", "w4"};

  const auto pair =
      assign_task_greedy(inst.tasks[0], everyone, index, inst, {});
  REQUIRE(pair.has_value());
  CHECK(member_ids(*pair) == std::set<std::string>{"w1"});
  CHECK(pair->members[0].credited_skills ==
        std::vector<std::string>{"s1", "s2"});
  CHECK(pair->members[0].extra_cost == 0.0);
}

TEST_CASE("assign_task_greedy composes single-skill workers within budget") {
  const Instance inst = testutil::i0();
  const GridIndex index = build_index(inst.workers, default_cell_size(inst));

  const auto pair =
      assign_task_greedy(inst.tasks[0], {"w2", "w4"}, index, inst, {});
  REQUIRE(pair.has_value());
  CHECK(member_ids(*pair) == std::set<std::string>{"w2", "w4"});
  double extra_total = 0.0;
  for (const auto& m : pair->members) extra_total += m.extra_cost;
  CHECK(extra_total == 2.0);
  CHECK(validate_pair(inst.tasks[0], *pair, inst).ok());
}

TEST_CASE("assign_task_greedy returns nothing on uncoverable skills") {
  const Instance inst = testutil::i0();
  const GridIndex index = build_index(inst.workers, default_cell_size(inst));
  const std::set<std::string> available = {"w1", "w2", "w4"};
  CHECK(!assign_task_greedy(inst.tasks[1], available, index, inst, {})
             .has_value());
}

TEST_CASE("solve_greedy finds the optimum on the canonical instance") {
  const Instance inst = testutil::i0();
  const SolveResult result = solve_greedy(inst);
  CHECK(result.report.revenue == 30000);
  CHECK(result.report.matched_tasks == 2);
  CHECK(result.report.feasible);
  REQUIRE(pair_of(result.matching, "t1") != nullptr);
  CHECK(member_ids(*pair_of(result.matching, "t1")) ==
        std::set<std::string>{"w1"});
  CHECK(member_ids(*pair_of(result.matching, "t2")) ==
        std::set<std::string>{"w3"});
}

TEST_CASE("solve_greedy with no workers yields an empty matching") {
  Instance inst = testutil::i0();
  inst.workers.clear();
  const SolveResult result = solve_greedy(inst);
  CHECK(result.matching.pairs.empty());
  CHECK(result.report.revenue == 0);
  CHECK(result.report.feasible);
}

TEST_CASE("solve_greedy falls back to split coverage without w1") {
  Instance inst = testutil::i0();
  inst.workers.erase(inst.workers.begin());  // drop w1
  const SolveResult result = solve_greedy(inst);
  CHECK(result.report.revenue == 29000);
  CHECK(member_ids(*pair_of(result.matching, "t1")) ==
        std::set<std::string>{"w2", "w4"});
}

TEST_CASE("a failed task releases its tentative workers") {
  // t_big needs an uncoverable skill after soaking up w1, which must then
  // still be available to t_small.
  Instance inst = testutil::i0();
  Task big;
  big.id = "t0_big";
  big.location = {0, 0};
  big.fixed_radius = 50;
  big.extra_budget = 0;
  big.required_skills = {"s1", "s2", "s3"};  // s3 holder w3 is 10.77m away... in range
  inst.tasks.push_back(big);
  // Make s3 genuinely uncoverable for t0_big by moving w3 out of reach.
  for (auto& w : inst.workers) {
    if (w.id == "w3") w.location = {1000, 1000};
  }
  // t2 now also fails (w3 out of its range): only t1 can match.
  const SolveResult result = solve_greedy(inst);
  REQUIRE(pair_of(result.matching, "t0_big") == nullptr);
  REQUIRE(pair_of(result.matching, "t1") != nullptr);
  CHECK(member_ids(*pair_of(result.matching, "t1")) ==
        std::set<std::string>{"w1"});
  const auto& unassigned = result.matching.unassigned_workers;
  CHECK(std::count(unassigned.begin(), unassigned.end(), "w2") == 1);
  CHECK(std::count(unassigned.begin(), unassigned.end(), "w3") == 1);
  CHECK(std::count(unassigned.begin(), unassigned.end(), "w4") == 1);
}

TEST_CASE("greedy is deterministic byte for byte") {
  GenConfig cfg;
  cfg.num_tasks = 30;
  cfg.num_workers = 80;
  cfg.num_skills = 6;
  cfg.box = {{0, 0}, {4000, 4000}};
  cfg.seed = 17;
  const Instance inst = generate_instance(cfg);
  const SolveResult a = solve_greedy(inst);
  const SolveResult b = solve_greedy(inst);
  CHECK(matching_to_json(a.matching, a.report.revenue) ==
        matching_to_json(b.matching, b.report.revenue));
}

TEST_CASE("compiled greedy equals the public-operation reference path") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    GenConfig cfg;
    cfg.num_tasks = 12;
    cfg.num_workers = 36;
    cfg.num_skills = 6;
    cfg.box = {{0, 0}, {5000, 5000}};
    cfg.task_skills_max = 3;
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const SolveResult fast = solve_greedy(inst);
    const SolveResult reference = solve_greedy_reference(inst);
    REQUIRE(matching_to_json(fast.matching, 0) ==
            matching_to_json(reference.matching, 0));
    REQUIRE(fast.report.revenue == reference.report.revenue);
  }
}

TEST_CASE("greedy output is always feasible and oracle-dominated") {
  OracleLimits limits;
  limits.max_tasks = 4;
  limits.max_workers = 8;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig cfg;
    cfg.num_tasks = 3;
    cfg.num_workers = 7;
    cfg.num_skills = 4;
    cfg.task_skills_max = 3;
    cfg.worker_skills_max = 2;
    cfg.box = {{0, 0}, {3000, 3000}};
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    const SolveResult greedy = solve_greedy(inst);
    REQUIRE(greedy.report.feasible);
    const SolveResult exact = solve_exact(inst, limits);
    REQUIRE(exact.report.revenue >= greedy.report.revenue);
  }
}
