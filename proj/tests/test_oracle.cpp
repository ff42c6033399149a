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
#include <map>
#include <set>

#include "staeb/core.hpp"
#include "staeb/game.hpp"
#include "staeb/greedy.hpp"
#include "staeb/instance_io.hpp"
#include "staeb/oracle.hpp"
#include "staeb/rng.hpp"
#include "test_util.hpp"

using namespace staeb;

namespace {

// A pair rendered as {worker -> credited skills} for order-insensitive
// comparison.
std::map<std::string, std::set<std::string>> shape_of(
    const PairAssignment& pair) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& m : pair.members) {
    out[m.worker_id] = {m.credited_skills.begin(), m.credited_skills.end()};
  }
  return out;
}

GenConfig tiny_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.num_tasks = 3;
  cfg.num_workers = 7;
  cfg.num_skills = 4;
  cfg.task_skills_max = 3;
  cfg.worker_skills_max = 2;
  cfg.box = {{0, 0}, {3000, 3000}};
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("solve_random with no workers") {
  Instance inst = testutil::i0();
  inst.workers.clear();
  const SolveResult result = solve_random(inst, 7);
  CHECK(result.matching.pairs.empty());
  CHECK(result.report.revenue == 0);
  CHECK(result.report.feasible);
}

TEST_CASE("solve_random is feasible and bounded by the optimum") {
  const Instance inst = testutil::i0();
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const SolveResult result = solve_random(inst, seed);
    CHECK(result.report.feasible);
    CHECK(result.report.revenue <= 30000);
  }
}

TEST_CASE("solve_random is deterministic per seed") {
  const Instance inst = generate_instance(tiny_config(4));
  const SolveResult a = solve_random(inst, 11);
  const SolveResult b = solve_random(inst, 11);
  CHECK(matching_to_json(a.matching, a.report.revenue) ==
        matching_to_json(b.matching, b.report.revenue));
}

TEST_CASE("random stays below greedy on average") {
  long long random_total = 0;
  long long greedy_total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenConfig cfg = tiny_config(seed);
    cfg.num_tasks = 6;
    cfg.num_workers = 18;
    cfg.beta = 0.05;
    const Instance inst = generate_instance(cfg);
    random_total += solve_random(inst, seed).report.revenue;
    greedy_total += solve_greedy(inst).report.revenue;
  }
  CHECK(random_total <= greedy_total);
}

TEST_CASE("enumerate_valid_sets lists the canonical sets of t2") {
  const Instance inst = testutil::i0();
  const auto sets = enumerate_valid_sets(inst.tasks[1], inst, {});
  REQUIRE(sets.size() == 1);
  CHECK(shape_of(sets[0]) ==
        std::map<std::string, std::set<std::string>>{{"w3", {"s3"}}});
}

TEST_CASE("enumerate_valid_sets lists the canonical sets of t1") {
  const Instance inst = testutil::i0();
  const auto sets = enumerate_valid_sets(inst.tasks[0], inst, {});
  std::set<std::map<std::string, std::set<std::string>>> shapes;
  for (const auto& s : sets) shapes.insert(shape_of(s));

  const std::set<std::map<std::string, std::set<std::string>>> expected = {
      {{"w1", {"s1", "s2"}}},
      {{"w2", {"s2"}}, {"w4", {"s1"}}},
      {{"w1", {"s1"}}, {"w2", {"s2"}}},
      {{"w1", {"s2"}}, {"w4", {"s1"}}},
  };
  CHECK(shapes == expected);
  for (const auto& s : sets) {
    CHECK(validate_pair(inst.tasks[0], s, inst).ok());
  }
}

TEST_CASE("enumerate_valid_sets of an uncoverable task is empty") {
  Instance inst = testutil::i0();
  inst.tasks[1].required_skills = {"s2", "s3"};
  inst.workers[2].location = {900, 900};  // w3 leaves t2's reach
  const auto sets = enumerate_valid_sets(inst.tasks[1], inst, {});
  CHECK(sets.empty());
}

TEST_CASE("every enumerated member carries at least one credited skill") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(tiny_config(seed));
    for (const auto& task : inst.tasks) {
      for (const auto& set : enumerate_valid_sets(task, inst, {})) {
        REQUIRE(validate_pair(task, set, inst).ok());
        for (const auto& m : set.members) {
          REQUIRE(!m.credited_skills.empty());
        }
      }
    }
  }
}

TEST_CASE("enumeration respects the valid-set limit") {
  const Instance inst = testutil::i0();
  OracleLimits limits;
  limits.max_valid_sets_per_task = 2;  // t1 has 4 valid sets
  CHECK_THROWS_AS(enumerate_valid_sets(inst.tasks[0], inst, limits),
                  OracleOverflow);
}

TEST_CASE("solve_exact finds the canonical optimum") {
  const Instance inst = testutil::i0();
  const SolveResult result = solve_exact(inst, {});
  CHECK(result.report.revenue == 30000);
  CHECK(result.report.feasible);
  REQUIRE(result.matching.pairs.size() == 2);
  CHECK(shape_of(result.matching.pairs[0]) ==
        std::map<std::string, std::set<std::string>>{{"w1", {"s1", "s2"}}});
  CHECK(shape_of(result.matching.pairs[1]) ==
        std::map<std::string, std::set<std::string>>{{"w3", {"s3"}}});
}

TEST_CASE("solve_exact on an empty instance") {
  Instance inst = testutil::i0();
  inst.tasks.clear();
  const SolveResult result = solve_exact(inst, {});
  CHECK(result.matching.pairs.empty());
  CHECK(result.report.revenue == 0);
}

TEST_CASE("solve_exact rejects over-limit instances") {
  const Instance inst = generate_instance(tiny_config(1));
  OracleLimits limits;
  limits.max_tasks = 2;  // instance has 3
  CHECK_THROWS_AS(solve_exact(inst, limits), OracleOverflow);
}

TEST_CASE("the oracle dominates every heuristic") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = generate_instance(tiny_config(seed));
    const Money exact = solve_exact(inst, {}).report.revenue;
    CHECK(exact >= solve_greedy(inst).report.revenue);
    CHECK(exact >= solve_ebgt(inst).report.revenue);
    CHECK(exact >= solve_random(inst, seed).report.revenue);
  }
}

TEST_CASE("branch and bound equals brute force on random conflict graphs") {
  Rng rng(123);
  for (int round = 0; round < 50; ++round) {
    const int n = 1 + static_cast<int>(rng.below(14));
    std::vector<detail::MwisVertex> vertices;
    for (int v = 0; v < n; ++v) {
      detail::MwisVertex vertex;
      vertex.task = static_cast<int>(rng.below(4));
      vertex.worker_mask = rng.next() & 0xff;
      vertex.weight = 1 + static_cast<Money>(rng.below(1000));
      vertices.push_back(vertex);
    }

    const std::vector<int> chosen =
        detail::max_weight_independent_set(vertices, 10.0);
    Money chosen_weight = 0;
    for (int v : chosen) chosen_weight += vertices[v].weight;

    // Exhaustive subset scan.
    Money best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Money weight = 0;
      std::uint64_t workers = 0;
      std::uint64_t tasks = 0;
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) {
        if (!(mask >> v & 1)) continue;
        if ((workers & vertices[v].worker_mask) != 0 ||
            (tasks >> vertices[v].task & 1) != 0) {
          ok = false;
          break;
        }
        workers |= vertices[v].worker_mask;
        tasks |= std::uint64_t{1} << vertices[v].task;
        weight += vertices[v].weight;
      }
      if (ok) best = std::max(best, weight);
    }
    REQUIRE(chosen_weight == best);
  }
}
