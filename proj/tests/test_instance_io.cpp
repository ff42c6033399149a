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

#include <sstream>

#include "staeb/instance_io.hpp"
#include "test_util.hpp"

using namespace staeb;

TEST_CASE("generate_instance honors cardinalities") {
  GenConfig cfg;  // benchmark-grid defaults
  cfg.seed = 3;
  const Instance inst = generate_instance(cfg);
  CHECK(inst.tasks.size() == 1000);
  CHECK(inst.workers.size() == 3000);
  CHECK(inst.catalog.fees.size() == 12);
  for (const auto& t : inst.tasks) {
    CHECK(t.fixed_radius == 1000.0);
    CHECK(t.extra_budget >= 800.0);
    CHECK(t.extra_budget <= 1000.0);
  }
  CHECK(instance_check(inst).empty());
}

TEST_CASE("generate_instance with zero tasks") {
  GenConfig cfg;
  cfg.num_tasks = 0;
  cfg.num_workers = 5;
  cfg.num_skills = 3;
  cfg.task_skills_max = 2;
  cfg.worker_skills_max = 2;
  const Instance inst = generate_instance(cfg);
  CHECK(inst.tasks.empty());
  CHECK(inst.workers.size() == 5);
}

TEST_CASE("generation is deterministic per seed") {
  GenConfig cfg;
  cfg.num_tasks = 40;
  cfg.num_workers = 90;
  cfg.num_skills = 8;
  cfg.seed = 99;
  const std::string a = instance_to_json(generate_instance(cfg));
  const std::string b = instance_to_json(generate_instance(cfg));
  CHECK(a == b);
  cfg.seed = 100;
  CHECK(instance_to_json(generate_instance(cfg)) != a);
}

TEST_CASE("generate_instance rejects bad configs") {
  GenConfig cfg;
  cfg.num_skills = 0;
  CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
  cfg = GenConfig{};
  cfg.budget_min = 500;
  cfg.budget_max = 100;
  CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
  cfg = GenConfig{};
  cfg.task_skills_max = 99;
  CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
}

TEST_CASE("save/load round-trips the canonical instance") {
  const Instance inst = testutil::i0();
  const std::string text = instance_to_json(inst);
  const LoadedInstance reloaded = instance_from_json(text);
  CHECK(reloaded.instance == inst);
  CHECK(reloaded.warnings.empty());
  CHECK(instance_to_json(reloaded.instance) == text);
}

TEST_CASE("load reports missing fields with their path") {
  const std::string text = R"({
    "schema_version": 1,
    "catalog": {"s1": 10.0},
    "params": {"alpha": 0.5, "beta": 0.5, "money_scale": 1000},
    "tasks": [{"id": "t1", "x": 0, "y": 0, "arrival": 0, "skills": ["s1"]}],
    "workers": []
  })";
  try {
    instance_from_json(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("$.tasks[0]") != std::string::npos);
    CHECK(std::string(e.what()).find("'r'") != std::string::npos);
  }
}

TEST_CASE("load ignores unknown fields with a warning") {
  const std::string text = R"({
    "schema_version": 1,
    "catalog": {"s1": 10.0},
    "params": {"alpha": 0.5, "beta": 0.5, "money_scale": 1000},
    "exporter": "v9",
    "tasks": [],
    "workers": [{"id": "w1", "x": 0, "y": 0, "arrival": 0, "skills": ["s1"],
                 "nickname": "joe"}]
  })";
  const LoadedInstance loaded = instance_from_json(text);
  REQUIRE(loaded.warnings.size() == 2);
  CHECK(loaded.warnings[0].find("exporter") != std::string::npos);
  CHECK(loaded.warnings[1].find("nickname") != std::string::npos);
}

TEST_CASE("load rejects unsupported schema versions") {
  CHECK_THROWS_AS(
      instance_from_json(R"({"schema_version": 2, "catalog": {"s1": 1},
        "params": {"alpha": 0.5, "beta": 0.5, "money_scale": 1},
        "tasks": [], "workers": []})"),
      SchemaError);
}

TEST_CASE("ingest_trips builds one task and one worker per record") {
  GenConfig cfg;
  cfg.num_skills = 4;
  cfg.task_skills_max = 2;
  cfg.worker_skills_max = 2;
  cfg.seed = 5;
  std::istringstream stream(
      "pickup_x,pickup_y,pickup_time,dropoff_x,dropoff_y,dropoff_time\n"
      "100,200,3600,300,400,4000\n");
  const IngestResult result = ingest_trips(stream, cfg);
  CHECK(result.skipped_rows == 0);
  REQUIRE(result.instance.tasks.size() == 1);
  REQUIRE(result.instance.workers.size() == 1);
  CHECK(result.instance.tasks[0].location == Point{100, 200});
  CHECK(result.instance.tasks[0].arrival_time == 3600);
  CHECK(result.instance.workers[0].location == Point{300, 400});
  CHECK(result.instance.workers[0].arrival_time == 4000);
}

TEST_CASE("ingest_trips skips malformed rows and counts them") {
  GenConfig cfg;
  cfg.num_skills = 4;
  cfg.task_skills_max = 2;
  cfg.worker_skills_max = 2;
  std::istringstream stream(
      "pickup_x,pickup_y,pickup_time,dropoff_x,dropoff_y,dropoff_time\n"
      "1,2,3,4,5,6\n"
      "1,2,not_a_number,4,5,6\n"
      "7,8,9,10,11,12\n");
  const IngestResult result = ingest_trips(stream, cfg);
  CHECK(result.skipped_rows == 1);
  CHECK(result.instance.tasks.size() == 2);
  CHECK(result.instance.workers.size() == 2);
}

TEST_CASE("ingest_trips rejects empty or headerless input") {
  GenConfig cfg;
  std::istringstream empty("");
  CHECK_THROWS_AS(ingest_trips(empty, cfg), SchemaError);

  std::istringstream no_rows(
      "pickup_x,pickup_y,pickup_time,dropoff_x,dropoff_y,dropoff_time\n");
  CHECK_THROWS_AS(ingest_trips(no_rows, cfg), SchemaError);

  std::istringstream bad_header("a,b,c\n1,2,3\n");
  CHECK_THROWS_AS(ingest_trips(bad_header, cfg), SchemaError);
}

TEST_CASE("matching serialization is canonical") {
  Matching m;
  m.pairs.push_back({"t2", {{"w3", {"s3"}, 0.0}}});
  m.pairs.push_back({"t1", {{"w4", {"s1"}, 0.0}, {"w2", {"s2"}, 2.0}}});
  m.unassigned_workers = {"w9", "w1"};
  const std::string a = matching_to_json(m, 29000);
  std::swap(m.pairs[0], m.pairs[1]);
  std::swap(m.pairs[0].members[0], m.pairs[0].members[1]);
  const std::string b = matching_to_json(m, 29000);
  CHECK(a == b);
  CHECK(a.find("\"t1\"") < a.find("\"t2\""));
}
