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

#include <cmath>

#include "staeb/core.hpp"
#include "staeb/rng.hpp"
#include "test_util.hpp"

using namespace staeb;
using testutil::pair;

TEST_CASE("travel_cost basics") {
  CHECK(travel_cost({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(0.0));
  CHECK(travel_cost({1, 1}, {1, 1}) == 0.0);
  CHECK(travel_cost({0, 0}, {600, 800}) == 1000.0);
}

TEST_CASE("travel_cost symmetry and triangle inequality") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Point a{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
    const Point b{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
    const Point c{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
    CHECK(travel_cost(a, b) == travel_cost(b, a));
    CHECK(travel_cost(a, c) <= travel_cost(a, b) + travel_cost(b, c) + 1e-9);
    CHECK(travel_cost(a, b) >= 0.0);
  }
}

TEST_CASE("extra_cost clamps at the fixed radius") {
  Task task;
  task.id = "t";
  task.location = {0, 0};
  task.fixed_radius = 5;
  Worker worker;
  worker.id = "w";

  worker.location = {3, 4};  // cost 5 == r
  CHECK(extra_cost(task, worker) == 0.0);
  worker.location = {0, 7};  // cost 7
  CHECK(extra_cost(task, worker) == 2.0);
  worker.location = {0, 3};  // cost 3
  CHECK(extra_cost(task, worker) == 0.0);
}

TEST_CASE("extra_cost is zero exactly when inside the fixed range") {
  Rng rng(11);
  Task task;
  task.id = "t";
  task.location = {0, 0};
  task.fixed_radius = 100.0;
  Worker worker;
  worker.id = "w";
  for (int i = 0; i < 500; ++i) {
    worker.location = {rng.uniform(-300, 300), rng.uniform(-300, 300)};
    const double cost = travel_cost(task.location, worker.location);
    CHECK((extra_cost(task, worker) == 0.0) == (cost <= task.fixed_radius));
  }
}

TEST_CASE("worker_revenue follows the revenue formula on the scaled grid") {
  const Params p{0.5, 0.5, 1000};
  // Values in money units: F=30,e=0 -> 15; F=20,e=2 -> 9.
  CHECK(worker_revenue(30000, 0.0, p) == 15000);
  CHECK(worker_revenue(20000, 2.0, p) == 9000);
  const Params p2{0.8, 0.2, 1000};
  CHECK(worker_revenue(10000, 5.0, p2) == 7000);
  // Far workers can cost more than they earn.
  CHECK(worker_revenue(10000, 100.0, p) < 0);
}

TEST_CASE("worker_revenue rejects nonpositive fee sums") {
  const Params p;
  CHECK_THROWS_AS(worker_revenue(0, 0.0, p), std::invalid_argument);
  CHECK_THROWS_AS(worker_revenue(-5, 0.0, p), std::invalid_argument);
  CHECK_THROWS_AS(worker_revenue(10, -1.0, p), std::invalid_argument);
}

TEST_CASE("format_money renders scaled amounts exactly") {
  CHECK(format_money(30000, 1000) == "30");
  CHECK(format_money(29500, 1000) == "29.5");
  CHECK(format_money(-1250, 1000) == "-1.25");
  CHECK(format_money(7, 1000) == "0.007");
  CHECK(format_money(0, 1000) == "0");
  CHECK(format_money(12, 1) == "12");
}

TEST_CASE("pair_revenue on the canonical instance") {
  const Instance inst = testutil::i0();

  // w1 covers both skills of t1 from the boundary of its fixed range.
  CHECK(pair_revenue(pair("t1", {{"w1", {"s1", "s2"}, 0.0}}), inst) == 15000);
  // Split coverage: w2 subsidized 2 m, w4 free.
  CHECK(pair_revenue(pair("t1", {{"w2", {"s2"}, 2.0}, {"w4", {"s1"}, 0.0}}),
                     inst) == 14000);
  // Single member credited with everything equals its worker_revenue.
  CHECK(pair_revenue(pair("t2", {{"w3", {"s3"}, 0.0}}), inst) ==
        worker_revenue(30000, 0.0, inst.params));
}

TEST_CASE("pair_revenue rejects invalid pairs with a structured report") {
  const Instance inst = testutil::i0();
  try {
    pair_revenue(pair("t1", {{"w2", {"s2"}, 2.0}}), inst);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(!e.report().ok());
    CHECK(e.report().violations[0].code == ViolationCode::kUncoveredSkill);
  }
}

TEST_CASE("matching_revenue on the canonical instance") {
  const Instance inst = testutil::i0();
  CHECK(matching_revenue(Matching{}, inst) == 0);

  Matching best;
  best.pairs = {pair("t1", {{"w1", {"s1", "s2"}, 0.0}}),
                pair("t2", {{"w3", {"s3"}, 0.0}})};
  CHECK(matching_revenue(best, inst) == 30000);

  Matching split;
  split.pairs = {pair("t1", {{"w2", {"s2"}, 2.0}, {"w4", {"s1"}, 0.0}}),
                 pair("t2", {{"w3", {"s3"}, 0.0}})};
  CHECK(matching_revenue(split, inst) == 29000);
}

TEST_CASE("matching_revenue is additive over pairs") {
  const Instance inst = testutil::i0();
  const PairAssignment a = pair("t1", {{"w2", {"s2"}, 2.0}, {"w4", {"s1"}, 0.0}});
  const PairAssignment b = pair("t2", {{"w3", {"s3"}, 0.0}});
  Matching m;
  m.pairs = {a, b};
  CHECK(matching_revenue(m, inst) ==
        pair_revenue(a, inst) + pair_revenue(b, inst));
}

TEST_CASE("instance_check flags structural problems") {
  Instance inst = testutil::i0();
  CHECK(instance_check(inst).empty());

  inst.tasks[0].required_skills.push_back("sX");
  CHECK(!instance_check(inst).empty());

  Instance dup = testutil::i0();
  dup.workers.push_back(dup.workers[0]);
  CHECK(!instance_check(dup).empty());

  Instance bad_fee = testutil::i0();
  bad_fee.catalog.fees["s1"] = 0.0;
  CHECK(!instance_check(bad_fee).empty());
}
