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

#ifndef STAEB_TESTS_TEST_UTIL_HPP
#define STAEB_TESTS_TEST_UTIL_HPP

#include <string>

#include "staeb/instance_io.hpp"
#include "staeb/types.hpp"

namespace staeb::testutil {

inline std::string data_path(const std::string& name) {
  return std::string(STAEB_DATA_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(STAEB_GOLDEN_DIR) + "/" + name;
}

/// The canonical hand-checkable instance used throughout the tests:
/// catalog {s1:10, s2:20, s3:30}, alpha = beta = 0.5, d = 1000;
/// t1 at (0,0) r=5 b=4 needs {s1,s2}; t2 at (10,0) r=5 b=0 needs {s3};
/// w1 (3,4) {s1,s2}; w2 (0,7) {s2}; w3 (10,4) {s3}; w4 (0,1) {s1}.
/// Its optimum revenue is 30 (scaled: 30000).
inline Instance i0() { return load_instance(data_path("i0.json")).instance; }

/// A pair literal: task id + (worker, credited skills, extra cost) rows.
inline PairAssignment pair(
    std::string task_id,
    std::vector<std::tuple<std::string, std::vector<std::string>, double>>
        members) {
  PairAssignment p;
  p.task_id = std::move(task_id);
  for (auto& [worker, credited, extra] : members) {
    p.members.push_back({std::move(worker), std::move(credited), extra});
  }
  return p;
}

}  // namespace staeb::testutil

#endif  // STAEB_TESTS_TEST_UTIL_HPP
