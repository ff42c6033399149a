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

#ifndef STAEB_REPORT_HPP
#define STAEB_REPORT_HPP

#include <string>

#include "staeb/types.hpp"

namespace staeb {

struct SolveReport {
  std::string algorithm;
  Money revenue = 0;  // scaled; re-derived from the matching
  int matched_tasks = 0;
  int total_tasks = 0;
  long long rounds = 0;           // best-response passes (game solver only)
  long long improving_moves = 0;  // applied strictly-improving moves
  bool nash_checked = false;
  bool nash_certified = false;
  double wall_millis = 0.0;  // solver time, excluding instance compilation
  bool feasible = false;     // validate_matching result on the output
};

struct SolveResult {
  Matching matching;
  SolveReport report;
};

}  // namespace staeb

#endif  // STAEB_REPORT_HPP
