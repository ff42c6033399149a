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

#ifndef STAEB_CORE_HPP
#define STAEB_CORE_HPP

#include <string>

#include "staeb/types.hpp"

namespace staeb {

/// Euclidean travel cost between two points, in meters.
double travel_cost(Point a, Point b);

/// Travel cost beyond the task's fixed radius, clamped at zero when the
/// worker is inside the fixed range: max(0, cost(t,w) - r_t).
double extra_cost(const Task& task, const Worker& worker);

/// Converts money units to the scaled integer grid (round half away from
/// zero) and back.
Money money_from_units(double units, std::int64_t money_scale);
double money_to_units(Money scaled, std::int64_t money_scale);

/// Exact decimal rendering of a scaled amount, e.g. 29500 at scale 1000
/// prints "29.5".
std::string format_money(Money scaled, std::int64_t money_scale);

/// Platform revenue for one worker: alpha * F - beta * e on the scaled
/// integer grid, where F is the scaled fee sum of the worker's credited
/// skills. May be negative. Requires F > 0 and e >= 0.
Money worker_revenue(Money credited_fee_sum, double extra_cost_m,
                     const Params& params);

/// Revenue of a valid worker set: the sum of its members' revenues.
/// Throws ValidationError when the pair violates its invariants.
Money pair_revenue(const PairAssignment& pair, const Instance& instance);

/// Total platform revenue P_M of a matching. Throws ValidationError when
/// any pair or the cross-pair disjointness is invalid.
Money matching_revenue(const Matching& matching, const Instance& instance);

}  // namespace staeb

#endif  // STAEB_CORE_HPP
