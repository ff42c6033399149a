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

#include "staeb/core.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "staeb/feasibility.hpp"

namespace staeb {

double travel_cost(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  // sqrt is correctly rounded, so the cost is reproducible bit for bit.
  return std::sqrt(dx * dx + dy * dy);
}

double extra_cost(const Task& task, const Worker& worker) {
  const double cost = travel_cost(task.location, worker.location);
  return cost > task.fixed_radius ? cost - task.fixed_radius : 0.0;
}

Money money_from_units(double units, std::int64_t money_scale) {
  return std::llround(units * static_cast<double>(money_scale));
}

double money_to_units(Money scaled, std::int64_t money_scale) {
  return static_cast<double>(scaled) / static_cast<double>(money_scale);
}

std::string format_money(Money scaled, std::int64_t money_scale) {
  const bool negative = scaled < 0;
  const unsigned long long mag =
      negative ? -static_cast<unsigned long long>(scaled)
               : static_cast<unsigned long long>(scaled);
  const unsigned long long scale = static_cast<unsigned long long>(money_scale);
  std::ostringstream out;
  if (negative) out << '-';
  out << mag / scale;
  unsigned long long frac = mag % scale;
  if (frac != 0) {
    // Fixed width of the fractional field is the width of scale-1.
    std::string digits;
    unsigned long long s = scale;
    while (s > 1) {
      digits.push_back(static_cast<char>('0' + frac % 10));
      frac /= 10;
      s /= 10;
    }
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    out << '.';
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out << *it;
  }
  return out.str();
}

Money worker_revenue(Money credited_fee_sum, double extra_cost_m,
                     const Params& params) {
  if (credited_fee_sum <= 0) {
    throw std::invalid_argument(
        "worker_revenue: credited fee sum must be positive");
  }
  if (!(extra_cost_m >= 0.0)) {
    throw std::invalid_argument("worker_revenue: extra cost must be >= 0");
  }
  return std::llround(
      params.alpha * static_cast<double>(credited_fee_sum) -
      params.beta * extra_cost_m * static_cast<double>(params.money_scale));
}

namespace {

const Task& find_task(const Instance& instance, const std::string& id) {
  for (const auto& t : instance.tasks) {
    if (t.id == id) return t;
  }
  throw std::invalid_argument("unknown task id '" + id + "'");
}

const Worker& find_worker(const Instance& instance, const std::string& id) {
  for (const auto& w : instance.workers) {
    if (w.id == id) return w;
  }
  throw std::invalid_argument("unknown worker id '" + id + "'");
}

Money checked_pair_revenue(const Task& task, const PairAssignment& pair,
                           const Instance& instance) {
  ValidationReport report = validate_pair(task, pair, instance);
  if (!report.ok()) throw ValidationError(std::move(report));
  Money total = 0;
  for (const auto& member : pair.members) {
    const Worker& worker = find_worker(instance, member.worker_id);
    // Fees are quantized onto the money grid per skill, then summed as
    // integers, so every code path agrees on F exactly.
    Money fee_sum = 0;
    for (const auto& skill : member.credited_skills) {
      fee_sum += money_from_units(instance.catalog.fees.at(skill),
                                  instance.params.money_scale);
    }
    total +=
        worker_revenue(fee_sum, extra_cost(task, worker), instance.params);
  }
  return total;
}

}  // namespace

Money pair_revenue(const PairAssignment& pair, const Instance& instance) {
  return checked_pair_revenue(find_task(instance, pair.task_id), pair,
                              instance);
}

Money matching_revenue(const Matching& matching, const Instance& instance) {
  ValidationReport report = validate_matching(matching, instance);
  if (!report.ok()) throw ValidationError(std::move(report));
  Money total = 0;
  for (const auto& pair : matching.pairs) {
    total += checked_pair_revenue(find_task(instance, pair.task_id), pair,
                                  instance);
  }
  return total;
}

}  // namespace staeb
