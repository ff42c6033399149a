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

#include "staeb/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "staeb/rng.hpp"

namespace staeb {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr double kSecondsPerDay = 86400.0;

std::string padded_id(char prefix, int number, int width) {
  std::string digits = std::to_string(number);
  std::string out(1, prefix);
  out.append(width > static_cast<int>(digits.size())
                 ? width - digits.size()
                 : 0,
             '0');
  out += digits;
  return out;
}

int id_width(int count) {
  int width = 1;
  for (int v = count; v >= 10; v /= 10) ++width;
  return std::max(width, 4);
}

// --- schema helpers -------------------------------------------------------

const Json& require_field(const Json& obj, const char* key,
                          const std::string& path) {
  if (!obj.is_object()) {
    throw SchemaError(path + ": expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(path + ": missing required field '" + key + "'");
  }
  return *it;
}

double require_number(const Json& obj, const char* key,
                      const std::string& path) {
  const Json& v = require_field(obj, key, path);
  if (!v.is_number()) {
    throw SchemaError(path + "." + key + ": expected a number");
  }
  return v.get<double>();
}

std::string require_string(const Json& obj, const char* key,
                           const std::string& path) {
  const Json& v = require_field(obj, key, path);
  if (!v.is_string()) {
    throw SchemaError(path + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

std::vector<std::string> require_string_array(const Json& obj, const char* key,
                                              const std::string& path) {
  const Json& v = require_field(obj, key, path);
  if (!v.is_array()) {
    throw SchemaError(path + "." + key + ": expected an array");
  }
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw SchemaError(path + "." + key + ": expected string elements");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

void warn_unknown_fields(const Json& obj, const std::string& path,
                         std::initializer_list<const char*> known,
                         std::vector<std::string>& warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool recognized =
        std::any_of(known.begin(), known.end(),
                    [&](const char* k) { return it.key() == k; });
    if (!recognized) {
      warnings.push_back("ignored unknown field '" + it.key() + "' at " + path);
    }
  }
}

std::vector<std::string> sorted_unique(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

}  // namespace

std::vector<std::string> gen_config_check(const GenConfig& cfg) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  require(cfg.num_tasks >= 0, "num_tasks must be >= 0");
  require(cfg.num_workers >= 0, "num_workers must be >= 0");
  require(cfg.num_skills >= 1 && cfg.num_skills <= 64,
          "num_skills must lie in [1, 64]");
  require(cfg.fixed_radius >= 0.0, "fixed_radius must be >= 0");
  require(cfg.budget_min >= 0.0 && cfg.budget_min <= cfg.budget_max,
          "budget range must be ordered and nonnegative");
  require(cfg.box.min.x < cfg.box.max.x && cfg.box.min.y < cfg.box.max.y,
          "bounding box must be nondegenerate");
  require(cfg.fee_min >= 1 && cfg.fee_min <= cfg.fee_max,
          "fee range must be ordered with fee_min >= 1");
  require(cfg.task_skills_min >= 1 &&
              cfg.task_skills_min <= cfg.task_skills_max &&
              cfg.task_skills_max <= cfg.num_skills,
          "task skill-count range must be ordered within [1, num_skills]");
  require(cfg.worker_skills_min >= 1 &&
              cfg.worker_skills_min <= cfg.worker_skills_max &&
              cfg.worker_skills_max <= cfg.num_skills,
          "worker skill-count range must be ordered within [1, num_skills]");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha must lie in (0,1)");
  require(cfg.beta > 0.0 && cfg.beta < 1.0, "beta must lie in (0,1)");
  require(cfg.money_scale >= 1, "money_scale must be >= 1");
  return problems;
}

namespace {

void throw_on_bad_config(const GenConfig& cfg) {
  const auto problems = gen_config_check(cfg);
  if (problems.empty()) return;
  std::ostringstream out;
  out << "invalid generation config:";
  for (const auto& p : problems) out << "\n  " << p;
  throw std::invalid_argument(out.str());
}

std::vector<std::string> draw_skill_subset(
    Rng& rng, const std::vector<std::string>& skill_ids, int count_min,
    int count_max) {
  const int n = static_cast<int>(skill_ids.size());
  const int k = rng.uniform_int(count_min, count_max);
  std::vector<int> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(indices[i], indices[j]);
  }
  std::vector<std::string> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.push_back(skill_ids[indices[i]]);
  std::sort(out.begin(), out.end());
  return out;
}

SkillCatalog draw_catalog(Rng& rng, const GenConfig& cfg,
                          std::vector<std::string>& skill_ids) {
  SkillCatalog catalog;
  const int width = id_width(cfg.num_skills);
  for (int s = 1; s <= cfg.num_skills; ++s) {
    const std::string id = padded_id('s', s, width);
    catalog.fees[id] = static_cast<double>(rng.uniform_int(cfg.fee_min,
                                                           cfg.fee_max));
    skill_ids.push_back(id);
  }
  return catalog;
}

}  // namespace

Instance generate_instance(const GenConfig& cfg) {
  throw_on_bad_config(cfg);
  Rng rng(cfg.seed);
  Instance instance;
  instance.params = {cfg.alpha, cfg.beta, cfg.money_scale};
  instance.bounding_box = cfg.box;

  std::vector<std::string> skill_ids;
  instance.catalog = draw_catalog(rng, cfg, skill_ids);

  const int task_width = id_width(cfg.num_tasks);
  for (int i = 1; i <= cfg.num_tasks; ++i) {
    Task t;
    t.id = padded_id('t', i, task_width);
    t.location = {rng.uniform(cfg.box.min.x, cfg.box.max.x),
                  rng.uniform(cfg.box.min.y, cfg.box.max.y)};
    t.arrival_time = rng.uniform(0.0, kSecondsPerDay);
    t.fixed_radius = cfg.fixed_radius;
    t.extra_budget = rng.uniform(cfg.budget_min, cfg.budget_max);
    t.required_skills = draw_skill_subset(rng, skill_ids, cfg.task_skills_min,
                                          cfg.task_skills_max);
    instance.tasks.push_back(std::move(t));
  }
  const int worker_width = id_width(cfg.num_workers);
  for (int i = 1; i <= cfg.num_workers; ++i) {
    Worker w;
    w.id = padded_id('w', i, worker_width);
    w.location = {rng.uniform(cfg.box.min.x, cfg.box.max.x),
                  rng.uniform(cfg.box.min.y, cfg.box.max.y)};
    w.arrival_time = rng.uniform(0.0, kSecondsPerDay);
    w.skills = draw_skill_subset(rng, skill_ids, cfg.worker_skills_min,
                                 cfg.worker_skills_max);
    instance.workers.push_back(std::move(w));
  }
  return instance;
}

IngestResult ingest_trips(std::istream& records, const GenConfig& cfg) {
  throw_on_bad_config(cfg);

  std::string header;
  if (!std::getline(records, header)) {
    throw SchemaError("trip stream: missing header row");
  }
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
      const auto begin = field.find_first_not_of(" \t\r");
      const auto end = field.find_last_not_of(" \t\r");
      fields.push_back(begin == std::string::npos
                           ? ""
                           : field.substr(begin, end - begin + 1));
    }
    return fields;
  };

  const std::vector<std::string> columns = split(header);
  const std::vector<std::string> required = {"pickup_x",  "pickup_y",
                                             "pickup_time", "dropoff_x",
                                             "dropoff_y", "dropoff_time"};
  std::vector<int> position(required.size(), -1);
  for (std::size_t r = 0; r < required.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c] == required[r]) position[r] = static_cast<int>(c);
    }
    if (position[r] < 0) {
      throw SchemaError("trip stream: header lacks column '" + required[r] +
                        "'");
    }
  }

  struct Trip {
    double px, py, pt, dx, dy, dt;
  };
  std::vector<Trip> trips;
  std::size_t skipped = 0;
  std::string line;
  while (std::getline(records, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split(line);
    Trip trip{};
    double* slots[6] = {&trip.px, &trip.py, &trip.pt,
                        &trip.dx, &trip.dy, &trip.dt};
    bool ok = true;
    for (std::size_t r = 0; r < required.size() && ok; ++r) {
      if (position[r] >= static_cast<int>(fields.size())) {
        ok = false;
        break;
      }
      const std::string& text = fields[position[r]];
      std::size_t used = 0;
      try {
        *slots[r] = std::stod(text, &used);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      if (used != text.size() || !std::isfinite(*slots[r])) ok = false;
    }
    if (!ok) {
      ++skipped;
      continue;
    }
    trips.push_back(trip);
  }
  if (trips.empty()) {
    throw SchemaError("trip stream: no well-formed records");
  }

  // Trip data carries no skills or fees; synthesize them with the
  // generator's rules so ingested instances are comparable to generated
  // ones.
  Rng rng(cfg.seed);
  IngestResult result;
  result.skipped_rows = skipped;
  Instance& instance = result.instance;
  instance.params = {cfg.alpha, cfg.beta, cfg.money_scale};

  std::vector<std::string> skill_ids;
  instance.catalog = draw_catalog(rng, cfg, skill_ids);

  const int width = id_width(static_cast<int>(trips.size()));
  for (std::size_t i = 0; i < trips.size(); ++i) {
    const Trip& trip = trips[i];
    Task t;
    t.id = padded_id('t', static_cast<int>(i) + 1, width);
    t.location = {trip.px, trip.py};
    t.arrival_time = trip.pt;
    t.fixed_radius = cfg.fixed_radius;
    t.extra_budget = rng.uniform(cfg.budget_min, cfg.budget_max);
    t.required_skills = draw_skill_subset(rng, skill_ids, cfg.task_skills_min,
                                          cfg.task_skills_max);
    instance.tasks.push_back(std::move(t));

    Worker w;
    w.id = padded_id('w', static_cast<int>(i) + 1, width);
    w.location = {trip.dx, trip.dy};
    w.arrival_time = trip.dt;
    w.skills = draw_skill_subset(rng, skill_ids, cfg.worker_skills_min,
                                 cfg.worker_skills_max);
    instance.workers.push_back(std::move(w));
  }
  return result;
}

// --- persistence ----------------------------------------------------------

std::string instance_to_json(const Instance& instance) {
  OrderedJson doc;
  doc["schema_version"] = 1;
  OrderedJson catalog = OrderedJson::object();
  for (const auto& [id, fee] : instance.catalog.fees) catalog[id] = fee;
  doc["catalog"] = std::move(catalog);
  doc["params"] = {{"alpha", instance.params.alpha},
                   {"beta", instance.params.beta},
                   {"money_scale", instance.params.money_scale}};
  if (instance.bounding_box) {
    doc["bounding_box"] = {{"min_x", instance.bounding_box->min.x},
                           {"min_y", instance.bounding_box->min.y},
                           {"max_x", instance.bounding_box->max.x},
                           {"max_y", instance.bounding_box->max.y}};
  }
  doc["tasks"] = OrderedJson::array();
  for (const auto& t : instance.tasks) {
    doc["tasks"].push_back({{"id", t.id},
                            {"x", t.location.x},
                            {"y", t.location.y},
                            {"arrival", t.arrival_time},
                            {"r", t.fixed_radius},
                            {"b", t.extra_budget},
                            {"skills", t.required_skills}});
  }
  doc["workers"] = OrderedJson::array();
  for (const auto& w : instance.workers) {
    doc["workers"].push_back({{"id", w.id},
                              {"x", w.location.x},
                              {"y", w.location.y},
                              {"arrival", w.arrival_time},
                              {"skills", w.skills}});
  }
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot open '" + path + "' for writing");
  out << instance_to_json(instance);
  if (!out) throw SchemaError("failed writing '" + path + "'");
}

LoadedInstance instance_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("instance document: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("instance document: expected an object");

  LoadedInstance loaded;
  Instance& instance = loaded.instance;
  std::vector<std::string>& warnings = loaded.warnings;

  warn_unknown_fields(doc, "$",
                      {"schema_version", "catalog", "params", "bounding_box",
                       "tasks", "workers"},
                      warnings);

  const double version = require_number(doc, "schema_version", "$");
  if (version != 1) {
    throw SchemaError("$.schema_version: unsupported version " +
                      std::to_string(version));
  }

  const Json& catalog = require_field(doc, "catalog", "$");
  if (!catalog.is_object()) throw SchemaError("$.catalog: expected an object");
  for (auto it = catalog.begin(); it != catalog.end(); ++it) {
    if (!it.value().is_number()) {
      throw SchemaError("$.catalog." + it.key() + ": expected a number");
    }
    instance.catalog.fees[it.key()] = it.value().get<double>();
  }

  const Json& params = require_field(doc, "params", "$");
  warn_unknown_fields(params, "$.params", {"alpha", "beta", "money_scale"},
                      warnings);
  instance.params.alpha = require_number(params, "alpha", "$.params");
  instance.params.beta = require_number(params, "beta", "$.params");
  instance.params.money_scale = static_cast<std::int64_t>(
      require_number(params, "money_scale", "$.params"));

  if (doc.contains("bounding_box")) {
    const Json& box = doc["bounding_box"];
    warn_unknown_fields(box, "$.bounding_box",
                        {"min_x", "min_y", "max_x", "max_y"}, warnings);
    instance.bounding_box = BoundingBox{
        {require_number(box, "min_x", "$.bounding_box"),
         require_number(box, "min_y", "$.bounding_box")},
        {require_number(box, "max_x", "$.bounding_box"),
         require_number(box, "max_y", "$.bounding_box")}};
  }

  const Json& tasks = require_field(doc, "tasks", "$");
  if (!tasks.is_array()) throw SchemaError("$.tasks: expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = "$.tasks[" + std::to_string(i) + "]";
    const Json& jt = tasks[i];
    warn_unknown_fields(jt, path, {"id", "x", "y", "arrival", "r", "b", "skills"},
                        warnings);
    Task t;
    t.id = require_string(jt, "id", path);
    t.location = {require_number(jt, "x", path), require_number(jt, "y", path)};
    t.arrival_time = require_number(jt, "arrival", path);
    t.fixed_radius = require_number(jt, "r", path);
    t.extra_budget = require_number(jt, "b", path);
    t.required_skills = sorted_unique(require_string_array(jt, "skills", path));
    instance.tasks.push_back(std::move(t));
  }

  const Json& workers = require_field(doc, "workers", "$");
  if (!workers.is_array()) throw SchemaError("$.workers: expected an array");
  for (std::size_t i = 0; i < workers.size(); ++i) {
    const std::string path = "$.workers[" + std::to_string(i) + "]";
    const Json& jw = workers[i];
    warn_unknown_fields(jw, path, {"id", "x", "y", "arrival", "skills"},
                        warnings);
    Worker w;
    w.id = require_string(jw, "id", path);
    w.location = {require_number(jw, "x", path), require_number(jw, "y", path)};
    w.arrival_time = require_number(jw, "arrival", path);
    w.skills = sorted_unique(require_string_array(jw, "skills", path));
    instance.workers.push_back(std::move(w));
  }

  const std::vector<std::string> problems = instance_check(instance);
  if (!problems.empty()) {
    std::ostringstream out;
    out << "instance document violates invariants:";
    for (const auto& p : problems) out << "\n  " << p;
    throw SchemaError(out.str());
  }
  return loaded;
}

LoadedInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

std::string matching_to_json(const Matching& matching, Money revenue_scaled) {
  Matching canonical = matching;
  canonicalize(canonical);
  OrderedJson doc;
  doc["schema_version"] = 1;
  doc["pairs"] = OrderedJson::array();
  for (const auto& pair : canonical.pairs) {
    OrderedJson members = OrderedJson::array();
    for (const auto& m : pair.members) {
      members.push_back({{"worker", m.worker_id},
                         {"credited", m.credited_skills},
                         {"extra_cost", m.extra_cost}});
    }
    doc["pairs"].push_back({{"task", pair.task_id},
                            {"members", std::move(members)}});
  }
  doc["unassigned"] = canonical.unassigned_workers;
  doc["revenue_scaled"] = revenue_scaled;
  return doc.dump(2) + "\n";
}

void save_matching(const Matching& matching, Money revenue_scaled,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot open '" + path + "' for writing");
  out << matching_to_json(matching, revenue_scaled);
  if (!out) throw SchemaError("failed writing '" + path + "'");
}

}  // namespace staeb
