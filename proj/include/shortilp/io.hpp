#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shortilp/errors.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

namespace detail_io {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where,
                              const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

inline void expect_object(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where, "expected an object");
}

inline void reject_unknown(const json& node, const std::string& where,
                           const std::vector<std::string>& allowed) {
  for (const auto& item : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      fail(where, "unknown field \"" + item.key() + "\"");
    }
  }
}

inline std::int64_t require_int(const json& node, const std::string& where) {
  if (!node.is_number_integer()) fail(where, "expected an integer");
  return node.get<std::int64_t>();
}

inline std::int64_t optional_int(const json& parent, const char* key,
                                 std::int64_t fallback,
                                 const std::string& where) {
  if (!parent.contains(key)) return fallback;
  return require_int(parent.at(key), where + "." + key);
}

inline std::string job_path(std::size_t j) {
  return "jobs[" + std::to_string(j) + "]";
}

}  // namespace detail_io

// Parses a textual instance document. Jobs may arrive in any order; the
// result is sorted by nondecreasing work (stably, except the two-unrelated-
// machine variant which keeps input order) and each job remembers its
// position in the document so schedules can be reported in original order.
inline SchedulingInstance parse_instance(const std::string& text) {
  using detail_io::fail;
  using detail_io::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail("", std::string("invalid document: ") + e.what());
  }
  detail_io::expect_object(doc, "");

  if (!doc.contains("variant") || !doc.at("variant").is_string()) {
    fail("", "missing string field \"variant\"");
  }
  const auto variant = variant_from_name(doc.at("variant").get<std::string>());
  if (!variant) {
    fail("variant", "unknown variant \"" +
                        doc.at("variant").get<std::string>() + "\"");
  }

  SchedulingInstance inst;
  inst.variant = *variant;
  std::vector<std::string> top_allowed = {"variant", "machines", "jobs"};
  if (inst.variant == Variant::QRej) top_allowed.push_back("reject_budget");
  detail_io::reject_unknown(doc, "", top_allowed);

  if (!doc.contains("machines") || !doc.at("machines").is_array()) {
    fail("", "missing array field \"machines\"");
  }
  if (!doc.contains("jobs") || !doc.at("jobs").is_array()) {
    fail("", "missing array field \"jobs\"");
  }

  std::size_t index = 0;
  for (const auto& node : doc.at("machines")) {
    const std::string where = "machines[" + std::to_string(index++) + "]";
    detail_io::expect_object(node, where);
    std::vector<std::string> allowed = {"speed"};
    if (inst.variant == Variant::QCap) allowed.push_back("capacity");
    detail_io::reject_unknown(node, where, allowed);
    Machine machine;
    machine.speed = detail_io::optional_int(node, "speed", 1, where);
    if (machine.speed < 1) fail(where + ".speed", "speed must be >= 1");
    if (inst.variant == Variant::QCap) {
      if (!node.contains("capacity")) fail(where, "capacity is required");
      machine.capacity =
          detail_io::require_int(node.at("capacity"), where + ".capacity");
      if (machine.capacity < 0) {
        fail(where + ".capacity", "capacity must be >= 0");
      }
    }
    inst.machines.push_back(machine);
  }
  const int m = inst.m();

  index = 0;
  for (const auto& node : doc.at("jobs")) {
    const std::string where = detail_io::job_path(index);
    detail_io::expect_object(node, where);
    std::vector<std::string> allowed;
    switch (inst.variant) {
      case Variant::QCmax:
      case Variant::QCap:
        allowed = {"p"};
        break;
      case Variant::QRej:
        allowed = {"p", "w"};
        break;
      case Variant::QRel:
        allowed = {"p", "r"};
        break;
      case Variant::Restricted:
        allowed = {"p", "eligible"};
        break;
      case Variant::R2:
        allowed = {"p_per_machine"};
        break;
    }
    detail_io::reject_unknown(node, where, allowed);

    Job job;
    job.original_index = static_cast<int>(index);
    if (inst.variant == Variant::R2) {
      if (!node.contains("p_per_machine") ||
          !node.at("p_per_machine").is_array()) {
        fail(where, "p_per_machine array is required");
      }
      for (const auto& entry : node.at("p_per_machine")) {
        job.per_machine.push_back(
            detail_io::require_int(entry, where + ".p_per_machine"));
      }
      if (job.per_machine.size() != 2) {
        fail(where + ".p_per_machine", "expected exactly two entries");
      }
      for (const std::int64_t p : job.per_machine) {
        if (p < 1) fail(where + ".p_per_machine", "work must be ≥ 1");
      }
      job.work = std::min(job.per_machine[0], job.per_machine[1]);
    } else {
      if (!node.contains("p")) fail(where, "p is required");
      job.work = detail_io::require_int(node.at("p"), where + ".p");
      if (job.work < 1) fail(where + ".p", "work must be ≥ 1");
    }
    if (inst.variant == Variant::QRej) {
      job.weight = detail_io::optional_int(node, "w", 0, where);
      if (job.weight < 0) fail(where + ".w", "weight must be >= 0");
    }
    if (inst.variant == Variant::QRel) {
      job.release = detail_io::optional_int(node, "r", 0, where);
      if (job.release < 0) fail(where + ".r", "release must be >= 0");
    }
    if (inst.variant == Variant::Restricted) {
      if (!node.contains("eligible") || !node.at("eligible").is_array()) {
        fail(where, "eligible array is required");
      }
      for (const auto& entry : node.at("eligible")) {
        const std::int64_t machine =
            detail_io::require_int(entry, where + ".eligible");
        if (machine < 1 || machine > m) {
          fail(where + ".eligible", "machine id out of range");
        }
        job.eligible_mask |= 1u << (machine - 1);
      }
      if (job.eligible_mask == 0) {
        fail(where + ".eligible", "eligible list must be nonempty");
      }
    }
    inst.jobs.push_back(std::move(job));
    ++index;
  }

  if (inst.variant == Variant::QRej) {
    if (!doc.contains("reject_budget")) {
      fail("", "reject_budget is required");
    }
    inst.reject_budget =
        detail_io::require_int(doc.at("reject_budget"), "reject_budget");
    if (inst.reject_budget < 0) {
      fail("reject_budget", "budget must be >= 0");
    }
  }

  if (inst.variant != Variant::R2) {
    std::stable_sort(inst.jobs.begin(), inst.jobs.end(),
                     [](const Job& a, const Job& b) { return a.work < b.work; });
  }
  try {
    check_instance(inst);
  } catch (const std::invalid_argument& e) {
    fail("", e.what());
  }
  return inst;
}

// Writes the canonical document for an instance, jobs in original order.
inline std::string serialize_instance(const SchedulingInstance& inst) {
  using detail_io::json;
  json doc;
  doc["variant"] = variant_name(inst.variant);
  doc["machines"] = json::array();
  for (const Machine& machine : inst.machines) {
    json node;
    node["speed"] = machine.speed;
    if (inst.variant == Variant::QCap) node["capacity"] = machine.capacity;
    doc["machines"].push_back(std::move(node));
  }
  std::vector<const Job*> by_original(inst.jobs.size());
  for (const Job& job : inst.jobs) by_original[job.original_index] = &job;
  doc["jobs"] = json::array();
  for (const Job* job : by_original) {
    json node;
    switch (inst.variant) {
      case Variant::QCmax:
      case Variant::QCap:
        node["p"] = job->work;
        break;
      case Variant::QRej:
        node["p"] = job->work;
        node["w"] = job->weight;
        break;
      case Variant::QRel:
        node["p"] = job->work;
        node["r"] = job->release;
        break;
      case Variant::Restricted: {
        node["p"] = job->work;
        node["eligible"] = json::array();
        for (int i = 0; i < inst.m(); ++i) {
          if (job->eligible_mask >> i & 1u) node["eligible"].push_back(i + 1);
        }
        break;
      }
      case Variant::R2:
        node["p_per_machine"] = job->per_machine;
        break;
    }
    doc["jobs"].push_back(std::move(node));
  }
  if (inst.variant == Variant::QRej) {
    doc["reject_budget"] = inst.reject_budget;
  }
  return doc.dump(2) + "\n";
}

// Parses a schedule document against its instance. Machine ids are 1-based
// in documents and -1 means rejected; job order in documents is the original
// input order of the instance document.
inline Schedule parse_schedule(const std::string& text,
                               const SchedulingInstance& inst) {
  using detail_io::fail;
  using detail_io::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail("", std::string("invalid document: ") + e.what());
  }
  detail_io::expect_object(doc, "");
  detail_io::reject_unknown(doc, "",
                            {"makespan", "assignment", "loads", "starts"});
  if (!doc.contains("assignment") || !doc.at("assignment").is_array()) {
    fail("", "missing array field \"assignment\"");
  }
  const auto& assignment = doc.at("assignment");
  const int n = inst.n();
  if (static_cast<int>(assignment.size()) != n) {
    fail("assignment", "expected one entry per job");
  }
  Schedule sched;
  sched.assignment.assign(n, kReject);
  sched.loads.assign(inst.m(), 0);
  std::vector<int> by_original(n, kReject);
  for (int j = 0; j < n; ++j) {
    const std::int64_t value = detail_io::require_int(
        assignment.at(j), "assignment[" + std::to_string(j) + "]");
    if (value != -1 && (value < 1 || value > inst.m())) {
      fail("assignment[" + std::to_string(j) + "]",
           "machine id out of range");
    }
    by_original[j] = value == -1 ? kReject : static_cast<int>(value - 1);
  }
  std::optional<std::vector<Rational>> starts_by_original;
  if (doc.contains("starts")) {
    if (!doc.at("starts").is_array() ||
        static_cast<int>(doc.at("starts").size()) != n) {
      fail("starts", "expected one entry per job");
    }
    starts_by_original.emplace(n, Rational(0));
    for (int j = 0; j < n; ++j) {
      const auto& entry = doc.at("starts").at(j);
      const std::string where = "starts[" + std::to_string(j) + "]";
      if (entry.is_number_integer()) {
        (*starts_by_original)[j] = Rational(entry.get<std::int64_t>());
      } else if (entry.is_string()) {
        const auto parsed = parse_rational(entry.get<std::string>());
        if (!parsed) fail(where, "expected \"num/den\"");
        (*starts_by_original)[j] = *parsed;
      } else {
        fail(where, "expected an integer or \"num/den\"");
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    sched.assignment[j] = by_original[inst.jobs[j].original_index];
  }
  if (starts_by_original) {
    sched.starts.emplace(n, Rational(0));
    for (int j = 0; j < n; ++j) {
      (*sched.starts)[j] = (*starts_by_original)[inst.jobs[j].original_index];
    }
  }
  for (int j = 0; j < n; ++j) {
    const int a = sched.assignment[j];
    if (a >= 0) {
      sched.loads[a] += inst.variant == Variant::R2
                            ? inst.jobs[j].per_machine[a]
                            : inst.jobs[j].work;
    }
  }
  return sched;
}

inline std::string serialize_schedule(const Schedule& sched,
                                      const SchedulingInstance& inst) {
  using detail_io::json;
  const int n = inst.n();
  json doc;
  doc["makespan"] = format_rational(sched.makespan);
  std::vector<std::int64_t> assignment(n, -1);
  for (int j = 0; j < n; ++j) {
    const int a = sched.assignment[j];
    assignment[inst.jobs[j].original_index] = a == kReject ? -1 : a + 1;
  }
  doc["assignment"] = assignment;
  doc["loads"] = sched.loads;
  if (sched.starts) {
    std::vector<std::string> starts(n);
    for (int j = 0; j < n; ++j) {
      starts[inst.jobs[j].original_index] =
          format_rational((*sched.starts)[j]);
    }
    doc["starts"] = starts;
  }
  return doc.dump(2) + "\n";
}

}  // namespace shortilp
