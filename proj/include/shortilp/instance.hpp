#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shortilp/numbers.hpp"

namespace shortilp {

// Qm||Cmax and its variants: capacities, rejection, release dates,
// restricted assignment, and two fully unrelated machines.
enum class Variant { QCmax, QCap, QRej, QRel, Restricted, R2 };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::QCmax: return "QCmax";
    case Variant::QCap: return "QCap";
    case Variant::QRej: return "QRej";
    case Variant::QRel: return "QRel";
    case Variant::Restricted: return "Restricted";
    case Variant::R2: return "R2";
  }
  return "?";
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
  if (s == "QCmax") return Variant::QCmax;
  if (s == "QCap") return Variant::QCap;
  if (s == "QRej") return Variant::QRej;
  if (s == "QRel") return Variant::QRel;
  if (s == "Restricted") return Variant::Restricted;
  if (s == "R2") return Variant::R2;
  return std::nullopt;
}

struct Job {
  std::int64_t work = 1;             // p_j, >= 1 (all variants except R2)
  std::int64_t weight = 0;           // w_j, rejection penalty (QRej)
  std::int64_t release = 0;          // r_j (QRel)
  std::uint32_t eligible_mask = 0;   // bit i-1 set <=> machine i eligible
  std::vector<std::int64_t> per_machine;  // p_{i,j} (R2)
  // Position of this job in the input document before the SPT sort; schedules
  // written back to files use this id.
  int original_index = 0;
};

struct Machine {
  std::int64_t speed = 1;     // q_i >= 1
  std::int64_t capacity = 0;  // b_i, max job count (QCap only)
};

struct SchedulingInstance {
  static constexpr int kMaxMachines = 6;

  Variant variant = Variant::QCmax;
  std::vector<Job> jobs;          // SPT-sorted for all variants except R2
  std::vector<Machine> machines;  // 1..kMaxMachines entries
  std::int64_t reject_budget = 0;  // W (QRej)

  int n() const { return static_cast<int>(jobs.size()); }
  int m() const { return static_cast<int>(machines.size()); }

  std::int64_t p_max() const {
    std::int64_t best = 0;
    for (const Job& job : jobs) {
      if (variant == Variant::R2) {
        for (const std::int64_t p : job.per_machine) {
          if (p > best) best = p;
        }
      } else if (job.work > best) {
        best = job.work;
      }
    }
    return best;
  }

  std::int64_t w_max() const {
    std::int64_t best = 0;
    for (const Job& job : jobs) {
      if (job.weight > best) best = job.weight;
    }
    return best;
  }

  std::int64_t r_max() const {
    std::int64_t best = 0;
    for (const Job& job : jobs) {
      if (job.release > best) best = job.release;
    }
    return best;
  }

  // Time scale: lcm of the machine speeds. Deadlines are searched as the
  // integer t = C * lambda, which keeps every per-machine work budget
  // integral.
  std::int64_t lambda() const {
    std::int64_t l = 1;
    for (const Machine& mach : machines) l = lcm64(l, mach.speed);
    return l;
  }

  bool spt_sorted() const {
    for (std::size_t j = 1; j < jobs.size(); ++j) {
      if (jobs[j - 1].work > jobs[j].work) return false;
    }
    return true;
  }
};

// Throws std::invalid_argument on structural violations. Builders call this
// before constructing a program.
inline void check_instance(const SchedulingInstance& inst) {
  const int m = inst.m();
  if (m < 1 || m > SchedulingInstance::kMaxMachines) {
    throw std::invalid_argument("machine count must be in [1, " +
                                std::to_string(
                                    SchedulingInstance::kMaxMachines) +
                                "]");
  }
  if (inst.variant == Variant::R2 && m != 2) {
    throw std::invalid_argument("R2 requires exactly 2 machines");
  }
  for (const Machine& mach : inst.machines) {
    if (mach.speed < 1) {
      throw std::invalid_argument("machine speeds must be >= 1");
    }
    if ((inst.variant == Variant::Restricted || inst.variant == Variant::R2) &&
        mach.speed != 1) {
      throw std::invalid_argument(
          "Restricted and R2 require unit machine speeds");
    }
    if (inst.variant == Variant::QCap && mach.capacity < 0) {
      throw std::invalid_argument("capacities must be >= 0");
    }
  }
  for (const Job& job : inst.jobs) {
    if (inst.variant == Variant::R2) {
      if (job.per_machine.size() != 2) {
        throw std::invalid_argument("R2 jobs need exactly 2 machine times");
      }
      for (const std::int64_t p : job.per_machine) {
        if (p < 1) throw std::invalid_argument("work must be >= 1");
      }
    } else {
      if (job.work < 1) throw std::invalid_argument("work must be >= 1");
    }
    if (job.weight < 0) throw std::invalid_argument("weights must be >= 0");
    if (job.release < 0) {
      throw std::invalid_argument("release dates must be >= 0");
    }
    if (inst.variant == Variant::Restricted) {
      const std::uint32_t all = (1u << m) - 1u;
      if (job.eligible_mask == 0 || (job.eligible_mask & ~all) != 0) {
        throw std::invalid_argument(
            "eligible machine sets must be nonempty subsets of the machines");
      }
    }
  }
  if (inst.reject_budget < 0) {
    throw std::invalid_argument("reject budget must be >= 0");
  }
  if (inst.variant != Variant::R2 && !inst.spt_sorted()) {
    throw std::invalid_argument("jobs must be sorted by non-decreasing work");
  }
}

// Assignment value for a rejected job (QRej only).
inline constexpr int kReject = -1;

struct Schedule {
  // assignment[j] = 0-based machine index carrying job j (SPT position), or
  // kReject.
  std::vector<int> assignment;
  // Work units per machine: sum of p_j (or p_{i,j} for R2) over assigned jobs.
  std::vector<std::int64_t> loads;
  // Start times, present for release-date instances only.
  std::optional<std::vector<Rational>> starts;
  Rational makespan = 0;
};

}  // namespace shortilp
