#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shortilp/errors.hpp"
#include "shortilp/ilp_solve.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/numbers.hpp"
#include "shortilp/reductions.hpp"

namespace shortilp {

enum class ViolationKind {
  Overload,
  CapacityExceeded,
  ReleaseViolated,
  BudgetExceeded,
  Unassigned,
  IneligibleMachine,
};

struct Violation {
  ViolationKind kind = ViolationKind::Overload;
  int index = -1;  // job or machine index; -1 for instance-wide findings
  std::string detail;
};

// Checks a schedule against an instance and a deadline from scratch; trusts
// only the assignment (and starts, when given), never the cached loads.
inline std::vector<Violation> verify_schedule(const SchedulingInstance& inst,
                                              const Schedule& sched,
                                              const Rational& deadline) {
  std::vector<Violation> out;
  const int n = inst.n();
  const int m = inst.m();
  if (static_cast<int>(sched.assignment.size()) != n) {
    out.push_back({ViolationKind::Unassigned, -1,
                   "assignment length differs from the job count"});
    return out;
  }
  std::vector<std::int64_t> loads(m, 0);
  std::vector<std::int64_t> counts(m, 0);
  std::int64_t rejected_weight = 0;
  for (int j = 0; j < n; ++j) {
    const int a = sched.assignment[j];
    if (a == kReject) {
      if (inst.variant != Variant::QRej) {
        out.push_back({ViolationKind::Unassigned, j,
                       "job rejected in a variant without rejection"});
        continue;
      }
      rejected_weight += inst.jobs[j].weight;
      continue;
    }
    if (a < 0 || a >= m) {
      out.push_back(
          {ViolationKind::Unassigned, j, "machine index out of range"});
      continue;
    }
    if (inst.variant == Variant::Restricted &&
        !(inst.jobs[j].eligible_mask >> a & 1u)) {
      out.push_back({ViolationKind::IneligibleMachine, j,
                     "job placed on a machine outside its eligible set"});
    }
    loads[a] += inst.variant == Variant::R2 ? inst.jobs[j].per_machine[a]
                                            : inst.jobs[j].work;
    ++counts[a];
  }

  if (inst.variant == Variant::QRel) {
    if (sched.starts) {
      if (static_cast<int>(sched.starts->size()) != n) {
        out.push_back({ViolationKind::Unassigned, -1,
                       "start list length differs from the job count"});
        return out;
      }
      for (int i = 0; i < m; ++i) {
        std::vector<int> on_machine;
        for (int j = 0; j < n; ++j) {
          if (sched.assignment[j] == i) on_machine.push_back(j);
        }
        std::sort(on_machine.begin(), on_machine.end(), [&](int a, int b) {
          return std::make_pair((*sched.starts)[a], a) <
                 std::make_pair((*sched.starts)[b], b);
        });
        Rational cursor = 0;
        for (const int j : on_machine) {
          const Rational start = (*sched.starts)[j];
          if (start < inst.jobs[j].release) {
            out.push_back({ViolationKind::ReleaseViolated, j,
                           "job starts before its release date"});
          }
          if (start < cursor) {
            out.push_back({ViolationKind::Overload, j,
                           "job overlaps its predecessor on the machine"});
          }
          cursor = start +
                   Rational(inst.jobs[j].work) / inst.machines[i].speed;
          if (cursor > deadline) {
            out.push_back({ViolationKind::Overload, j,
                           "job completes after the deadline"});
          }
        }
      }
    } else {
      // No explicit starts: run each machine earliest-release-first without
      // idling beyond releases and check the completion time that yields.
      for (int i = 0; i < m; ++i) {
        std::vector<int> on_machine;
        for (int j = 0; j < n; ++j) {
          if (sched.assignment[j] == i) on_machine.push_back(j);
        }
        std::sort(on_machine.begin(), on_machine.end(), [&](int a, int b) {
          return std::make_pair(inst.jobs[a].release, a) <
                 std::make_pair(inst.jobs[b].release, b);
        });
        Rational cursor = 0;
        for (const int j : on_machine) {
          cursor = std::max(cursor, Rational(inst.jobs[j].release)) +
                   Rational(inst.jobs[j].work) / inst.machines[i].speed;
        }
        if (cursor > deadline) {
          out.push_back({ViolationKind::Overload, i,
                         "machine cannot finish its jobs by the deadline"});
        }
      }
    }
  } else {
    for (int i = 0; i < m; ++i) {
      if (Rational(loads[i]) / inst.machines[i].speed > deadline) {
        out.push_back({ViolationKind::Overload, i,
                       "machine load exceeds the deadline"});
      }
    }
  }

  if (inst.variant == Variant::QCap) {
    for (int i = 0; i < m; ++i) {
      if (counts[i] > inst.machines[i].capacity) {
        out.push_back({ViolationKind::CapacityExceeded, i,
                       "machine holds more jobs than its capacity"});
      }
    }
  }
  if (inst.variant == Variant::QRej && rejected_weight > inst.reject_budget) {
    out.push_back({ViolationKind::BudgetExceeded, -1,
                   "rejected weight exceeds the budget"});
  }
  return out;
}

struct DecideStats {
  int repair_steps = 0;
  BigInt gap = 0;  // objective surplus over the carry-all target, pre-repair
};

namespace detail_drive {

inline BuildResult build_for(const SchedulingInstance& inst, std::int64_t t) {
  switch (inst.variant) {
    case Variant::QCmax:
      return build_ilp1(inst, t);
    case Variant::QCap:
      return build_ilp2(inst, t);
    case Variant::QRej:
      return build_ilp3(inst, t);
    case Variant::QRel:
      return build_ilp4(inst, t);
    case Variant::Restricted:
      return build_ilp5(inst, t);
    case Variant::R2:
      return build_ilp6(inst, t);
  }
  throw std::logic_error("unknown variant");
}

}  // namespace detail_drive

// Decides whether the instance admits a schedule finishing by the scaled
// deadline t (real deadline t / lcm of speeds) and returns a verified
// witness schedule when it does.
inline std::optional<Schedule> decide(const SchedulingInstance& inst,
                                      std::int64_t t,
                                      const SolverConfig& cfg = {},
                                      DecideStats* stats = nullptr) {
  check_instance(inst);
  BuildResult built = detail_drive::build_for(inst, t);

  if (inst.variant != Variant::R2) {
    // All matrix entries are nonnegative here, so a negative right-hand
    // side (a deadline before some release date) is immediately infeasible.
    for (const std::int64_t b : built.prob.rhs) {
      if (b < 0) return std::nullopt;
    }
  }

  const IlpSolution sol = built.prob.upper_bounds
                              ? solve_bounded(built.prob, cfg)
                              : solve_unbounded(built.prob, cfg);
  if (sol.status == SolveStatus::Infeasible) return std::nullopt;
  if (sol.status == SolveStatus::Unbounded) {
    throw std::logic_error("scheduling programs are always bounded");
  }
  if (inst.variant != Variant::R2) {
    if (sol.objective < built.meta.offset) return std::nullopt;
    if (stats) stats->gap = sol.objective - built.meta.offset;
  }

  RepairStats repair_stats;
  const auto repaired =
      repair(sol.x, built.prob, built.meta, inst, &repair_stats);
  if (stats) stats->repair_steps = repair_stats.steps;

  Schedule sched = extract_schedule(repaired, built.meta, inst);
  const Rational deadline = Rational(t) / built.meta.time_scale;
  if (!verify_schedule(inst, sched, deadline).empty()) {
    throw std::logic_error("extracted schedule failed verification");
  }
  return sched;
}

// Scaled search range [lo, hi]: the optimum deadline t* always satisfies
// lo <= t* <= hi, and hi is feasible whenever the instance is at all.
inline std::pair<std::int64_t, std::int64_t> makespan_bounds(
    const SchedulingInstance& inst) {
  check_instance(inst);
  if (inst.n() == 0) return {0, 0};
  std::int64_t hi = inst.lambda() * inst.n() * inst.p_max();
  if (inst.variant == Variant::QRel) {
    hi = inst.lambda() * (inst.n() * inst.p_max() + inst.r_max());
  }
  return {0, hi};
}

struct SolveResult {
  Rational makespan = 0;
  std::int64_t scaled_deadline = 0;
  std::int64_t time_scale = 1;
  Schedule schedule;
  int probes = 0;  // decide calls spent by the search
};

// Minimum makespan by monotone binary search over scaled deadlines. Uses at
// most ceil(log2(hi + 1)) + 1 decide calls.
inline SolveResult minimize_makespan(const SchedulingInstance& inst,
                                     const SolverConfig& cfg = {}) {
  check_instance(inst);
  SolveResult res;
  res.time_scale = inst.lambda();
  if (inst.n() == 0) {
    res.schedule.loads.assign(inst.m(), 0);
    if (inst.variant == Variant::QRel) {
      res.schedule.starts.emplace();
    }
    return res;
  }
  if (inst.variant == Variant::QCap) {
    std::int64_t slots = 0;
    for (const Machine& mach : inst.machines) slots += mach.capacity;
    if (slots < inst.n()) {
      throw InfeasibleInstance("capacities admit fewer jobs than exist");
    }
  }

  auto [lo, hi] = makespan_bounds(inst);
  std::optional<Schedule> best;
  std::int64_t best_t = -1;
  int probes = 0;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    ++probes;
    auto sched = decide(inst, mid, cfg);
    if (sched) {
      best = std::move(sched);
      best_t = mid;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (best_t != lo) {
    ++probes;
    best = decide(inst, lo, cfg);
    if (!best) {
      throw std::logic_error("search upper bound was not feasible");
    }
  }
  res.scaled_deadline = lo;
  res.probes = probes;
  res.schedule = std::move(*best);
  res.makespan = Rational(lo) / res.time_scale;
  if (res.schedule.makespan != res.makespan) {
    throw std::logic_error("extracted makespan differs from the optimum");
  }
  return res;
}

}  // namespace shortilp
