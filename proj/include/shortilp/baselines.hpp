#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shortilp/errors.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

struct BruteForceResult {
  Rational makespan = 0;
  std::vector<int> assignment;
};

namespace detail_base {

inline Rational assignment_makespan(const SchedulingInstance& inst,
                                    const std::vector<int>& assignment) {
  const int n = inst.n();
  const int m = inst.m();
  Rational makespan = 0;
  if (inst.variant == Variant::QRel) {
    for (int i = 0; i < m; ++i) {
      std::vector<int> on_machine;
      for (int j = 0; j < n; ++j) {
        if (assignment[j] == i) on_machine.push_back(j);
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
      makespan = std::max(makespan, cursor);
    }
    return makespan;
  }
  std::vector<std::int64_t> loads(m, 0);
  for (int j = 0; j < n; ++j) {
    const int a = assignment[j];
    if (a == kReject) continue;
    loads[a] += inst.variant == Variant::R2 ? inst.jobs[j].per_machine[a]
                                            : inst.jobs[j].work;
  }
  for (int i = 0; i < m; ++i) {
    makespan =
        std::max(makespan, Rational(loads[i]) / inst.machines[i].speed);
  }
  return makespan;
}

inline bool assignment_valid(const SchedulingInstance& inst,
                             const std::vector<int>& assignment) {
  const int n = inst.n();
  const int m = inst.m();
  std::vector<std::int64_t> counts(m, 0);
  std::int64_t rejected_weight = 0;
  for (int j = 0; j < n; ++j) {
    const int a = assignment[j];
    if (a == kReject) {
      rejected_weight += inst.jobs[j].weight;
      continue;
    }
    if (inst.variant == Variant::Restricted &&
        !(inst.jobs[j].eligible_mask >> a & 1u)) {
      return false;
    }
    ++counts[a];
  }
  if (inst.variant == Variant::QCap) {
    for (int i = 0; i < m; ++i) {
      if (counts[i] > inst.machines[i].capacity) return false;
    }
  }
  if (inst.variant == Variant::QRej && rejected_weight > inst.reject_budget) {
    return false;
  }
  return true;
}

}  // namespace detail_base

// Exhaustive reference optimum: tries every assignment (including rejection
// for the budgeted variant) and keeps the best valid one, breaking makespan
// ties toward the lexicographically smallest assignment vector. Returns
// nothing exactly when no valid assignment exists, which can only happen
// when the capacities admit fewer jobs than exist.
inline std::optional<BruteForceResult> brute_force_schedule(
    const SchedulingInstance& inst) {
  check_instance(inst);
  const int n = inst.n();
  const int m = inst.m();
  const int base = inst.variant == Variant::QRej ? m + 1 : m;
  std::int64_t combos = 1;
  for (int j = 0; j < n; ++j) {
    combos *= base;
    if (combos > 10'000'000) {
      throw OracleTooLarge("assignment space exceeds ten million");
    }
  }

  std::vector<int> digits(n, 0);
  std::vector<int> assignment(n, 0);
  std::optional<BruteForceResult> best;
  while (true) {
    for (int j = 0; j < n; ++j) {
      assignment[j] = digits[j] == m ? kReject : digits[j];
    }
    if (detail_base::assignment_valid(inst, assignment)) {
      const Rational makespan =
          detail_base::assignment_makespan(inst, assignment);
      if (!best || makespan < best->makespan ||
          (makespan == best->makespan && assignment < best->assignment)) {
        best = BruteForceResult{makespan, assignment};
      }
    }
    int j = 0;
    while (j < n && digits[j] == base - 1) digits[j++] = 0;
    if (j == n) break;
    ++digits[j];
  }
  return best;
}

// Exact uniform-machine optimum by enumerating reachable load vectors, one
// job at a time. Exponential in principle, but exact and simple, which is
// what a cross-check needs.
inline Rational sahni_dp(const SchedulingInstance& inst) {
  check_instance(inst);
  if (inst.variant != Variant::QCmax) {
    throw std::invalid_argument("load-vector sweep covers plain makespan only");
  }
  const int m = inst.m();
  std::set<std::vector<std::int64_t>> states;
  states.insert(std::vector<std::int64_t>(m, 0));
  for (const Job& job : inst.jobs) {
    std::set<std::vector<std::int64_t>> next;
    for (const auto& state : states) {
      for (int i = 0; i < m; ++i) {
        auto grown = state;
        grown[i] += job.work;
        next.insert(std::move(grown));
        if (next.size() > 2'000'000) {
          throw OracleTooLarge("load-vector set exceeds two million");
        }
      }
    }
    states = std::move(next);
  }
  std::optional<Rational> best;
  for (const auto& state : states) {
    Rational makespan = 0;
    for (int i = 0; i < m; ++i) {
      makespan =
          std::max(makespan, Rational(state[i]) / inst.machines[i].speed);
    }
    if (!best || makespan < *best) best = makespan;
  }
  return *best;
}

// Exact two-unrelated-machine optimum: for every reachable first-machine
// load, remember the smallest possible second-machine load.
inline Rational horowitz_sahni_r2(const SchedulingInstance& inst) {
  check_instance(inst);
  if (inst.variant != Variant::R2) {
    throw std::invalid_argument("pair sweep covers two unrelated machines only");
  }
  std::map<std::int64_t, std::int64_t> frontier{{0, 0}};
  for (const Job& job : inst.jobs) {
    std::map<std::int64_t, std::int64_t> next;
    for (const auto& [first, second] : frontier) {
      const auto to_first = next.emplace(first + job.per_machine[0], second);
      if (!to_first.second) {
        to_first.first->second = std::min(to_first.first->second, second);
      }
      const auto to_second =
          next.emplace(first, second + job.per_machine[1]);
      if (!to_second.second) {
        to_second.first->second =
            std::min(to_second.first->second, second + job.per_machine[1]);
      }
    }
    frontier = std::move(next);
  }
  std::optional<std::int64_t> best;
  for (const auto& [first, second] : frontier) {
    const std::int64_t makespan = std::max(first, second);
    if (!best || makespan < *best) best = makespan;
  }
  return Rational(*best);
}

}  // namespace shortilp
