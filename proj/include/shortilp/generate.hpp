#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shortilp/instance.hpp"
#include "shortilp/rng.hpp"

namespace shortilp {

struct GeneratorOptions {
  std::int64_t speed_max = 1;      // speeds uniform in [1, speed_max]
  std::int64_t w_max = 4;          // rejection weights uniform in [0, w_max]
  std::int64_t r_max = 8;          // release dates uniform in [0, r_max]
  std::int64_t reject_budget = -1; // negative: sampled in [0, 2*w_max]
};

// Deterministic seeded sampler. Every field draws from its own named
// substream of a splitmix64 generator (stream = seed xor fnv1a64(tag)), so
// adding fields never perturbs existing ones. Draw order per stream:
//   "work":     n draws in [1, p_max] (sorted ascending afterwards);
//               for two unrelated machines, job j instead uses draws 2j
//               and 2j+1 as its two works
//   "speed":    m draws in [1, speed_max] (skipped for unit-speed variants)
//   "weight":   n draws in [0, w_max], paired with jobs after sorting
//   "release":  n draws in [0, r_max], paired with jobs after sorting
//   "eligible": n draws in [1, 2^m - 1], the bitmask of eligible machines
//   "capacity": m draws in [0, n], all redrawn until they sum to >= n
//   "budget":   one draw in [0, 2*w_max] when no budget was given
inline SchedulingInstance generate(Variant variant, int n, int m,
                                   std::int64_t p_max, std::uint64_t seed,
                                   const GeneratorOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (m < 1 || m > SchedulingInstance::kMaxMachines) {
    throw std::invalid_argument("m must be between 1 and 6");
  }
  if (variant == Variant::R2 && m != 2) {
    throw std::invalid_argument("two unrelated machines require m = 2");
  }
  if (p_max < 1) throw std::invalid_argument("p_max must be positive");
  if (opt.speed_max < 1) {
    throw std::invalid_argument("speed_max must be positive");
  }
  if (opt.w_max < 0 || opt.r_max < 0) {
    throw std::invalid_argument("w_max and r_max must be nonnegative");
  }

  SchedulingInstance inst;
  inst.variant = variant;

  auto work_rng = seeded_stream(seed, "work");
  if (variant == Variant::R2) {
    for (int j = 0; j < n; ++j) {
      Job job;
      job.per_machine = {work_rng.uniform(1, p_max),
                         work_rng.uniform(1, p_max)};
      job.work = std::min(job.per_machine[0], job.per_machine[1]);
      job.original_index = j;
      inst.jobs.push_back(std::move(job));
    }
  } else {
    std::vector<std::int64_t> works(n);
    for (auto& w : works) w = work_rng.uniform(1, p_max);
    std::sort(works.begin(), works.end());
    for (int j = 0; j < n; ++j) {
      Job job;
      job.work = works[j];
      job.original_index = j;
      inst.jobs.push_back(std::move(job));
    }
  }

  const bool unit_speeds =
      variant == Variant::Restricted || variant == Variant::R2;
  auto speed_rng = seeded_stream(seed, "speed");
  for (int i = 0; i < m; ++i) {
    Machine machine;
    machine.speed = unit_speeds ? 1 : speed_rng.uniform(1, opt.speed_max);
    inst.machines.push_back(machine);
  }

  switch (variant) {
    case Variant::QCmax:
    case Variant::R2:
      break;
    case Variant::QCap: {
      auto cap_rng = seeded_stream(seed, "capacity");
      while (true) {
        std::int64_t total = 0;
        for (int i = 0; i < m; ++i) {
          inst.machines[i].capacity = cap_rng.uniform(0, n);
          total += inst.machines[i].capacity;
        }
        if (total >= n) break;
      }
      break;
    }
    case Variant::QRej: {
      auto weight_rng = seeded_stream(seed, "weight");
      for (Job& job : inst.jobs) {
        job.weight = weight_rng.uniform(0, opt.w_max);
      }
      if (opt.reject_budget >= 0) {
        inst.reject_budget = opt.reject_budget;
      } else {
        auto budget_rng = seeded_stream(seed, "budget");
        inst.reject_budget = budget_rng.uniform(0, 2 * opt.w_max);
      }
      break;
    }
    case Variant::QRel: {
      auto release_rng = seeded_stream(seed, "release");
      for (Job& job : inst.jobs) {
        job.release = release_rng.uniform(0, opt.r_max);
      }
      break;
    }
    case Variant::Restricted: {
      auto mask_rng = seeded_stream(seed, "eligible");
      for (Job& job : inst.jobs) {
        job.eligible_mask =
            static_cast<std::uint32_t>(mask_rng.uniform(1, (1 << m) - 1));
      }
      break;
    }
  }

  check_instance(inst);
  return inst;
}

}  // namespace shortilp
