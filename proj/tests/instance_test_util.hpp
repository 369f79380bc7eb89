#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shortilp/instance.hpp"
#include "shortilp/rng.hpp"

namespace shortilp_test {

using shortilp::Machine;
using shortilp::SchedulingInstance;
using shortilp::Variant;

inline SchedulingInstance mk_qcmax(std::vector<std::int64_t> p,
                                   std::vector<std::int64_t> q) {
  SchedulingInstance inst;
  inst.variant = Variant::QCmax;
  for (std::size_t j = 0; j < p.size(); ++j) {
    inst.jobs.push_back({p[j], 0, 0, 0, {}, static_cast<int>(j)});
  }
  for (const std::int64_t speed : q) inst.machines.push_back({speed, 0});
  return inst;
}

inline SchedulingInstance mk_qcap(std::vector<std::int64_t> p,
                                  std::vector<std::int64_t> q,
                                  std::vector<std::int64_t> caps) {
  SchedulingInstance inst = mk_qcmax(std::move(p), std::move(q));
  inst.variant = Variant::QCap;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    inst.machines[i].capacity = caps[i];
  }
  return inst;
}

inline SchedulingInstance mk_qrej(std::vector<std::int64_t> p,
                                  std::vector<std::int64_t> w,
                                  std::vector<std::int64_t> q,
                                  std::int64_t budget) {
  SchedulingInstance inst = mk_qcmax(std::move(p), std::move(q));
  inst.variant = Variant::QRej;
  for (std::size_t j = 0; j < w.size(); ++j) inst.jobs[j].weight = w[j];
  inst.reject_budget = budget;
  return inst;
}

inline SchedulingInstance mk_qrel(std::vector<std::int64_t> p,
                                  std::vector<std::int64_t> r,
                                  std::vector<std::int64_t> q) {
  SchedulingInstance inst = mk_qcmax(std::move(p), std::move(q));
  inst.variant = Variant::QRel;
  for (std::size_t j = 0; j < r.size(); ++j) inst.jobs[j].release = r[j];
  return inst;
}

inline SchedulingInstance mk_restricted(std::vector<std::int64_t> p,
                                        std::vector<std::uint32_t> masks,
                                        int m) {
  SchedulingInstance inst;
  inst.variant = Variant::Restricted;
  for (std::size_t j = 0; j < p.size(); ++j) {
    inst.jobs.push_back({p[j], 0, 0, masks[j], {}, static_cast<int>(j)});
  }
  for (int i = 0; i < m; ++i) inst.machines.push_back({1, 0});
  return inst;
}

inline SchedulingInstance mk_r2(std::vector<std::int64_t> p1,
                                std::vector<std::int64_t> p2) {
  SchedulingInstance inst;
  inst.variant = Variant::R2;
  for (std::size_t j = 0; j < p1.size(); ++j) {
    inst.jobs.push_back({1, 0, 0, 0, {p1[j], p2[j]}, static_cast<int>(j)});
  }
  inst.machines.push_back({1, 0});
  inst.machines.push_back({1, 0});
  return inst;
}

struct SamplerLimits {
  int n_min = 1;
  int n_max = 8;
  int m_min = 2;
  int m_max = 3;
  std::int64_t p_max = 6;
  std::int64_t speed_max = 2;
  std::int64_t w_max = 4;
  std::int64_t r_max = 8;
};

inline SchedulingInstance random_instance(shortilp::SplitMix64& rng,
                                          Variant variant,
                                          const SamplerLimits& lim = {}) {
  const int n = static_cast<int>(rng.uniform(lim.n_min, lim.n_max));
  int m = static_cast<int>(rng.uniform(lim.m_min, lim.m_max));
  if (variant == Variant::R2) m = 2;
  std::vector<std::int64_t> p(n);
  for (auto& v : p) v = rng.uniform(1, lim.p_max);
  std::sort(p.begin(), p.end());
  std::vector<std::int64_t> q(m, 1);
  if (variant != Variant::Restricted && variant != Variant::R2) {
    for (auto& v : q) v = rng.uniform(1, lim.speed_max);
  }
  switch (variant) {
    case Variant::QCmax:
      return mk_qcmax(std::move(p), std::move(q));
    case Variant::QCap: {
      std::vector<std::int64_t> caps(m);
      while (true) {
        std::int64_t total = 0;
        for (auto& c : caps) {
          c = rng.uniform(0, n);
          total += c;
        }
        if (total >= n) break;
      }
      return mk_qcap(std::move(p), std::move(q), std::move(caps));
    }
    case Variant::QRej: {
      std::vector<std::int64_t> w(n);
      for (auto& v : w) v = rng.uniform(0, lim.w_max);
      const std::int64_t budget = rng.uniform(0, 2 * lim.w_max);
      return mk_qrej(std::move(p), std::move(w), std::move(q), budget);
    }
    case Variant::QRel: {
      std::vector<std::int64_t> r(n);
      for (auto& v : r) v = rng.uniform(0, lim.r_max);
      return mk_qrel(std::move(p), std::move(r), std::move(q));
    }
    case Variant::Restricted: {
      std::vector<std::uint32_t> masks(n);
      for (auto& v : masks) {
        v = static_cast<std::uint32_t>(rng.uniform(1, (1 << m) - 1));
      }
      return mk_restricted(std::move(p), std::move(masks), m);
    }
    case Variant::R2: {
      std::vector<std::int64_t> p2(n);
      for (auto& v : p2) v = rng.uniform(1, lim.p_max);
      return mk_r2(std::move(p), std::move(p2));
    }
  }
  throw std::logic_error("unknown variant");
}

}  // namespace shortilp_test
