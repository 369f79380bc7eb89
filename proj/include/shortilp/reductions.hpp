#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "shortilp/errors.hpp"
#include "shortilp/ilp.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/numbers.hpp"

namespace shortilp {

// Role of one program column, used to map solver vectors back to schedules.
struct ColumnRole {
  enum class Kind { JobVar, LoadSlack, CapacitySlack, ReleaseSlack, RejectSlack };
  Kind kind = Kind::JobVar;
  int machine = -1;  // for JobVar: target machine, or -1 for rejection
  int job = -1;
  int release_block = -1;
};

struct ReductionMeta {
  Variant variant = Variant::QCmax;
  std::int64_t scaled_deadline = 0;
  std::int64_t time_scale = 1;
  std::vector<ColumnRole> columns;
  // Groups of job indices that are fully interchangeable: equal on every
  // attribute the constraints can see, so swapping assignments inside a
  // group preserves all row sums exactly.
  std::vector<std::vector<int>> exchange_classes;
  BigInt offset = 0;
  int num_jobs = 0;
  int num_machines = 0;
};

struct BuildResult {
  IlpProblem prob;
  ReductionMeta meta;
};

struct RepairStats {
  int steps = 0;
};

// Job j gets objective weight n^(j+1); a solution carrying every job exactly
// once scores exactly the offset, and no multiset that misses a job can make
// up for it with duplicates of smaller-indexed jobs.
inline std::pair<std::vector<BigInt>, BigInt> objective_coeffs(int num_jobs) {
  std::vector<BigInt> coeffs(num_jobs);
  BigInt offset = 0;
  for (int j = 0; j < num_jobs; ++j) {
    coeffs[j] = big_pow(num_jobs, j + 1);
    offset += coeffs[j];
  }
  return {std::move(coeffs), std::move(offset)};
}

inline std::vector<std::vector<int>> exchange_classes_for(
    const SchedulingInstance& inst) {
  std::vector<std::vector<int>> classes;
  std::map<std::pair<std::int64_t, std::int64_t>, int> index_of;
  for (int j = 0; j < inst.n(); ++j) {
    const Job& job = inst.jobs[j];
    std::pair<std::int64_t, std::int64_t> key;
    switch (inst.variant) {
      case Variant::QCmax:
      case Variant::QCap:
        key = {job.work, 0};
        break;
      case Variant::QRej:
        key = {job.work, job.weight};
        break;
      case Variant::QRel:
        key = {job.release, job.work};
        break;
      case Variant::Restricted:
        key = {static_cast<std::int64_t>(job.eligible_mask), job.work};
        break;
      case Variant::R2:
        key = {j, 0};  // never interchangeable
        break;
    }
    const auto [it, inserted] =
        index_of.emplace(key, static_cast<int>(classes.size()));
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(j);
  }
  return classes;
}

// Work budget of machine i over a scaled horizon t: the largest integer load
// finishing by time t / time_scale at speed q_i.
inline std::vector<std::int64_t> machine_budgets(const SchedulingInstance& inst,
                                                 std::int64_t t) {
  if (t < 0) throw std::invalid_argument("deadline must be nonnegative");
  const std::int64_t lambda = inst.lambda();
  std::vector<std::int64_t> budgets(inst.m());
  for (int i = 0; i < inst.m(); ++i) {
    budgets[i] = inst.machines[i].speed * t / lambda;
  }
  return budgets;
}

namespace detail_reduce {

class ProgramBuilder {
 public:
  ProgramBuilder(int rows, int cols, Sense sense) : rows_(rows) {
    prob_.num_rows = rows;
    prob_.num_cols = cols;
    prob_.entries.assign(static_cast<std::size_t>(rows) * cols, 0);
    prob_.rhs.assign(rows, 0);
    prob_.objective.assign(cols, BigInt(0));
    prob_.sense = sense;
  }

  void set(int row, int col, std::int64_t value) {
    prob_.entries[static_cast<std::size_t>(col) * rows_ + row] = value;
  }
  void rhs(int row, std::int64_t value) { prob_.rhs[row] = value; }
  void objective(int col, BigInt value) {
    prob_.objective[col] = std::move(value);
  }
  void bounds(std::vector<std::int64_t> u) {
    prob_.upper_bounds = std::move(u);
  }
  IlpProblem take() { return std::move(prob_); }

 private:
  IlpProblem prob_;
  int rows_ = 0;
};

inline ReductionMeta base_meta(const SchedulingInstance& inst,
                               std::int64_t t) {
  ReductionMeta meta;
  meta.variant = inst.variant;
  meta.scaled_deadline = t;
  meta.time_scale = inst.lambda();
  meta.exchange_classes = exchange_classes_for(inst);
  meta.num_jobs = inst.n();
  meta.num_machines = inst.m();
  return meta;
}

inline std::vector<int> class_of_job(const ReductionMeta& meta) {
  std::vector<int> cls(meta.num_jobs, -1);
  for (std::size_t c = 0; c < meta.exchange_classes.size(); ++c) {
    for (const int j : meta.exchange_classes[c]) cls[j] = static_cast<int>(c);
  }
  return cls;
}

inline void expect_variant(const SchedulingInstance& inst, Variant want) {
  check_instance(inst);
  if (inst.variant != want) {
    throw std::invalid_argument("builder called with wrong problem variant");
  }
}

}  // namespace detail_reduce

// Makespan feasibility on uniform machines. Rows: one cardinality row per
// exchange class, then one load row per machine. Columns: one assignment
// column per (job, machine) pair, then one load slack per machine.
inline BuildResult build_ilp1(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::QCmax);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  const int m = inst.m();
  const int classes = static_cast<int>(meta.exchange_classes.size());
  const auto cls = detail_reduce::class_of_job(meta);
  const auto budgets = machine_budgets(inst, t);
  auto [coeffs, offset] = objective_coeffs(n);
  meta.offset = std::move(offset);

  detail_reduce::ProgramBuilder b(classes + m, n * m + m, Sense::Maximize);
  for (int c = 0; c < classes; ++c) {
    b.rhs(c, static_cast<std::int64_t>(meta.exchange_classes[c].size()));
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const int col = j * m + i;
      b.set(cls[j], col, 1);
      b.set(classes + i, col, inst.jobs[j].work);
      b.objective(col, coeffs[j]);
      meta.columns.push_back({ColumnRole::Kind::JobVar, i, j, -1});
    }
  }
  for (int i = 0; i < m; ++i) {
    const int col = n * m + i;
    b.set(classes + i, col, 1);
    b.rhs(classes + i, budgets[i]);
    meta.columns.push_back({ColumnRole::Kind::LoadSlack, i, -1, -1});
  }
  return {b.take(), std::move(meta)};
}

// Adds one cardinality budget row per machine on top of the makespan rows:
// the number of jobs a machine receives may not exceed its capacity.
inline BuildResult build_ilp2(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::QCap);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  const int m = inst.m();
  const int classes = static_cast<int>(meta.exchange_classes.size());
  const auto cls = detail_reduce::class_of_job(meta);
  const auto budgets = machine_budgets(inst, t);
  auto [coeffs, offset] = objective_coeffs(n);
  meta.offset = std::move(offset);

  detail_reduce::ProgramBuilder b(classes + 2 * m, n * m + 2 * m,
                                  Sense::Maximize);
  for (int c = 0; c < classes; ++c) {
    b.rhs(c, static_cast<std::int64_t>(meta.exchange_classes[c].size()));
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const int col = j * m + i;
      b.set(cls[j], col, 1);
      b.set(classes + i, col, inst.jobs[j].work);
      b.set(classes + m + i, col, 1);
      b.objective(col, coeffs[j]);
      meta.columns.push_back({ColumnRole::Kind::JobVar, i, j, -1});
    }
  }
  for (int i = 0; i < m; ++i) {
    b.set(classes + i, n * m + i, 1);
    b.rhs(classes + i, budgets[i]);
    meta.columns.push_back({ColumnRole::Kind::LoadSlack, i, -1, -1});
  }
  for (int i = 0; i < m; ++i) {
    b.set(classes + m + i, n * m + m + i, 1);
    b.rhs(classes + m + i, inst.machines[i].capacity);
    meta.columns.push_back({ColumnRole::Kind::CapacitySlack, i, -1, -1});
  }
  return {b.take(), std::move(meta)};
}

// Job rejection with a penalty budget. Each job also gets a rejection column
// whose weight counts against the shared budget row; all columns carry unit
// upper bounds so the bounded solver applies.
inline BuildResult build_ilp3(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::QRej);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  const int m = inst.m();
  const int classes = static_cast<int>(meta.exchange_classes.size());
  const auto cls = detail_reduce::class_of_job(meta);
  const auto budgets = machine_budgets(inst, t);
  auto [coeffs, offset] = objective_coeffs(n);
  meta.offset = std::move(offset);

  const int cols = n * (m + 1) + m + 1;
  detail_reduce::ProgramBuilder b(classes + m + 1, cols, Sense::Maximize);
  std::vector<std::int64_t> u(cols, 1);
  for (int c = 0; c < classes; ++c) {
    b.rhs(c, static_cast<std::int64_t>(meta.exchange_classes[c].size()));
  }
  const int budget_row = classes + m;
  for (int j = 0; j < n; ++j) {
    const int reject_col = j * (m + 1);
    b.set(cls[j], reject_col, 1);
    b.set(budget_row, reject_col, inst.jobs[j].weight);
    b.objective(reject_col, coeffs[j]);
    meta.columns.push_back({ColumnRole::Kind::JobVar, -1, j, -1});
    for (int i = 0; i < m; ++i) {
      const int col = reject_col + 1 + i;
      b.set(cls[j], col, 1);
      b.set(classes + i, col, inst.jobs[j].work);
      b.objective(col, coeffs[j]);
      meta.columns.push_back({ColumnRole::Kind::JobVar, i, j, -1});
    }
  }
  for (int i = 0; i < m; ++i) {
    const int col = n * (m + 1) + i;
    b.set(classes + i, col, 1);
    b.rhs(classes + i, budgets[i]);
    u[col] = budgets[i];
    meta.columns.push_back({ColumnRole::Kind::LoadSlack, i, -1, -1});
  }
  {
    const int col = n * (m + 1) + m;
    b.set(budget_row, col, 1);
    b.rhs(budget_row, inst.reject_budget);
    u[col] = inst.reject_budget;
    meta.columns.push_back({ColumnRole::Kind::RejectSlack, -1, -1, -1});
  }
  b.bounds(std::move(u));
  return {b.take(), std::move(meta)};
}

// Release dates: one load row per (machine, distinct release) pair counting
// only work released at or after that date, with the correspondingly shrunk
// budget. A deadline below a release date shows up as a negative entry in
// the right-hand side.
inline BuildResult build_ilp4(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::QRel);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  const int m = inst.m();
  const int classes = static_cast<int>(meta.exchange_classes.size());
  const auto cls = detail_reduce::class_of_job(meta);
  const auto budgets = machine_budgets(inst, t);
  auto [coeffs, offset] = objective_coeffs(n);
  meta.offset = std::move(offset);

  std::vector<std::int64_t> releases;
  for (const Job& job : inst.jobs) releases.push_back(job.release);
  std::sort(releases.begin(), releases.end());
  releases.erase(std::unique(releases.begin(), releases.end()),
                 releases.end());
  const int blocks = static_cast<int>(releases.size());
  std::vector<int> block_of(n);
  for (int j = 0; j < n; ++j) {
    block_of[j] = static_cast<int>(
        std::lower_bound(releases.begin(), releases.end(),
                         inst.jobs[j].release) -
        releases.begin());
  }

  detail_reduce::ProgramBuilder b(classes + m * blocks, n * m + m * blocks,
                                  Sense::Maximize);
  for (int c = 0; c < classes; ++c) {
    b.rhs(c, static_cast<std::int64_t>(meta.exchange_classes[c].size()));
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const int col = j * m + i;
      b.set(cls[j], col, 1);
      for (int k = 0; k <= block_of[j]; ++k) {
        b.set(classes + i * blocks + k, col, inst.jobs[j].work);
      }
      b.objective(col, coeffs[j]);
      meta.columns.push_back({ColumnRole::Kind::JobVar, i, j, -1});
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < blocks; ++k) {
      const int row = classes + i * blocks + k;
      const int col = n * m + i * blocks + k;
      b.set(row, col, 1);
      b.rhs(row, budgets[i] - inst.machines[i].speed * releases[k]);
      meta.columns.push_back({ColumnRole::Kind::ReleaseSlack, i, -1, k});
    }
  }
  return {b.take(), std::move(meta)};
}

// Machine eligibility on identical machines: assignment columns exist only
// for admissible (job, machine) pairs.
inline BuildResult build_ilp5(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::Restricted);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  const int m = inst.m();
  const int classes = static_cast<int>(meta.exchange_classes.size());
  const auto cls = detail_reduce::class_of_job(meta);
  const auto budgets = machine_budgets(inst, t);
  auto [coeffs, offset] = objective_coeffs(n);
  meta.offset = std::move(offset);

  int admissible = 0;
  for (const Job& job : inst.jobs) {
    admissible += __builtin_popcount(job.eligible_mask);
  }
  detail_reduce::ProgramBuilder b(classes + m, admissible + m,
                                  Sense::Maximize);
  for (int c = 0; c < classes; ++c) {
    b.rhs(c, static_cast<std::int64_t>(meta.exchange_classes[c].size()));
  }
  int col = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!(inst.jobs[j].eligible_mask >> i & 1u)) continue;
      b.set(cls[j], col, 1);
      b.set(classes + i, col, inst.jobs[j].work);
      b.objective(col, coeffs[j]);
      meta.columns.push_back({ColumnRole::Kind::JobVar, i, j, -1});
      ++col;
    }
  }
  for (int i = 0; i < m; ++i) {
    b.set(classes + i, col, 1);
    b.rhs(classes + i, budgets[i]);
    meta.columns.push_back({ColumnRole::Kind::LoadSlack, i, -1, -1});
    ++col;
  }
  return {b.take(), std::move(meta)};
}

// Two unrelated machines. One binary column per job (1 = first machine) and
// two slack columns; the second row is the first-row identity rewritten so
// both rows share the job variables.
inline BuildResult build_ilp6(const SchedulingInstance& inst, std::int64_t t) {
  detail_reduce::expect_variant(inst, Variant::R2);
  ReductionMeta meta = detail_reduce::base_meta(inst, t);
  const int n = inst.n();
  std::int64_t total_second = 0;
  for (const Job& job : inst.jobs) total_second += job.per_machine[1];

  detail_reduce::ProgramBuilder b(2, n + 2, Sense::Minimize);
  std::vector<std::int64_t> u(n + 2, 1);
  for (int j = 0; j < n; ++j) {
    b.set(0, j, inst.jobs[j].per_machine[0]);
    b.set(1, j, -inst.jobs[j].per_machine[1]);
    meta.columns.push_back({ColumnRole::Kind::JobVar, 0, j, -1});
  }
  b.set(0, n, 1);
  b.set(1, n + 1, 1);
  b.rhs(0, t);
  b.rhs(1, t - total_second);
  u[n] = t;
  u[n + 1] = t;
  meta.columns.push_back({ColumnRole::Kind::LoadSlack, 0, -1, -1});
  meta.columns.push_back({ColumnRole::Kind::LoadSlack, 1, -1, -1});
  meta.offset = 0;
  b.bounds(std::move(u));
  return {b.take(), std::move(meta)};
}

namespace detail_reduce {

inline void require_row_sums(const std::vector<std::int64_t>& x,
                             const IlpProblem& prob) {
  if (static_cast<int>(x.size()) != prob.num_cols) {
    throw RepairPreconditionViolated("solution length mismatch");
  }
  for (const std::int64_t v : x) {
    if (v < 0) throw RepairPreconditionViolated("negative multiplicity");
  }
  if (prob.upper_bounds) {
    for (int j = 0; j < prob.num_cols; ++j) {
      if (x[j] > (*prob.upper_bounds)[j]) {
        throw RepairPreconditionViolated("upper bound exceeded");
      }
    }
  }
  for (int i = 0; i < prob.num_rows; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < prob.num_cols; ++j) acc += prob.at(i, j) * x[j];
    if (acc != prob.rhs[i]) {
      throw RepairPreconditionViolated("row sum differs from right-hand side");
    }
  }
}

inline std::vector<std::int64_t> job_multiplicities(
    const std::vector<std::int64_t>& x, const ReductionMeta& meta) {
  std::vector<std::int64_t> mult(meta.num_jobs, 0);
  for (std::size_t col = 0; col < meta.columns.size(); ++col) {
    if (meta.columns[col].kind == ColumnRole::Kind::JobVar) {
      mult[meta.columns[col].job] += x[col];
    }
  }
  return mult;
}

}  // namespace detail_reduce

// Turns any solver vector that meets the rows, the bounds, and the objective
// gate into one that carries every job exactly once. Each step moves one
// unit from an over-carried job to a missing job of the same exchange class
// on the same machine, which preserves every row sum exactly; the number of
// missing jobs drops by one per step, so at most n steps run.
inline std::vector<std::int64_t> repair(std::vector<std::int64_t> x,
                                        const IlpProblem& prob,
                                        const ReductionMeta& meta,
                                        const SchedulingInstance& inst,
                                        RepairStats* stats = nullptr) {
  detail_reduce::require_row_sums(x, prob);
  if (stats) stats->steps = 0;
  if (meta.variant == Variant::R2) return x;

  BigInt score = 0;
  for (int j = 0; j < prob.num_cols; ++j) score += prob.objective[j] * x[j];
  if (score < meta.offset) {
    throw RepairPreconditionViolated("objective below the carry-all target");
  }

  std::vector<int> cls = detail_reduce::class_of_job(meta);
  std::vector<std::vector<int>> cols_of_job(meta.num_jobs);
  for (std::size_t col = 0; col < meta.columns.size(); ++col) {
    if (meta.columns[col].kind == ColumnRole::Kind::JobVar) {
      cols_of_job[meta.columns[col].job].push_back(static_cast<int>(col));
    }
  }

  int steps = 0;
  while (true) {
    const auto mult = detail_reduce::job_multiplicities(x, meta);
    int missing = -1;
    for (int j = meta.num_jobs - 1; j >= 0; --j) {
      if (mult[j] == 0) {
        missing = j;
        break;
      }
    }
    if (missing < 0) break;

    int donor = -1;
    for (auto it = meta.exchange_classes[cls[missing]].rbegin();
         it != meta.exchange_classes[cls[missing]].rend(); ++it) {
      if (mult[*it] > 1) {
        donor = *it;
        break;
      }
    }
    if (donor < 0) {
      throw std::logic_error("no donor in the class of a missing job");
    }

    int carrier = -1;
    for (const int col : cols_of_job[donor]) {
      if (x[col] <= 0) continue;
      if (carrier < 0) {
        carrier = col;
        continue;
      }
      const bool carrier_rejects = meta.columns[carrier].machine < 0;
      const bool col_rejects = meta.columns[col].machine < 0;
      if (carrier_rejects && !col_rejects) carrier = col;
      // first non-rejecting column has the smallest machine index already
    }
    if (carrier < 0) throw std::logic_error("donor multiplicity had no column");

    int target = -1;
    for (const int col : cols_of_job[missing]) {
      if (meta.columns[col].machine == meta.columns[carrier].machine) {
        target = col;
        break;
      }
    }
    if (target < 0) {
      throw std::logic_error("missing job lacks the donor's machine column");
    }
    --x[carrier];
    ++x[target];
    detail_reduce::require_row_sums(x, prob);
    if (++steps > meta.num_jobs) {
      throw std::logic_error("repair did not converge within n steps");
    }
  }

  BigInt final_score = 0;
  for (int j = 0; j < prob.num_cols; ++j) {
    final_score += prob.objective[j] * x[j];
  }
  if (final_score != meta.offset) {
    throw std::logic_error("repaired solution does not carry each job once");
  }
  if (stats) stats->steps = steps;
  return x;
}

// Reads a repaired vector back into an explicit schedule. For release-date
// instances each machine runs its jobs in earliest-release order as one
// gap-free block finishing at the deadline, which the shrunk-budget rows
// guarantee never starts a job before its release.
inline Schedule extract_schedule(const std::vector<std::int64_t>& x,
                                 const ReductionMeta& meta,
                                 const SchedulingInstance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  Schedule sched;
  sched.assignment.assign(n, kReject);
  sched.loads.assign(m, 0);

  if (meta.variant == Variant::R2) {
    for (int j = 0; j < n; ++j) {
      const int machine = x[j] == 1 ? 0 : 1;
      sched.assignment[j] = machine;
      sched.loads[machine] += inst.jobs[j].per_machine[machine];
    }
  } else {
    std::vector<int> carriers(n, 0);
    for (std::size_t col = 0; col < meta.columns.size(); ++col) {
      const ColumnRole& role = meta.columns[col];
      if (role.kind != ColumnRole::Kind::JobVar || x[col] == 0) continue;
      if (x[col] != 1 || carriers[role.job]++ > 0) {
        throw std::logic_error("schedule extraction requires a repaired input");
      }
      sched.assignment[role.job] = role.machine;
      if (role.machine >= 0) {
        sched.loads[role.machine] += inst.jobs[role.job].work;
      }
    }
    for (int j = 0; j < n; ++j) {
      if (carriers[j] == 0) {
        throw std::logic_error("schedule extraction requires a repaired input");
      }
    }
  }

  if (meta.variant == Variant::QRel) {
    const Rational deadline =
        Rational(meta.scaled_deadline) / meta.time_scale;
    std::vector<Rational> starts(n, Rational(0));
    Rational finish_latest = 0;
    for (int i = 0; i < m; ++i) {
      std::vector<int> on_machine;
      for (int j = 0; j < n; ++j) {
        if (sched.assignment[j] == i) on_machine.push_back(j);
      }
      std::sort(on_machine.begin(), on_machine.end(), [&](int a, int b) {
        return std::make_pair(inst.jobs[a].release, a) <
               std::make_pair(inst.jobs[b].release, b);
      });
      Rational cursor = deadline;
      for (auto it = on_machine.rbegin(); it != on_machine.rend(); ++it) {
        cursor -= Rational(inst.jobs[*it].work) / inst.machines[i].speed;
        starts[*it] = cursor;
        if (cursor < inst.jobs[*it].release) {
          throw std::logic_error("release-late block starts before a release");
        }
      }
      if (!on_machine.empty()) finish_latest = std::max(finish_latest, deadline);
    }
    sched.starts = std::move(starts);
    sched.makespan = finish_latest;
  } else {
    Rational makespan = 0;
    for (int i = 0; i < m; ++i) {
      makespan = std::max(
          makespan, Rational(sched.loads[i]) / inst.machines[i].speed);
    }
    sched.makespan = makespan;
  }
  return sched;
}

}  // namespace shortilp
