#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "instance_test_util.hpp"
#include "shortilp/errors.hpp"
#include "shortilp/ilp_solve.hpp"
#include "shortilp/instance.hpp"
#include "shortilp/reductions.hpp"
#include "shortilp/rng.hpp"

using namespace shortilp;
using shortilp_test::mk_qcap;
using shortilp_test::mk_qcmax;
using shortilp_test::mk_qrej;
using shortilp_test::mk_qrel;
using shortilp_test::mk_r2;
using shortilp_test::mk_restricted;

namespace {

// Solves the built program with the engine matching its regime and applies
// the objective gate; returns the raw solver vector when the deadline is
// achievable.
std::optional<std::vector<std::int64_t>> solve_and_gate(
    const BuildResult& built) {
  const auto sol = built.prob.upper_bounds
                       ? solve_bounded(built.prob, SolverConfig{})
                       : solve_unbounded(built.prob, SolverConfig{});
  if (sol.status != SolveStatus::Optimal) return std::nullopt;
  if (built.meta.variant != Variant::R2) {
    REQUIRE(sol.objective >= built.meta.offset);
  }
  return sol.x;
}

std::vector<std::int64_t> repaired_multiplicities(
    const std::vector<std::int64_t>& x, const ReductionMeta& meta) {
  std::vector<std::int64_t> mult(meta.num_jobs, 0);
  for (std::size_t col = 0; col < meta.columns.size(); ++col) {
    if (meta.columns[col].kind == ColumnRole::Kind::JobVar) {
      mult[meta.columns[col].job] += x[col];
    }
  }
  return mult;
}

}  // namespace

TEST_CASE("objective coefficients are powers of the job count") {
  const auto [coeffs, offset] = objective_coeffs(3);
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[0] == 3);
  CHECK(coeffs[1] == 9);
  CHECK(coeffs[2] == 27);
  CHECK(offset == 39);

  const auto [one, one_offset] = objective_coeffs(1);
  CHECK(one[0] == 1);
  CHECK(one_offset == 1);

  const auto [ten, ten_offset] = objective_coeffs(10);
  CHECK(ten[9] == big_pow(10, 10));
  CHECK(ten_offset > BigInt("10000000000"));
}

TEST_CASE("exchange classes group fully interchangeable jobs") {
  const auto qcmax = exchange_classes_for(mk_qcmax({2, 2, 3}, {1}));
  REQUIRE(qcmax.size() == 2);
  CHECK(qcmax[0] == std::vector<int>{0, 1});
  CHECK(qcmax[1] == std::vector<int>{2});

  const auto qrej = exchange_classes_for(mk_qrej({1, 1}, {2, 3}, {1}, 0));
  REQUIRE(qrej.size() == 2);

  const auto qrel = exchange_classes_for(mk_qrel({1, 1}, {0, 5}, {1}));
  REQUIRE(qrel.size() == 2);

  const auto restricted =
      exchange_classes_for(mk_restricted({2, 2}, {1u, 3u}, 2));
  REQUIRE(restricted.size() == 2);

  const auto r2 = exchange_classes_for(mk_r2({1, 1}, {1, 1}));
  REQUIRE(r2.size() == 2);
}

TEST_CASE("makespan program has class rows plus load rows") {
  const auto inst = mk_qcmax({2, 3, 4}, {1, 1});
  const auto built = build_ilp1(inst, 5);
  // Three distinct works, two machines: 3 class rows + 2 load rows.
  CHECK(built.prob.num_rows == 5);
  CHECK(built.prob.num_cols == 2 * 3 + 2);
  CHECK(built.prob.rhs == std::vector<std::int64_t>{1, 1, 1, 5, 5});
  CHECK(built.prob.a_max() == 4);
  CHECK(built.prob.sense == Sense::Maximize);
  CHECK_FALSE(built.prob.upper_bounds.has_value());
  // Job column (machine i, job j): 1 in the class row of j, p_j in load i.
  const int col = 0 * 2 + 1;  // job 0 on machine 1
  CHECK(built.prob.at(0, col) == 1);
  CHECK(built.prob.at(4, col) == 2);
  CHECK(built.meta.offset == 3 + 9 + 27);
  CHECK(validate(built.prob).clean());
}

TEST_CASE("makespan program degenerates to one cardinality row") {
  const auto inst = mk_qcmax({2, 2, 2}, {1, 1});
  const auto built = build_ilp1(inst, 5);
  CHECK(built.prob.num_rows == 3);  // m + 1 when all jobs share a class
  CHECK(built.prob.rhs == std::vector<std::int64_t>{3, 5, 5});
}

TEST_CASE("single-job program is tight at its work") {
  const auto inst = mk_qcmax({7}, {1});
  const auto at7 = build_ilp1(inst, 7);
  const auto x = solve_and_gate(at7);
  REQUIRE(x.has_value());
  const auto sol = solve_unbounded(at7.prob, SolverConfig{});
  CHECK(sol.objective == at7.meta.offset);  // Z - offset = 0
  CHECK_FALSE(solve_and_gate(build_ilp1(inst, 6)).has_value());
}

TEST_CASE("makespan feasibility matches assignment enumeration") {
  SplitMix64 rng(seeded_stream(11, "reductions-ilp1-roundtrip"));
  for (int trial = 0; trial < 80; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 6));
    const int m = static_cast<int>(rng.uniform(1, 2));
    std::vector<std::int64_t> p(n), q(m);
    for (auto& v : p) v = rng.uniform(1, 4);
    for (auto& v : q) v = rng.uniform(1, 2);
    std::sort(p.begin(), p.end());
    const auto inst = mk_qcmax(p, q);
    const std::int64_t lambda = inst.lambda();
    const std::int64_t hi = lambda * n * inst.p_max();
    const std::int64_t t = rng.uniform(0, hi);
    CAPTURE(trial, n, m, t);

    bool brute_feasible = false;
    std::vector<int> assign(n, 0);
    while (true) {
      std::vector<std::int64_t> loads(m, 0);
      for (int j = 0; j < n; ++j) loads[assign[j]] += p[j];
      bool fits = true;
      for (int i = 0; i < m; ++i) {
        if (loads[i] > q[i] * t / lambda) fits = false;
      }
      if (fits) {
        brute_feasible = true;
        break;
      }
      int j = 0;
      while (j < n && assign[j] == m - 1) assign[j++] = 0;
      if (j == n) break;
      ++assign[j];
    }

    const auto built = build_ilp1(inst, t);
    const bool ilp_feasible = solve_and_gate(built).has_value();
    REQUIRE(ilp_feasible == brute_feasible);
  }
}

TEST_CASE("capacitated program enforces job-count budgets") {
  const auto inst = mk_qcap({1, 1, 1}, {1, 1}, {1, 2});
  CHECK(solve_and_gate(build_ilp2(inst, 2)).has_value());
  CHECK_FALSE(solve_and_gate(build_ilp2(inst, 1)).has_value());
  const auto built = build_ilp2(inst, 2);
  // 1 class row + 2 load rows + 2 capacity rows.
  CHECK(built.prob.num_rows == 5);
  CHECK(built.prob.num_cols == 2 * 3 + 4);
}

TEST_CASE("zero capacity forces the other machine") {
  const auto inst = mk_qcap({1}, {1, 1}, {0, 1});
  const auto built = build_ilp2(inst, 1);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto repaired = repair(*x, built.prob, built.meta, inst);
  const auto sched = extract_schedule(repaired, built.meta, inst);
  CHECK(sched.assignment == std::vector<int>{1});
}

TEST_CASE("too few capacity slots are infeasible at any deadline") {
  const auto inst = mk_qcap({1, 1, 1}, {1, 1}, {1, 1});
  CHECK_FALSE(solve_and_gate(build_ilp2(inst, 1000)).has_value());
}

TEST_CASE("rejection program can drop one job within budget") {
  const auto inst = mk_qrej({3, 3}, {1, 1}, {1}, 1);
  const auto built = build_ilp3(inst, 3);
  CHECK(built.prob.num_rows == 3);  // 1 class row + 1 load row + budget row
  REQUIRE(built.prob.upper_bounds.has_value());
  CHECK(solve_and_gate(built).has_value());
}

TEST_CASE("zero rejection budget reduces to plain makespan feasibility") {
  const auto inst = mk_qrej({3, 3}, {1, 1}, {1}, 0);
  CHECK_FALSE(solve_and_gate(build_ilp3(inst, 3)).has_value());
  CHECK(solve_and_gate(build_ilp3(inst, 6)).has_value());
}

TEST_CASE("rejection prefers the affordable job") {
  const auto inst = mk_qrej({1, 5}, {9, 1}, {1}, 1);
  const auto built = build_ilp3(inst, 1);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto repaired = repair(*x, built.prob, built.meta, inst);
  const auto sched = extract_schedule(repaired, built.meta, inst);
  CHECK(sched.assignment[0] == 0);
  CHECK(sched.assignment[1] == kReject);
}

TEST_CASE("release program respects release gaps") {
  const auto inst = mk_qrel({1, 1}, {0, 5}, {1});
  CHECK(solve_and_gate(build_ilp4(inst, 6)).has_value());
  CHECK_FALSE(solve_and_gate(build_ilp4(inst, 5)).has_value());
  const auto built = build_ilp4(inst, 6);
  // 2 (release,work) classes + 1 machine * 2 release blocks.
  CHECK(built.prob.num_rows == 4);
  CHECK(built.prob.rhs == std::vector<std::int64_t>{1, 1, 6, 1});
}

TEST_CASE("uniform releases collapse to the makespan program shape") {
  const auto rel = mk_qrel({2, 3}, {0, 0}, {1, 2});
  const auto plain = mk_qcmax({2, 3}, {1, 2});
  const auto a = build_ilp4(rel, 8);
  const auto b = build_ilp1(plain, 8);
  CHECK(a.prob.num_rows == b.prob.num_rows);
  CHECK(a.prob.rhs == b.prob.rhs);
  CHECK(a.prob.entries == b.prob.entries);
}

TEST_CASE("staggered releases on two machines") {
  const auto inst = mk_qrel({2, 2, 2}, {0, 0, 4}, {1, 1});
  CHECK(solve_and_gate(build_ilp4(inst, 6)).has_value());
}

TEST_CASE("deadline before a release date is infeasible") {
  const auto inst = mk_qrel({2, 2, 2}, {0, 0, 4}, {1, 1});
  const auto built = build_ilp4(inst, 3);
  bool has_negative_rhs = false;
  for (const std::int64_t b : built.prob.rhs) {
    if (b < 0) has_negative_rhs = true;
  }
  CHECK(has_negative_rhs);
  CHECK_FALSE(solve_and_gate(built).has_value());
}

TEST_CASE("eligibility program only builds admissible columns") {
  const auto inst = mk_restricted({2, 2, 2}, {1u, 1u, 3u}, 2);
  const auto built = build_ilp5(inst, 4);
  // Classes: ({1},2) twice and ({1,2},2) once -> 2 class rows + 2 load rows.
  CHECK(built.prob.num_rows == 4);
  CHECK(built.prob.num_cols == (1 + 1 + 2) + 2);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto repaired = repair(*x, built.prob, built.meta, inst);
  const auto sched = extract_schedule(repaired, built.meta, inst);
  CHECK(sched.assignment[0] == 0);
  CHECK(sched.assignment[1] == 0);
  CHECK(sched.assignment[2] == 1);
  CHECK(sched.makespan == Rational(4));
}

TEST_CASE("full eligibility degenerates to the unit-speed makespan shape") {
  const auto inst = mk_restricted({2, 2, 2}, {3u, 3u, 3u}, 2);
  const auto built = build_ilp5(inst, 4);
  CHECK(built.prob.num_rows == 3);  // m + 1 single class
}

TEST_CASE("two-machine unrelated program solves the diagonal") {
  const auto inst = mk_r2({1, 10}, {10, 1});
  const auto built = build_ilp6(inst, 1);
  CHECK(built.prob.num_rows == 2);
  REQUIRE(built.prob.upper_bounds.has_value());
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto repaired = repair(*x, built.prob, built.meta, inst);
  const auto sched = extract_schedule(repaired, built.meta, inst);
  CHECK(sched.assignment == std::vector<int>{0, 1});
  CHECK(sched.makespan == Rational(1));
}

TEST_CASE("single unrelated job needs its smaller time") {
  const auto inst = mk_r2({5}, {5});
  CHECK_FALSE(solve_and_gate(build_ilp6(inst, 4)).has_value());
  CHECK(solve_and_gate(build_ilp6(inst, 5)).has_value());
}

TEST_CASE("unrelated split puts one job on each machine") {
  const auto inst = mk_r2({3, 3}, {2, 2});
  const auto built = build_ilp6(inst, 3);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto sched =
      extract_schedule(repair(*x, built.prob, built.meta, inst), built.meta,
                       inst);
  CHECK(sched.makespan == Rational(3));
  CHECK(sched.loads[0] <= 3);
  CHECK(sched.loads[1] <= 3);
}

TEST_CASE("repair spreads a doubled duplicate over its class") {
  const auto inst = mk_qcmax({1, 1}, {1});
  const auto built = build_ilp1(inst, 4);
  // Columns: (m0,j0), (m0,j1), load slack. Put both units on job 1.
  std::vector<std::int64_t> x{0, 2, 2};
  RepairStats stats;
  const auto repaired = repair(x, built.prob, built.meta, inst, &stats);
  CHECK(repaired == std::vector<std::int64_t>{1, 1, 2});
  CHECK(stats.steps == 1);
  const auto mult = repaired_multiplicities(repaired, built.meta);
  CHECK(mult == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("repair is the identity on one-per-job solutions") {
  const auto inst = mk_qcmax({1, 1}, {1});
  const auto built = build_ilp1(inst, 4);
  std::vector<std::int64_t> x{1, 1, 2};
  RepairStats stats;
  CHECK(repair(x, built.prob, built.meta, inst, &stats) == x);
  CHECK(stats.steps == 0);
}

TEST_CASE("repair keeps eligibility-restricted moves inside the class") {
  const auto inst = mk_restricted({2, 2}, {3u, 3u}, 2);
  const auto built = build_ilp5(inst, 4);
  // Columns: (j0,m0), (j0,m1), (j1,m0), (j1,m1), slack0, slack1.
  std::vector<std::int64_t> x{0, 0, 2, 0, 0, 4};
  const auto repaired = repair(x, built.prob, built.meta, inst);
  const auto mult = repaired_multiplicities(repaired, built.meta);
  CHECK(mult == std::vector<std::int64_t>{1, 1});
  for (int i = 0; i < built.prob.num_rows; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < built.prob.num_cols; ++j) {
      acc += built.prob.at(i, j) * repaired[j];
    }
    CHECK(acc == built.prob.rhs[i]);
  }
}

TEST_CASE("repair moves work off the rejection machine when possible") {
  const auto inst = mk_qrej({1, 1}, {0, 0}, {1}, 0);
  const auto built = build_ilp3(inst, 2);
  // Columns: (reject,j0), (m0,j0), (reject,j1), (m0,j1), load slack, budget
  // slack. Job 1 carried twice: once rejected, once on the machine.
  std::vector<std::int64_t> x{0, 0, 1, 1, 1, 0};
  const auto repaired = repair(x, built.prob, built.meta, inst);
  CHECK(repaired[0] == 0);
  CHECK(repaired[1] == 1);  // job 0 placed on the machine, not rejected
  CHECK(repaired[2] == 1);
  CHECK(repaired[3] == 0);
}

TEST_CASE("repair rejects infeasible inputs") {
  const auto inst = mk_qcmax({1, 1}, {1});
  const auto built = build_ilp1(inst, 4);
  std::vector<std::int64_t> x{5, 5, 0};
  CHECK_THROWS_AS(repair(x, built.prob, built.meta, inst),
                  RepairPreconditionViolated);
}

TEST_CASE("extraction recomputes loads and makespan") {
  const auto inst = mk_qcmax({2, 3, 4}, {1, 1});
  const auto built = build_ilp1(inst, 5);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto sched =
      extract_schedule(repair(*x, built.prob, built.meta, inst), built.meta,
                       inst);
  REQUIRE(sched.loads.size() == 2);
  CHECK(sched.loads[0] + sched.loads[1] == 9);
  CHECK(std::max(sched.loads[0], sched.loads[1]) == 5);
  CHECK(sched.makespan == Rational(5));
}

TEST_CASE("extraction of an all-rejected schedule is empty") {
  const auto inst = mk_qrej({3, 3}, {1, 1}, {1}, 2);
  const auto built = build_ilp3(inst, 0);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto sched =
      extract_schedule(repair(*x, built.prob, built.meta, inst), built.meta,
                       inst);
  CHECK(sched.assignment == std::vector<int>{kReject, kReject});
  CHECK(sched.loads == std::vector<std::int64_t>{0});
  CHECK(sched.makespan == Rational(0));
}

TEST_CASE("extraction schedules release blocks late and gap-free") {
  const auto inst = mk_qrel({1, 1}, {0, 5}, {1});
  const auto built = build_ilp4(inst, 6);
  auto x = solve_and_gate(built);
  REQUIRE(x.has_value());
  const auto sched =
      extract_schedule(repair(*x, built.prob, built.meta, inst), built.meta,
                       inst);
  REQUIRE(sched.starts.has_value());
  CHECK((*sched.starts)[0] == Rational(4));
  CHECK((*sched.starts)[1] == Rational(5));
  CHECK(sched.makespan == Rational(6));
}

TEST_CASE("builders demand sorted jobs") {
  auto inst = mk_qcmax({3, 1}, {1});
  CHECK_THROWS_AS(build_ilp1(inst, 5), std::invalid_argument);
}

TEST_CASE("program shapes follow the class-count formulas") {
  SplitMix64 rng(seeded_stream(67, "reductions-shape-suite"));
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng.uniform(1, 7));
    const int m = static_cast<int>(rng.uniform(1, 3));
    std::vector<std::int64_t> p(n), w(n), r(n), q(m, 1), caps(m);
    std::vector<std::uint32_t> masks(n);
    for (auto& v : p) v = rng.uniform(1, 5);
    std::sort(p.begin(), p.end());
    for (auto& v : w) v = rng.uniform(0, 3);
    for (auto& v : r) v = rng.uniform(0, 6);
    for (auto& v : caps) v = rng.uniform(0, n);
    for (auto& v : masks) {
      v = static_cast<std::uint32_t>(rng.uniform(1, (1 << m) - 1));
    }
    const std::int64_t t = rng.uniform(1, 30);
    CAPTURE(trial, n, m, t);

    const auto inst1 = mk_qcmax(p, q);
    const auto c1 = exchange_classes_for(inst1).size();
    const auto b1 = build_ilp1(inst1, t);
    CHECK(b1.prob.num_rows == static_cast<int>(c1) + m);
    CHECK(b1.prob.num_cols == m * n + m);
    CHECK(b1.prob.a_max() == std::max<std::int64_t>(inst1.p_max(), 1));

    const auto inst2 = mk_qcap(p, q, caps);
    const auto b2 = build_ilp2(inst2, t);
    CHECK(b2.prob.num_rows ==
          static_cast<int>(exchange_classes_for(inst2).size()) + 2 * m);
    CHECK(b2.prob.num_cols == m * n + 2 * m);

    const auto inst3 = mk_qrej(p, w, q, rng.uniform(0, 5));
    const auto b3 = build_ilp3(inst3, t);
    CHECK(b3.prob.num_rows ==
          static_cast<int>(exchange_classes_for(inst3).size()) + m + 1);
    CHECK(b3.prob.num_cols == (m + 1) * n + m + 1);
    CHECK(b3.prob.a_max() ==
          std::max({inst3.p_max(), inst3.w_max(), std::int64_t{1}}));

    const auto inst4 = mk_qrel(p, r, q);
    std::size_t blocks = 0;
    {
      std::vector<std::int64_t> sorted_r = r;
      std::sort(sorted_r.begin(), sorted_r.end());
      sorted_r.erase(std::unique(sorted_r.begin(), sorted_r.end()),
                     sorted_r.end());
      blocks = sorted_r.size();
    }
    const auto b4 = build_ilp4(inst4, t);
    CHECK(b4.prob.num_rows ==
          static_cast<int>(exchange_classes_for(inst4).size() +
                           blocks * static_cast<std::size_t>(m)));

    const auto inst5 = mk_restricted(p, masks, m);
    const auto b5 = build_ilp5(inst5, t);
    std::size_t admissible = 0;
    for (const auto& mask : masks) admissible += __builtin_popcount(mask);
    CHECK(b5.prob.num_rows ==
          static_cast<int>(exchange_classes_for(inst5).size()) + m);
    CHECK(b5.prob.num_cols == static_cast<int>(admissible) + m);
  }
}
