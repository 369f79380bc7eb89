#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "shortilp/ilp.hpp"
#include "shortilp/numbers.hpp"
#include "shortilp/rng.hpp"

namespace shortilp_test {

using shortilp::BigInt;
using shortilp::IlpProblem;
using shortilp::Sense;
using shortilp::SplitMix64;

// Builds a problem from row-major A for readable test bodies.
inline IlpProblem make_problem(
    std::vector<std::vector<std::int64_t>> rows_a,
    std::vector<std::int64_t> b, std::vector<std::int64_t> c, Sense sense,
    std::optional<std::vector<std::int64_t>> u = std::nullopt) {
  IlpProblem prob;
  prob.num_rows = static_cast<int>(rows_a.size());
  prob.num_cols = static_cast<int>(rows_a.front().size());
  prob.entries.assign(
      static_cast<std::size_t>(prob.num_rows) * prob.num_cols, 0);
  for (int i = 0; i < prob.num_rows; ++i) {
    for (int j = 0; j < prob.num_cols; ++j) {
      prob.at(i, j) = rows_a[i][j];
    }
  }
  prob.rhs = std::move(b);
  prob.objective.reserve(c.size());
  for (const std::int64_t v : c) prob.objective.emplace_back(v);
  prob.upper_bounds = std::move(u);
  prob.sense = sense;
  return prob;
}

// Checks Ax=b, bounds, and the recomputed objective for an Optimal solution.
inline bool solution_valid(const IlpProblem& prob,
                           const shortilp::IlpSolution& sol) {
  if (sol.status != shortilp::SolveStatus::Optimal) return false;
  if (sol.x.size() != static_cast<std::size_t>(prob.num_cols)) return false;
  for (int j = 0; j < prob.num_cols; ++j) {
    if (sol.x[j] < 0) return false;
    if (prob.upper_bounds && sol.x[j] > (*prob.upper_bounds)[j]) return false;
  }
  for (int i = 0; i < prob.num_rows; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < prob.num_cols; ++j) {
      acc += prob.at(i, j) * sol.x[j];
    }
    if (acc != prob.rhs[i]) return false;
  }
  BigInt z = 0;
  for (int j = 0; j < prob.num_cols; ++j) z += prob.objective[j] * sol.x[j];
  return z == sol.objective;
}

// Random bounded program per the oracle-equivalence contract: M <= 3,
// N <= 5, entries in [-3,3], u <= 3, b in [-6,6]. Columns are kept nonzero.
inline IlpProblem random_bounded_problem(SplitMix64& rng) {
  IlpProblem prob;
  prob.num_rows = static_cast<int>(rng.uniform(1, 3));
  prob.num_cols = static_cast<int>(rng.uniform(1, 5));
  prob.entries.assign(
      static_cast<std::size_t>(prob.num_rows) * prob.num_cols, 0);
  for (int j = 0; j < prob.num_cols; ++j) {
    bool nonzero = false;
    while (!nonzero) {
      for (int i = 0; i < prob.num_rows; ++i) {
        const std::int64_t e = rng.uniform(-3, 3);
        prob.at(i, j) = e;
        if (e != 0) nonzero = true;
      }
    }
  }
  prob.rhs.resize(prob.num_rows);
  for (auto& v : prob.rhs) v = rng.uniform(-6, 6);
  prob.objective.resize(prob.num_cols);
  for (auto& v : prob.objective) v = rng.uniform(-5, 5);
  std::vector<std::int64_t> u(prob.num_cols);
  for (auto& v : u) v = rng.uniform(0, 3);
  prob.upper_bounds = std::move(u);
  prob.sense = rng.uniform(0, 1) == 0 ? Sense::Minimize : Sense::Maximize;
  return prob;
}

// Random unbounded program with componentwise nonnegative nonzero columns:
// M <= 3, N <= 6, a_max <= 4, b in [0,12].
inline IlpProblem random_unbounded_problem(SplitMix64& rng) {
  IlpProblem prob;
  prob.num_rows = static_cast<int>(rng.uniform(1, 3));
  prob.num_cols = static_cast<int>(rng.uniform(1, 6));
  prob.entries.assign(
      static_cast<std::size_t>(prob.num_rows) * prob.num_cols, 0);
  for (int j = 0; j < prob.num_cols; ++j) {
    bool nonzero = false;
    while (!nonzero) {
      for (int i = 0; i < prob.num_rows; ++i) {
        const std::int64_t e = rng.uniform(0, 4);
        prob.at(i, j) = e;
        if (e != 0) nonzero = true;
      }
    }
  }
  prob.rhs.resize(prob.num_rows);
  for (auto& v : prob.rhs) v = rng.uniform(0, 12);
  prob.objective.resize(prob.num_cols);
  for (auto& v : prob.objective) v = rng.uniform(-5, 5);
  prob.sense = rng.uniform(0, 1) == 0 ? Sense::Minimize : Sense::Maximize;
  return prob;
}

}  // namespace shortilp_test
