#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shortilp/numbers.hpp"

namespace shortilp {

enum class Sense { Minimize, Maximize };

enum class SolveStatus { Optimal, Infeasible, Unbounded };

// Equality-form integer program: optimize c.x over {x in N^N : Ax = b},
// optionally with x <= u. A is stored column-major; few rows, many columns.
struct IlpProblem {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<std::int64_t> entries;  // column-major, size num_rows*num_cols
  std::vector<std::int64_t> rhs;      // size num_rows
  std::vector<BigInt> objective;      // size num_cols
  std::optional<std::vector<std::int64_t>> upper_bounds;
  Sense sense = Sense::Minimize;

  std::int64_t at(int row, int col) const {
    return entries[static_cast<std::size_t>(col) * num_rows + row];
  }
  std::int64_t& at(int row, int col) {
    return entries[static_cast<std::size_t>(col) * num_rows + row];
  }

  std::int64_t a_max() const {
    std::int64_t best = 0;
    for (const std::int64_t e : entries) {
      const std::int64_t a = e < 0 ? -e : e;
      if (a > best) best = a;
    }
    return best;
  }
};

struct IlpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<std::int64_t> x;  // present iff Optimal
  BigInt objective = 0;         // c.x, exact; present iff Optimal
};

struct SolverConfig {
  // L-inf radius of the lattice tube around the segment [0, b] used by the
  // general unbounded engine. 0 means "auto": max(num_rows * a_max, 1).
  std::int64_t tube_radius = 0;
  // Hard cap on materialized DP states; exceeding it raises StateCapExceeded.
  std::size_t max_states = 50'000'000;
  // Testing hook: disable slack folding, column dedup, and window grouping
  // inside the stage sweep (results must agree; exercised by equivalence
  // tests).
  bool force_plain_sweep = false;
  // Testing hook: route nonnegative programs through the general tube engine
  // instead of the stage sweep.
  bool force_general_path = false;

  std::int64_t effective_radius(const IlpProblem& prob) const {
    std::int64_t k = tube_radius;
    if (k <= 0) k = prob.num_rows * prob.a_max();
    if (k < prob.a_max()) k = prob.a_max();
    if (k < 1) k = 1;
    return k;
  }
};

struct ValidationIssue {
  enum class Kind {
    ZeroColumn,
    NegativeBound,
    SizeMismatch,
    OverflowRisk,
  };
  Kind kind;
  int index = -1;  // column or row the issue refers to, -1 if global
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool clean() const { return issues.empty(); }
};

// Report-only structural checks: zero columns, negative bounds, shape
// mismatches, and entries whose products with the right-hand side approach
// the 64-bit limit. Pure; never throws.
inline ValidationReport validate(const IlpProblem& prob) {
  ValidationReport report;
  auto add = [&report](ValidationIssue::Kind kind, int index,
                       std::string detail) {
    report.issues.push_back({kind, index, std::move(detail)});
  };

  if (prob.num_rows < 1 || prob.num_cols < 1) {
    add(ValidationIssue::Kind::SizeMismatch, -1,
        "num_rows and num_cols must be >= 1");
    return report;
  }
  if (prob.entries.size() !=
      static_cast<std::size_t>(prob.num_rows) * prob.num_cols) {
    add(ValidationIssue::Kind::SizeMismatch, -1, "entries size != M*N");
    return report;
  }
  if (prob.rhs.size() != static_cast<std::size_t>(prob.num_rows)) {
    add(ValidationIssue::Kind::SizeMismatch, -1, "rhs size != M");
  }
  if (prob.objective.size() != static_cast<std::size_t>(prob.num_cols)) {
    add(ValidationIssue::Kind::SizeMismatch, -1, "objective size != N");
  }
  if (prob.upper_bounds &&
      prob.upper_bounds->size() != static_cast<std::size_t>(prob.num_cols)) {
    add(ValidationIssue::Kind::SizeMismatch, -1, "upper_bounds size != N");
  }

  for (int j = 0; j < prob.num_cols; ++j) {
    bool all_zero = true;
    for (int i = 0; i < prob.num_rows; ++i) {
      if (prob.at(i, j) != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      add(ValidationIssue::Kind::ZeroColumn, j,
          "column " + std::to_string(j + 1) + " is all zeros");
    }
  }

  if (prob.upper_bounds) {
    for (int j = 0; j < prob.num_cols; ++j) {
      if ((*prob.upper_bounds)[j] < 0) {
        add(ValidationIssue::Kind::NegativeBound, j,
            "upper bound of column " + std::to_string(j + 1) +
                " is negative");
      }
    }
  }

  std::int64_t max_abs_b = 0;
  for (std::size_t i = 0; i < prob.rhs.size(); ++i) {
    const std::int64_t a = prob.rhs[i] < 0 ? -prob.rhs[i] : prob.rhs[i];
    if (a > max_abs_b) max_abs_b = a;
  }
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 4;
  for (int j = 0; j < prob.num_cols; ++j) {
    for (int i = 0; i < prob.num_rows; ++i) {
      const std::int64_t e = prob.at(i, j);
      const std::int64_t a = e < 0 ? -e : e;
      if (a != 0 && max_abs_b != 0 && a > (limit - max_abs_b) / max_abs_b) {
        add(ValidationIssue::Kind::OverflowRisk, j,
            "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                ") times max |b| nears the 64-bit limit");
      }
    }
  }
  return report;
}

}  // namespace shortilp
