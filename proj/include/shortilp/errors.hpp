#pragma once

#include <stdexcept>
#include <string>

namespace shortilp {

// Raised when a lattice DP would materialize more states than the configured
// budget allows. Signals "instance too large for this budget", never
// infeasibility.
struct StateCapExceeded : std::runtime_error {
  explicit StateCapExceeded(std::size_t cap)
      : std::runtime_error("state cap exceeded: more than " +
                           std::to_string(cap) + " lattice states") {}
};

// Raised by exhaustive-enumeration oracles when the enumeration bound is
// exceeded.
struct OracleTooLarge : std::runtime_error {
  explicit OracleTooLarge(const std::string& detail)
      : std::runtime_error("oracle enumeration too large: " + detail) {}
};

// Raised by implied_upper_bounds when a column cannot be bounded from the
// rows alone.
struct NoBoundError : std::runtime_error {
  explicit NoBoundError(int column_index)
      : std::runtime_error("column " + std::to_string(column_index + 1) +
                           " has no all-nonnegative row with a positive "
                           "entry; no implied upper bound"),
        column(column_index) {}
  int column;
};

// Raised by repair when its precondition fails (solution infeasible or
// objective below the offset); indicates a solver or builder bug upstream.
struct RepairPreconditionViolated : std::runtime_error {
  explicit RepairPreconditionViolated(const std::string& detail)
      : std::runtime_error("repair precondition violated: " + detail) {}
};

// Raised by the instance/schedule parsers; carries field context.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& detail)
      : std::runtime_error("parse error: " + detail) {}
};

// Raised by minimize_makespan when no deadline works (capacitated instances
// with fewer capacity slots than jobs).
struct InfeasibleInstance : std::runtime_error {
  explicit InfeasibleInstance(const std::string& detail)
      : std::runtime_error("infeasible instance: " + detail) {}
};

}  // namespace shortilp
