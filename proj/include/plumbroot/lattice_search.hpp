#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "plumbroot/intmat.hpp"
#include "plumbroot/rational.hpp"

namespace plumbroot {

// Linear side condition: sum(coef * x[var]) + offset must lie in a set.
struct RowConstraint {
  enum class Kind { Any, Finite, Interval };

  std::vector<std::pair<int, std::int64_t>> terms;
  std::int64_t offset = 0;
  Kind kind = Kind::Any;
  std::vector<std::int64_t> values;  // Finite, sorted
  std::int64_t lo = 0, hi = 0;       // Interval, inclusive
};

// Integer points x with x^T A x + b.x <= bound, A positive definite.
struct SearchProblem {
  IntMatrix a;
  IntVec b;
  i128 bound = 0;
  std::optional<std::pair<IntVec, IntVec>> box;  // inclusive per-coordinate
  std::vector<RowConstraint> rows;
};

using PointVisitor = std::function<void(const IntVec&)>;

// Depth-first enumeration with exact Schur-complement bounds. Each point is
// visited once; the visiting order is deterministic but unspecified.
void enumerate_points(const SearchProblem& problem, const PointVisitor& visit);

std::vector<IntVec> collect_points(const SearchProblem& problem);

// Reference implementation: scans the box and filters. Slow; for tests.
std::vector<IntVec> scan_box(const SearchProblem& problem, const IntVec& lo, const IntVec& hi);

// Does x satisfy every row constraint?
bool rows_hold(const std::vector<RowConstraint>& rows, const IntVec& x);

}  // namespace plumbroot
