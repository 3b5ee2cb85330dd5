#pragma once

#include "fpcount/mantissa.hpp"
#include "fpcount/recurrences.hpp"

namespace fpcount {

/// Precision used for counting (and, with Problem::dag_generate, sampling)
/// members of a family. extDAG tables carry the non-dyadic factor n/k, so
/// no finite width is exact for them and the full-width clamp is skipped.
inline int family_precision(Family family, Problem problem, int n, const Rational& eps) {
  return mantissa_length(problem, static_cast<std::uint64_t>(n), eps, 1, family != Family::extdag);
}

struct ApproxCount {
  ApproxFloat value;
  int precision;
};

/// Z = left fold of row n of the t-bit table, t = family_precision(dag_count).
/// Guarantees (1 - eps) F(n) <= Z <= F(n).
inline ApproxCount approx_count(Family family, int n, const Rational& eps) {
  const int t = family_precision(family, Problem::dag_count, n, eps);
  const ApproxTable table = approx_table(family, n, t);
  return {row_total(table, n), t};
}

inline BigInt exact_count(Family family, int n) { return row_total(exact_table(family, n), n); }

}  // namespace fpcount
