#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "fpcount/bigint.hpp"

namespace fpcount {

enum class Problem { dag_count, dag_generate, knapsack, dag_knapsack };

namespace detail {

inline void check_epsilon(const Rational& eps) {
  if (eps <= 0 || eps > 1) throw std::invalid_argument("epsilon must lie in (0, 1]");
}

}  // namespace detail

/// ceil(log2(m/n) + 1), at least 1: the per-vertex depth factor of a
/// binarized graph with n vertices and m arcs.
inline std::uint64_t depth_factor(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m <= n) return 1;
  return ceil_log2(Rational{BigInt(m), BigInt(n)}) + 1;
}

/// Mantissa length t for a problem of size n at relative error eps.
///
///   dag_count     1 + ceil(log2(3 n^2 / eps))
///   dag_generate  1 + ceil(log2(3 n^3 / eps))
///   knapsack      1 + ceil(log2(n / eps))
///   dag_knapsack  1 + ceil(log2(n * depth / eps))
///
/// so that 2^(1-t) <= eps / budget. The result is raised to c * ceil(log2 n)
/// and, when `clamp_to_full_width` is set, lowered to the width at which every
/// intermediate value of the problem is exact (n^2 for DAG tables, n for
/// knapsack, n * depth for dag_knapsack).
inline int mantissa_length(Problem problem, std::uint64_t n, const Rational& eps, std::uint64_t depth = 1,
                           bool clamp_to_full_width = true) {
  detail::check_epsilon(eps);
  if (n == 0) throw std::invalid_argument("mantissa_length: n must be positive");
  if (depth == 0) throw std::invalid_argument("mantissa_length: depth factor must be positive");
  BigInt budget;
  BigInt full;
  std::uint64_t c = 1;
  switch (problem) {
    case Problem::dag_count:
      budget = BigInt(3) * n * n;
      full = BigInt(n) * n;
      c = 2;
      break;
    case Problem::dag_generate:
      budget = BigInt(3) * n * n * n;
      full = BigInt(n) * n;
      c = 2;
      break;
    case Problem::knapsack:
      budget = n;
      full = n;
      break;
    case Problem::dag_knapsack:
      budget = BigInt(n) * depth;
      full = budget;
      break;
  }
  BigInt t = BigInt(1) + ceil_log2(Rational{budget} / eps);
  t = std::max(t, BigInt(c * ceil_log2(Rational{BigInt(n)})));
  if (clamp_to_full_width) t = std::min(t, full);
  t = std::max(t, BigInt(1));
  if (t > 1'000'000) throw std::invalid_argument("mantissa_length: precision out of range");
  return static_cast<int>(t);
}

inline int mantissa_length(Problem problem, std::uint64_t n, double eps, std::uint64_t depth = 1,
                           bool clamp_to_full_width = true) {
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  return mantissa_length(problem, n, rational_from_double(eps), depth, clamp_to_full_width);
}

}  // namespace fpcount
