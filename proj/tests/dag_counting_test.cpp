#include <gtest/gtest.h>

#include "fpcount/dag_counting.hpp"
#include "support/brute_force.hpp"

using namespace fpcount;

namespace {

Rational entry_floor(int t, int n) {
  return oracle::power(1 - oracle::pow2(1 - t), static_cast<unsigned>(3 * n * n));
}

}  // namespace

TEST(ApproxTable, DiagonalIsOne) {
  for (Family f : {Family::dag, Family::essdag}) {
    const auto t = approx_table(f, 12, 6);
    for (int k = 1; k <= 12; ++k) EXPECT_EQ(t.at(k, k), ApproxFloat::one(6));
  }
}

TEST(ApproxTable, FullWidthIsExact) {
  for (int n = 1; n <= 8; ++n) {
    const auto a = exact_dag_table(n);
    const auto b = approx_table(Family::dag, n, n * n);
    for (int i = 1; i <= n; ++i) {
      for (int k = 1; k <= i; ++k) EXPECT_EQ(b.at(i, k).exact(), Rational{a.at(i, k)});
    }
  }
}

TEST(ApproxTable, EntryErrorBoundAtTenVertices) {
  const int n = 10;
  const int t = mantissa_length(Problem::dag_count, n, Rational{1, 10});
  const auto a = exact_dag_table(n);
  const auto b = approx_table(Family::dag, n, t);
  const Rational floor = entry_floor(t, n);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= i; ++k) {
      const Rational exact{a.at(i, k)};
      EXPECT_LE(b.at(i, k).exact(), exact);
      EXPECT_GE(b.at(i, k).exact(), floor * exact);
    }
  }
}

TEST(ApproxTable, NeverAboveExact) {
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const auto a = exact_table(f, 14);
    for (int t : {2, 5, 9}) {
      const auto b = approx_table(f, 14, t);
      for (int i = 1; i <= 14; ++i) {
        for (int k = 1; k <= i; ++k) EXPECT_LE(b.at(i, k).exact(), Rational{a.at(i, k)}) << family_name(f);
      }
    }
  }
}

TEST(ApproxTable, BranchWeightsReassembleEntries) {
  const auto d = exact_dag_table(7);
  const auto e = exact_extdag_table(7);
  for (int i = 2; i <= 7; ++i) {
    for (int k = 1; k < i; ++k) {
      BigInt sum = 0;
      for (const auto& w : d.branch_weights(i, k)) sum += w;
      EXPECT_EQ(sum * binomial(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)), d.at(i, k));
    }
    for (int k = 1; k <= i; ++k) {
      BigInt sum = 0;
      for (const auto& w : e.branch_weights(i, k)) sum += w;
      EXPECT_EQ(sum * i, e.at(i, k) * k);
    }
  }
}

TEST(ApproxCount, Examples) {
  EXPECT_EQ(approx_count(Family::dag, 1, Rational{1, 3}).value.exact(), 1);
  const Rational z3 = approx_count(Family::dag, 3, Rational{1, 2}).value.exact();
  EXPECT_GE(z3, Rational(25, 2));
  EXPECT_LE(z3, 25);
  const Rational z4 = approx_count(Family::dag, 4, Rational{1, 100}).value.exact();
  EXPECT_GE(z4, Rational(53757, 100));
  EXPECT_LE(z4, 543);
}

TEST(ApproxCount, BoundAndPrecision) {
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const auto table = exact_table(f, 10);
    for (int n = 1; n <= 10; ++n) {
      const Rational F{row_total(table, n)};
      for (const Rational& eps : {Rational{1}, Rational{1, 2}, Rational{1, 10}, Rational{1, 100}}) {
        const ApproxCount z = approx_count(f, n, eps);
        EXPECT_EQ(z.value.precision(), z.precision);
        EXPECT_EQ(z.precision, family_precision(f, Problem::dag_count, n, eps));
        EXPECT_LE(z.value.exact(), F);
        EXPECT_GE(z.value.exact(), (1 - eps) * F) << family_name(f) << " n=" << n;
      }
    }
  }
}

TEST(ApproxCount, ExactCount) {
  EXPECT_EQ(exact_count(Family::dag, 5), 29281);
  EXPECT_EQ(exact_count(Family::essdag, 5), 2616);
  EXPECT_EQ(exact_count(Family::extdag, 5), 10560);
}
