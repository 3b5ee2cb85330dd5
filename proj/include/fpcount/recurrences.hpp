#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fpcount/arithmetic.hpp"
#include "fpcount/count_table.hpp"

namespace fpcount {

namespace detail {

// Exact coefficients, memoized for the duration of one table build.
class CoefficientCache {
 public:
  explicit CoefficientCache(int n) : pascal_(static_cast<std::size_t>(n) + 1) {
    for (int i = 0; i <= n; ++i) {
      auto& row = pascal_[static_cast<std::size_t>(i)];
      row.resize(static_cast<std::size_t>(i) + 1, 1);
      for (int j = 1; j < i; ++j) {
        row[static_cast<std::size_t>(j)] =
            pascal_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
            pascal_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      }
    }
  }

  const BigInt& binomial(int n, int k) const {
    return pascal_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(k));
  }

  // (2^k - 1)^s
  const BigInt& nonempty_power(int k, int s) {
    auto [it, inserted] = nonempty_powers_.try_emplace({k, s});
    if (inserted) it->second = boost::multiprecision::pow(BigInt(pow2_int(static_cast<std::uint64_t>(k)) - 1), static_cast<unsigned>(s));
    return it->second;
  }

 private:
  std::vector<std::vector<BigInt>> pascal_;
  std::map<std::pair<int, int>, BigInt> nonempty_powers_;
};

}  // namespace detail

/// Ways to pick the in-neighborhood of one new max-depth vertex of an essDAG
/// over a sub-DAG with `s` max-depth vertices and `g` other vertices:
/// s (2^g - 1) with a single max-depth in-neighbor, (2^s - s - 1) 2^g with two or more.
inline std::pair<BigInt, BigInt> essdag_choice_counts(int s, int g) {
  const BigInt two_g = pow2_int(static_cast<std::uint64_t>(g));
  return {BigInt(s) * (two_g - 1), (pow2_int(static_cast<std::uint64_t>(s)) - s - 1) * two_g};
}

/// Out-neighborhood choices for a new extDAG source over a sub-DAG on n - 1
/// vertices: branch -1 (a fresh set avoiding the n - 1 existing ones, sub-DAG
/// has k - 1 sources) or branch t (t + 1 of the sub-DAG's k + t sources).
/// Returns 0 where the count would be negative.
inline BigInt extdag_choice_count(int n, int k, int branch) {
  if (branch < 0) {
    BigInt c = pow2_int(static_cast<std::uint64_t>(n - k)) - (n - 1);
    return c > 0 ? c : BigInt(0);
  }
  return binomial(static_cast<std::uint64_t>(k + branch), static_cast<std::uint64_t>(branch + 1)) *
         pow2_int(static_cast<std::uint64_t>(n - 1 - k - branch));
}

/// Evaluates the family's counting recurrence under an arithmetic policy.
///
///   dag:    T(n,k) = C(n,k) * sum_s [(2^k - 1)^s * 2^(k(n-k-s))] * T(n-k,s)
///   essdag: T(n,k) = C(n,k) * sum_s T(n-k,s) * [s(2^g - 1) + (2^s - s - 1) 2^g]^k,  g = n-k-s
///   extdag: T(n,k) = (n/k) * ( [2^(n-k) - (n-1)] T(n-1,k-1)
///                              + sum_t [C(k+t,t+1)] * 2^(n-1-k-t) * T(n-1,k+t) )
///
/// with T(i,i) = 1 for dag/essdag and T(1,1) = 1, T(i,0) = 0 for extdag.
/// Bracketed factors are exact integers passed through `arith.scalar` once.
/// The extdag recurrence counts each DAG once per removable source, hence the
/// division by k.
template <class Arith>
CountTable<typename Arith::value_type> build_table(Family family, int n, const Arith& arith) {
  using V = typename Arith::value_type;
  CountTable<V> table(family, n, arith.precision());
  detail::CoefficientCache coeff(n);

  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= i; ++k) {
      std::vector<V> terms;
      V total = arith.zero();
      switch (family) {
        case Family::dag: {
          if (k == i) {
            total = arith.one();
            break;
          }
          for (int s = 1; s <= i - k; ++s) {
            const auto shift = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(i - k - s);
            V term = arith.mul(arith.mul(arith.scalar(coeff.nonempty_power(k, s)), arith.power_of_two(shift)),
                               table.at(i - k, s));
            total = s == 1 ? term : arith.add(total, term);
            terms.push_back(std::move(term));
          }
          total = arith.mul(arith.scalar(coeff.binomial(i, k)), total);
          break;
        }
        case Family::essdag: {
          if (k == i) {
            total = arith.one();
            break;
          }
          for (int s = 1; s <= i - k; ++s) {
            auto [single, multi] = essdag_choice_counts(s, i - k - s);
            const BigInt choices = boost::multiprecision::pow(BigInt(single + multi), static_cast<unsigned>(k));
            V term = arith.mul(table.at(i - k, s), arith.scalar(choices));
            total = s == 1 ? term : arith.add(total, term);
            terms.push_back(std::move(term));
          }
          total = arith.mul(arith.scalar(coeff.binomial(i, k)), total);
          break;
        }
        case Family::extdag: {
          if (i == 1) {
            total = arith.one();
            break;
          }
          const BigInt fresh = extdag_choice_count(i, k, -1);
          V head = arith.zero();
          if (k >= 2 && fresh > 0) {
            head = arith.mul(arith.scalar(fresh), table.at(i - 1, k - 1));
          } else if (k >= 2 && pow2_int(static_cast<std::uint64_t>(i - k)) < i - 1 &&
                     !(table.at(i - 1, k - 1) == arith.zero())) {
            // 2^(i-k) < i-1 forces T(i-1,k-1) = 0: i-1 distinct out-sets among i-k non-sources.
            throw std::logic_error("extdag recurrence: negative coefficient on a nonzero entry");
          }
          total = head;
          terms.push_back(std::move(head));
          for (int t = 0; t <= i - k - 1; ++t) {
            V term = arith.mul(
                arith.mul(arith.scalar(coeff.binomial(k + t, t + 1)),
                          arith.power_of_two(static_cast<std::uint64_t>(i - 1 - k - t))),
                table.at(i - 1, k + t));
            total = arith.add(total, term);
            terms.push_back(std::move(term));
          }
          total = arith.scale(total, BigInt(i), BigInt(k));
          break;
        }
      }
      table.set(i, k, std::move(total));
      table.set_branch_weights(i, k, std::move(terms));
    }
  }
  return table;
}

inline ExactTable exact_table(Family family, int n) { return build_table(family, n, ExactArithmetic{}); }
inline ExactTable exact_dag_table(int n) { return exact_table(Family::dag, n); }
inline ExactTable exact_essdag_table(int n) { return exact_table(Family::essdag, n); }
inline ExactTable exact_extdag_table(int n) { return exact_table(Family::extdag, n); }

/// The same recurrence evaluated with t-bit truncating arithmetic.
inline ApproxTable approx_table(Family family, int n, int precision) {
  return build_table(family, n, TruncatingArithmetic(precision));
}

/// Left fold of row i over k = 1..i.
template <class Arith>
typename Arith::value_type row_total(const CountTable<typename Arith::value_type>& table, int i, const Arith& arith) {
  auto row = table.row(i);
  typename Arith::value_type total = row[0];
  for (std::size_t k = 1; k < row.size(); ++k) total = arith.add(total, row[k]);
  return total;
}

inline BigInt row_total(const ExactTable& table, int i) { return row_total(table, i, ExactArithmetic{}); }
inline ApproxFloat row_total(const ApproxTable& table, int i) {
  return row_total(table, i, TruncatingArithmetic(*table.precision()));
}

}  // namespace fpcount
