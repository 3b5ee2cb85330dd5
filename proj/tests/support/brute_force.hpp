#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the BigInt/Rational aliases.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "fpcount/bigint.hpp"

namespace oracle {

using fpcount::BigInt;
using fpcount::Rational;

// Adjacency matrix: adj[u][v] means arc u -> v.
using Matrix = std::vector<std::vector<bool>>;

inline bool acyclic(const Matrix& adj) {
  const std::size_t n = adj.size();
  std::vector<int> color(n, 0);
  std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
    color[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!adj[u][v]) continue;
      if (color[v] == 1) return false;
      if (color[v] == 0 && !dfs(v)) return false;
    }
    color[u] = 2;
    return true;
  };
  for (std::size_t u = 0; u < n; ++u) {
    if (color[u] == 0 && !dfs(u)) return false;
  }
  return true;
}

inline std::set<std::size_t> in_set(const Matrix& adj, std::size_t v) {
  std::set<std::size_t> s;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (adj[u][v]) s.insert(u);
  }
  return s;
}

inline std::set<std::size_t> out_set(const Matrix& adj, std::size_t u) {
  std::set<std::size_t> s;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (adj[u][v]) s.insert(v);
  }
  return s;
}

inline bool essential(const Matrix& adj) {
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (!adj[u][v]) continue;
      auto rest = in_set(adj, v);
      rest.erase(u);
      if (rest == in_set(adj, u)) return false;
    }
  }
  return true;
}

inline bool extensional(const Matrix& adj) {
  std::set<std::set<std::size_t>> seen;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (!seen.insert(out_set(adj, u)).second) return false;
  }
  return true;
}

enum class Kind { dag, essdag, extdag };

// All labeled members as sorted arc lists.
inline std::vector<std::vector<std::pair<int, int>>> digraphs(int n, Kind kind) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) slots.emplace_back(u, v);
    }
  }
  std::vector<std::vector<std::pair<int, int>>> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots.size()); ++code) {
    Matrix adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (code >> i & 1) {
        adj[static_cast<std::size_t>(slots[i].first)][static_cast<std::size_t>(slots[i].second)] = true;
        arcs.push_back(slots[i]);
      }
    }
    if (!acyclic(adj)) continue;
    if (kind == Kind::essdag && !essential(adj)) continue;
    if (kind == Kind::extdag && !extensional(adj)) continue;
    std::sort(arcs.begin(), arcs.end());
    out.push_back(std::move(arcs));
  }
  return out;
}

inline BigInt knapsack_by_subsets(const std::vector<BigInt>& weights, const BigInt& cap) {
  BigInt count = 0;
  const std::size_t n = weights.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) sum += weights[i];
    }
    if (sum <= cap) ++count;
  }
  return count;
}

struct Arc {
  int from;
  int to;
  BigInt weight;
};

// Weights of all s,t-paths (parallel arcs give distinct paths), sorted.
inline std::vector<BigInt> path_weights(int n, const std::vector<Arc>& arcs, int s, int t) {
  std::vector<BigInt> out;
  std::function<void(int, const BigInt&)> walk = [&](int v, const BigInt& w) {
    if (v == t) out.push_back(w);
    for (const auto& a : arcs) {
      if (a.from == v) walk(a.to, w + a.weight);
    }
  };
  (void)n;
  walk(s, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline BigInt paths_within(const std::vector<BigInt>& weights, const BigInt& cap) {
  return BigInt(std::upper_bound(weights.begin(), weights.end(), cap) - weights.begin());
}

inline Rational pow2(long e) {
  BigInt one = 1;
  return e >= 0 ? Rational{BigInt(one << static_cast<unsigned>(e))}
                : Rational{BigInt(1), BigInt(one << static_cast<unsigned>(-e))};
}

inline Rational power(Rational base, unsigned e) {
  Rational r{1};
  for (; e != 0; e >>= 1) {
    if (e & 1) r *= base;
    base *= base;
  }
  return r;
}

// fl(x): keep the leading t bits of a nonnegative rational.
inline Rational truncate(const Rational& x, int t) {
  if (x == 0) return 0;
  const BigInt a = boost::multiprecision::numerator(x);
  const BigInt b = boost::multiprecision::denominator(x);
  long p = static_cast<long>(boost::multiprecision::msb(a)) - static_cast<long>(boost::multiprecision::msb(b));
  while (pow2(p - 1) > x) --p;
  while (pow2(p) <= x) ++p;  // now 2^(p-1) <= x < 2^p
  const Rational unit = pow2(p - t);
  const Rational q = x / unit;
  const BigInt floor_q = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  return Rational{floor_q} * unit;
}

}  // namespace oracle
