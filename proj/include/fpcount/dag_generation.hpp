#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "fpcount/count_table.hpp"
#include "fpcount/labeled_dag.hpp"
#include "fpcount/recurrences.hpp"
#include "fpcount/sampling.hpp"

namespace fpcount {

struct GeneratedDag {
  LabeledDag graph;
  /// Sources (dag, extdag) or maximum-depth vertices (essdag), sorted.
  std::vector<int> top;
};

namespace detail {

inline std::vector<int> set_minus(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Recursive generator driven by a count table of any mode.
///
/// Each level fixes the top layer of the current vertex set, then recurses on
/// the rest *conditioned* on the size of the sub-DAG's top layer, drawn with
/// weight equal to the matching summand of the recurrence. With an exact
/// table every member of the family is equally likely; with a t-bit table
/// every probability is a ratio of table values.
template <class Value>
class DagSampler {
 public:
  explicit DagSampler(CountTable<Value> table) : table_(std::move(table)), index_(table_) {
    if (table_.branch_weights(table_.size(), 1).empty() && table_.size() > 1) {
      throw std::invalid_argument("DagSampler: table carries no branch weights");
    }
  }

  const CountTable<Value>& table() const { return table_; }
  const PrefixIndex& index() const { return index_; }

  GeneratedDag sample(int n, RandomSource& rng) const {
    if (n < 1 || n > table_.size()) throw std::invalid_argument("DagSampler: n outside the table");
    const int k = sample_source_count(index_, n, rng);
    return sample_with_top(n, k, rng);
  }

  /// A member on n vertices whose top layer has exactly k vertices.
  GeneratedDag sample_with_top(int n, int k, RandomSource& rng) const {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = v;
    Builder b(n);
    std::vector<int> top;
    switch (table_.family()) {
      case Family::dag: top = grow_dag(labels, k, b, rng); break;
      case Family::essdag: top = grow_essdag(labels, k, b, rng); break;
      case Family::extdag: top = grow_extdag(labels, k, b, rng); break;
    }
    return {std::move(b.graph), std::move(top)};
  }

 private:
  struct Builder {
    explicit Builder(int n) : graph(n), out(static_cast<std::size_t>(n)) {}
    void arc(int u, int v) {
      graph.add_arc(u, v);
      auto& o = out[static_cast<std::size_t>(u)];
      o.insert(std::lower_bound(o.begin(), o.end(), v), v);
    }
    LabeledDag graph;
    std::vector<std::vector<int>> out;
  };

  int choose_branch(int n, int k, RandomSource& rng) const {
    return static_cast<int>(index_.branches(n, k).choose(rng));
  }

  std::vector<int> grow_dag(std::span<const int> vertices, int k, Builder& b, RandomSource& rng) const {
    const int n = static_cast<int>(vertices.size());
    std::vector<int> chosen = sample_k_subset(vertices, static_cast<std::size_t>(k), rng);
    if (k == n) return chosen;
    const std::vector<int> rest = detail::set_minus(vertices, chosen);
    const int s = choose_branch(n, k, rng) + 1;
    const std::vector<int> sub_sources = grow_dag(rest, s, b, rng);
    for (int x : rest) {
      const bool is_source = std::binary_search(sub_sources.begin(), sub_sources.end(), x);
      const BigInt code = is_source ? sample_nonempty_subset(chosen.size(), rng) : sample_subset(chosen.size(), rng);
      for (int u : decode_subset(code, chosen)) b.arc(u, x);
    }
    return chosen;
  }

  std::vector<int> grow_essdag(std::span<const int> vertices, int k, Builder& b, RandomSource& rng) const {
    const int n = static_cast<int>(vertices.size());
    std::vector<int> chosen = sample_k_subset(vertices, static_cast<std::size_t>(k), rng);
    if (k == n) return chosen;
    const std::vector<int> rest = detail::set_minus(vertices, chosen);
    const int s = choose_branch(n, k, rng) + 1;
    const std::vector<int> deepest = grow_essdag(rest, s, b, rng);
    const std::vector<int> others = detail::set_minus(rest, deepest);
    const auto [single, multi] = essdag_choice_counts(s, static_cast<int>(others.size()));
    // Codes of subsets of `deepest` with fewer than two elements.
    std::vector<BigInt> small_sets{0};
    for (int j = 0; j < s; ++j) small_sets.push_back(pow2_int(static_cast<std::uint64_t>(j)));

    for (int v : chosen) {
      if (rng.below(BigInt(single + multi)) < single) {
        const int x = deepest[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(s)))];
        const BigInt avoid = encode_subset(b.graph.in_neighbors(x), others);
        b.arc(x, v);
        for (int u : decode_subset(sample_subset_excluding(others.size(), {avoid}, rng), others)) b.arc(u, v);
      } else {
        for (int u : decode_subset(sample_subset_excluding(deepest.size(), small_sets, rng), deepest)) b.arc(u, v);
        for (int u : decode_subset(sample_subset(others.size(), rng), others)) b.arc(u, v);
      }
    }
    return chosen;
  }

  std::vector<int> grow_extdag(std::span<const int> vertices, int k, Builder& b, RandomSource& rng) const {
    const int n = static_cast<int>(vertices.size());
    if (n == 1) return {vertices.begin(), vertices.end()};
    const int x = vertices[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)))];
    const std::vector<int> rest = detail::set_minus(vertices, std::span<const int>(&x, 1));
    const int branch = choose_branch(n, k, rng) - 1;
    std::vector<int> top;
    if (branch < 0) {
      const std::vector<int> sub_sources = grow_extdag(rest, k - 1, b, rng);
      const std::vector<int> inner = detail::set_minus(rest, sub_sources);
      std::vector<BigInt> taken;
      for (int v : rest) taken.push_back(encode_subset(b.out[static_cast<std::size_t>(v)], inner));
      for (int u : decode_subset(sample_subset_excluding(inner.size(), std::move(taken), rng), inner)) b.arc(x, u);
      top = sub_sources;
    } else {
      const std::vector<int> sub_sources = grow_extdag(rest, k + branch, b, rng);
      const std::vector<int> covered = sample_k_subset(sub_sources, static_cast<std::size_t>(branch + 1), rng);
      const std::vector<int> inner = detail::set_minus(rest, sub_sources);
      for (int u : covered) b.arc(x, u);
      for (int u : decode_subset(sample_subset(inner.size(), rng), inner)) b.arc(x, u);
      top = detail::set_minus(sub_sources, covered);
    }
    top.insert(std::lower_bound(top.begin(), top.end(), x), x);
    return top;
  }

  CountTable<Value> table_;
  PrefixIndex index_;
};

template <class Value>
GeneratedDag generate_dag(int n, const CountTable<Value>& table, RandomSource& rng) {
  if (table.family() != Family::dag) throw std::invalid_argument("generate_dag: table is not a dag table");
  return DagSampler<Value>(table).sample(n, rng);
}

template <class Value>
GeneratedDag generate_essdag(int n, const CountTable<Value>& table, RandomSource& rng) {
  if (table.family() != Family::essdag) throw std::invalid_argument("generate_essdag: table is not an essdag table");
  return DagSampler<Value>(table).sample(n, rng);
}

template <class Value>
GeneratedDag generate_extdag(int n, const CountTable<Value>& table, RandomSource& rng) {
  if (table.family() != Family::extdag) throw std::invalid_argument("generate_extdag: table is not an extdag table");
  return DagSampler<Value>(table).sample(n, rng);
}

namespace detail {

inline VertexMask sources_within(const LabeledDag& g, VertexMask mask) {
  VertexMask out = 0;
  for (int v = 0; v < g.size(); ++v) {
    if ((mask >> v & 1) && (in_mask(g, v) & mask) == 0) out |= VertexMask{1} << v;
  }
  return out;
}

// Peeling sources layer by layer assigns longest-path depths; the last layer
// is the set of maximum-depth vertices.
inline VertexMask deepest_within(const LabeledDag& g, VertexMask mask) {
  VertexMask layer = 0;
  while (mask != 0) {
    layer = sources_within(g, mask);
    mask &= ~layer;
  }
  return layer;
}

inline Rational ratio(const BigInt& num, const BigInt& den) { return Rational{num, den}; }

}  // namespace detail

/// Exact probability that DagSampler over `table` outputs `d` (0 when d is
/// not a member of the table's family). Requires d.size() <= 64.
template <class Value>
Rational dag_probability(const LabeledDag& d, const CountTable<Value>& table) {
  const int n = d.size();
  if (n < 1 || n > table.size()) throw std::invalid_argument("dag_probability: size outside the table");
  if (n > 64) throw std::invalid_argument("dag_probability: at most 64 vertices");
  if (!is_acyclic(d)) throw std::invalid_argument("dag_probability: graph is not acyclic");
  if (!in_family(d, table.family())) return Rational{0};

  const PrefixIndex index(table);
  auto branch_ratio = [&](int size, int k, std::size_t j) {
    const WeightedChooser& c = index.branches(size, k);
    if (j >= c.size() || c.total() == 0) return Rational{0};
    return detail::ratio(c.weights()[j], c.total());
  };
  const VertexMask all = n == 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;

  Rational p{0};
  switch (table.family()) {
    case Family::dag:
    case Family::essdag: {
      const bool by_depth = table.family() == Family::essdag;
      auto top_of = [&](VertexMask m) { return by_depth ? detail::deepest_within(d, m) : detail::sources_within(d, m); };
      VertexMask mask = all;
      VertexMask top = top_of(mask);
      p = detail::ratio(sampling_weight(table.at(n, std::popcount(top))), index.row(n).total());
      for (;;) {
        const int size = std::popcount(mask);
        const int k = std::popcount(top);
        p /= Rational{binomial(static_cast<std::uint64_t>(size), static_cast<std::uint64_t>(k))};
        if (k == size) break;
        const VertexMask rest = mask & ~top;
        const VertexMask next = top_of(rest);
        const int s = std::popcount(next);
        p *= branch_ratio(size, k, static_cast<std::size_t>(s - 1));
        if (by_depth) {
          const auto [single, multi] = essdag_choice_counts(s, size - k - s);
          const BigInt choices = boost::multiprecision::pow(BigInt(single + multi), static_cast<unsigned>(k));
          p /= Rational{choices};
        } else {
          const BigInt per_source = pow2_int(static_cast<std::uint64_t>(k)) - 1;
          const BigInt per_other = pow2_int(static_cast<std::uint64_t>(k));
          p /= Rational{boost::multiprecision::pow(per_source, static_cast<unsigned>(s))};
          p /= Rational{boost::multiprecision::pow(per_other, static_cast<unsigned>(size - k - s))};
        }
        mask = rest;
        top = next;
      }
      break;
    }
    case Family::extdag: {
      const auto out = d.out_neighbors();
      std::map<VertexMask, Rational> memo;
      auto given_top = [&](auto&& self, VertexMask mask) -> Rational {
        const int size = std::popcount(mask);
        if (size == 1) return Rational{1};
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        const VertexMask srcs = detail::sources_within(d, mask);
        const int k = std::popcount(srcs);
        Rational total{0};
        for (int x = 0; x < n; ++x) {
          if (!(srcs >> x & 1)) continue;
          const VertexMask rest = mask & ~(VertexMask{1} << x);
          const VertexMask sub_sources = detail::sources_within(d, rest);
          VertexMask reach = 0;
          for (int u : out[static_cast<std::size_t>(x)]) reach |= VertexMask{1} << u;
          const int covered = std::popcount(reach & sub_sources);
          const int branch = covered - 1;
          const BigInt options = extdag_choice_count(size, k, branch);
          if (options <= 0) continue;
          Rational term = branch_ratio(size, k, static_cast<std::size_t>(branch + 1));
          if (term == 0) continue;
          term /= Rational{BigInt(size) * options};
          total += term * self(self, rest);
        }
        memo.emplace(mask, total);
        return total;
      };
      const int k = std::popcount(detail::sources_within(d, all));
      p = detail::ratio(sampling_weight(table.at(n, k)), index.row(n).total()) * given_top(given_top, all);
      break;
    }
  }
  return p;
}

}  // namespace fpcount
