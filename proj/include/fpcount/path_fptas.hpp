#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcount/approx_float.hpp"
#include "fpcount/bigint.hpp"
#include "fpcount/knapsack.hpp"
#include "fpcount/mantissa.hpp"

namespace fpcount {

struct WeightedArc {
  int from;
  int to;
  BigInt weight;
};

/// Arc-weighted digraph with parallel arcs and designated endpoints s, t.
struct WeightedMultiDag {
  int n = 0;
  std::vector<WeightedArc> arcs;
  int source = 0;
  int sink = 0;

  void add_arc(int u, int v, BigInt w) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("WeightedMultiDag: label out of range");
    arcs.push_back({u, v, std::move(w)});
  }

  // In-arc indices per vertex, in input order.
  std::vector<std::vector<std::size_t>> in_arcs() const {
    std::vector<std::vector<std::size_t>> in(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < arcs.size(); ++a) in[static_cast<std::size_t>(arcs[a].to)].push_back(a);
    return in;
  }
};

struct PathInstance {
  WeightedMultiDag graph;
  BigInt capacity;
};

/// Header "n m s t C", then m lines "u v w".
inline PathInstance parse_path_instance(std::istream& in) {
  std::string line;
  int number = 0;
  if (!detail::next_line(in, line, number)) throw ParseError(number + 1, "missing header 'n m s t C'");
  const auto head = detail::split_words(line);
  if (head.size() != 5) throw ParseError(number, "header must be 'n m s t C'");
  const BigInt n = detail::parse_field(head[0], number);
  const BigInt m = detail::parse_field(head[1], number);
  const BigInt s = detail::parse_field(head[2], number);
  const BigInt t = detail::parse_field(head[3], number);
  if (n < 1 || n > 10'000'000) throw ParseError(number, "n must be in 1..10000000");
  if (m > 100'000'000) throw ParseError(number, "m too large");
  if (s >= n || t >= n) throw ParseError(number, "s and t must be vertex labels below n");
  PathInstance inst;
  inst.graph.n = static_cast<int>(n);
  inst.graph.source = static_cast<int>(s);
  inst.graph.sink = static_cast<int>(t);
  inst.capacity = detail::parse_field(head[4], number);
  const auto count = static_cast<std::size_t>(m);
  for (std::size_t a = 0; a < count; ++a) {
    if (!detail::next_line(in, line, number)) {
      throw ParseError(number + 1, "expected " + std::to_string(count) + " arcs, found " + std::to_string(a));
    }
    const auto words = detail::split_words(line);
    if (words.size() != 3) throw ParseError(number, "arc must be 'u v w'");
    const BigInt u = detail::parse_field(words[0], number);
    const BigInt v = detail::parse_field(words[1], number);
    if (u >= n || v >= n) throw ParseError(number, "arc endpoint out of range");
    inst.graph.add_arc(static_cast<int>(u), static_cast<int>(v), detail::parse_field(words[2], number));
  }
  if (detail::next_line(in, line, number)) throw ParseError(number, "trailing content after the arcs");
  return inst;
}

/// Kahn order, smallest ready label first; nullopt on a cycle.
inline std::optional<std::vector<int>> topological_order(const WeightedMultiDag& g) {
  std::vector<int> indeg(static_cast<std::size_t>(g.n));
  std::vector<std::vector<int>> out(static_cast<std::size_t>(g.n));
  for (const auto& a : g.arcs) {
    ++indeg[static_cast<std::size_t>(a.to)];
    out[static_cast<std::size_t>(a.from)].push_back(a.to);
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < g.n; ++v) {
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != g.n) return std::nullopt;
  return order;
}

/// Exact number of s,v-paths of weight <= c for every vertex v, kept as the
/// distinct path weights up to C with running counts.
class PathProfile {
 public:
  PathProfile(const WeightedMultiDag& g, const BigInt& capacity) : capacity_(capacity) {
    const auto order = topological_order(g);
    if (!order) throw std::invalid_argument("exact path count: graph has a cycle");
    const auto in = g.in_arcs();
    std::vector<std::map<BigInt, BigInt>> weights(static_cast<std::size_t>(g.n));
    weights[static_cast<std::size_t>(g.source)][0] = 1;
    for (int v : *order) {
      auto& here = weights[static_cast<std::size_t>(v)];
      for (std::size_t a : in[static_cast<std::size_t>(v)]) {
        const auto& arc = g.arcs[a];
        for (const auto& [c, k] : weights[static_cast<std::size_t>(arc.from)]) {
          BigInt shifted = c + arc.weight;
          if (shifted > capacity_) break;
          here[shifted] += k;
        }
      }
    }
    rows_.resize(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
      BigInt run = 0;
      for (const auto& [c, k] : weights[static_cast<std::size_t>(v)]) {
        run += k;
        rows_[static_cast<std::size_t>(v)].emplace_back(c, run);
      }
    }
  }

  BigInt count(int v, const BigInt& c) const {
    if (c < 0) return 0;
    if (c > capacity_) throw std::out_of_range("PathProfile: capacity above C");
    const auto& row = rows_.at(static_cast<std::size_t>(v));
    auto it = std::upper_bound(row.begin(), row.end(), c,
                               [](const BigInt& x, const std::pair<BigInt, BigInt>& e) { return x < e.first; });
    return it == row.begin() ? BigInt(0) : std::prev(it)->second;
  }

 private:
  BigInt capacity_;
  std::vector<std::vector<std::pair<BigInt, BigInt>>> rows_;
};

inline BigInt exact_path_count(const WeightedMultiDag& g, const BigInt& capacity) {
  return PathProfile(g, capacity).count(g.sink, capacity);
}

struct PrunedDag {
  WeightedMultiDag graph;
  std::vector<int> original_label;
};

/// Restriction to vertices on some s,t-path, relabeled 0.. in label order.
/// nullopt when t is unreachable from s (zero paths).
inline std::optional<PrunedDag> prune(const WeightedMultiDag& g) {
  if (!topological_order(g)) throw std::invalid_argument("prune: graph has a cycle");
  auto reach = [&](int start, bool forward) {
    std::vector<char> seen(static_cast<std::size_t>(g.n));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
    for (const auto& a : g.arcs) {
      if (forward) adj[static_cast<std::size_t>(a.from)].push_back(a.to);
      else adj[static_cast<std::size_t>(a.to)].push_back(a.from);
    }
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto from_s = reach(g.source, true);
  const auto to_t = reach(g.sink, false);
  if (!from_s[static_cast<std::size_t>(g.sink)]) return std::nullopt;

  PrunedDag out;
  std::vector<int> label(static_cast<std::size_t>(g.n), -1);
  for (int v = 0; v < g.n; ++v) {
    if (from_s[static_cast<std::size_t>(v)] && to_t[static_cast<std::size_t>(v)]) {
      label[static_cast<std::size_t>(v)] = static_cast<int>(out.original_label.size());
      out.original_label.push_back(v);
    }
  }
  out.graph.n = static_cast<int>(out.original_label.size());
  out.graph.source = label[static_cast<std::size_t>(g.source)];
  out.graph.sink = label[static_cast<std::size_t>(g.sink)];
  for (const auto& a : g.arcs) {
    const int u = label[static_cast<std::size_t>(a.from)];
    const int v = label[static_cast<std::size_t>(a.to)];
    if (u >= 0 && v >= 0) out.graph.add_arc(u, v, a.weight);
  }
  return out;
}

struct BinarizedDag {
  WeightedMultiDag graph;
  std::vector<int> order;            // topological, source first, sink last
  std::vector<std::uint64_t> depth;  // longest path length from the source
  int auxiliary = 0;                 // vertices added by the trees

  std::uint64_t sink_depth() const { return depth[static_cast<std::size_t>(graph.sink)]; }
};

/// Replaces every in-star of size d > 2 by a complete binary tree of depth
/// ceil(log2 d). Leaves are paired in input arc order, an odd one carried up;
/// leaf arcs keep their weights, tree-internal arcs weigh 0. Original labels
/// are kept, tree vertices get labels n, n+1, ...
inline BinarizedDag binarize(const WeightedMultiDag& g) {
  BinarizedDag b;
  b.graph.n = g.n;
  b.graph.source = g.source;
  b.graph.sink = g.sink;
  const auto in = g.in_arcs();
  struct Feed {
    int from;
    BigInt weight;
  };
  for (int v = 0; v < g.n; ++v) {
    std::vector<Feed> level;
    for (std::size_t a : in[static_cast<std::size_t>(v)]) level.push_back({g.arcs[a].from, g.arcs[a].weight});
    while (level.size() > 2) {
      std::vector<Feed> up;
      for (std::size_t j = 0; j + 1 < level.size(); j += 2) {
        const int node = b.graph.n++;
        ++b.auxiliary;
        b.graph.arcs.push_back({level[j].from, node, level[j].weight});
        b.graph.arcs.push_back({level[j + 1].from, node, level[j + 1].weight});
        up.push_back({node, 0});
      }
      if (level.size() % 2 == 1) up.push_back(std::move(level.back()));
      level = std::move(up);
    }
    for (auto& f : level) b.graph.arcs.push_back({f.from, v, std::move(f.weight)});
  }
  auto order = topological_order(b.graph);
  if (!order) throw std::invalid_argument("binarize: graph has a cycle");
  b.order = std::move(*order);
  b.depth.assign(static_cast<std::size_t>(b.graph.n), 0);
  const auto bin_in = b.graph.in_arcs();
  for (int v : b.order) {
    for (std::size_t a : bin_in[static_cast<std::size_t>(v)]) {
      const auto from = static_cast<std::size_t>(b.graph.arcs[a].from);
      b.depth[static_cast<std::size_t>(v)] = std::max(b.depth[static_cast<std::size_t>(v)], b.depth[from] + 1);
    }
  }
  return b;
}

/// list(i) of a vertex with one in-arc (l2 empty) or two in-arcs:
/// breakpoints of c -> s~(i1, c - w1) (+) s~(i2, c - w2), capped at C.
/// i1 == i2 (parallel arcs) is allowed.
inline CapacityList merge_vertex_lists(const CapacityList& l1, const BigInt& w1, const CapacityList* l2,
                                       const BigInt& w2, const BigInt& cap) {
  CapacityList out{{}, 0, l1.precision};
  if (l2 == nullptr) {
    for (const auto& e : l1.entries) {
      BigInt c = e.capacity + w1;
      if (c > cap) break;
      out.entries.push_back({std::move(c), e.count});
    }
    return out;
  }
  // Stream over one list's capacities, each shifted by its own arc weight;
  // the partner list is read at the matching capacity by a trailing pointer.
  auto stream = [&cap](const CapacityList& own, const BigInt& w_own, const CapacityList& other,
                       const BigInt& w_other, bool own_first) {
    std::vector<CapacityEntry> s;
    s.reserve(own.entries.size());
    const ApproxFloat zero = ApproxFloat::zero(own.precision);
    std::size_t ptr = 0;
    for (const auto& e : own.entries) {
      BigInt c = e.capacity + w_own;
      if (c > cap) break;
      const BigInt target = c - w_other;
      while (ptr < other.entries.size() && other.entries[ptr].capacity <= target) ++ptr;
      const ApproxFloat& partner = ptr == 0 ? zero : other.entries[ptr - 1].count;
      s.push_back({std::move(c), own_first ? add(e.count, partner) : add(partner, e.count)});
    }
    return s;
  };
  out.entries = detail::merge_and_prune(stream(l1, w1, *l2, w2, true), stream(*l2, w2, l1, w1, false), cap);
  return out;
}

/// Per-vertex lists of a binarized graph at precision t, indexed by label.
inline std::vector<CapacityList> path_lists(const BinarizedDag& b, const BigInt& cap, int precision) {
  std::vector<CapacityList> lists(static_cast<std::size_t>(b.graph.n));
  const auto in = b.graph.in_arcs();
  for (int v : b.order) {
    auto& here = lists[static_cast<std::size_t>(v)];
    const auto& arcs = in[static_cast<std::size_t>(v)];
    if (v == b.graph.source) {
      here = CapacityList::initial(precision);
    } else if (arcs.size() == 1) {
      const auto& a = b.graph.arcs[arcs[0]];
      here = merge_vertex_lists(lists[static_cast<std::size_t>(a.from)], a.weight, nullptr, 0, cap);
    } else if (arcs.size() == 2) {
      const auto& a = b.graph.arcs[arcs[0]];
      const auto& c = b.graph.arcs[arcs[1]];
      here = merge_vertex_lists(lists[static_cast<std::size_t>(a.from)], a.weight,
                                &lists[static_cast<std::size_t>(c.from)], c.weight, cap);
    } else {
      throw std::invalid_argument("path_lists: vertex without in-arcs or in-degree above 2");
    }
    here.index = v;
  }
  return lists;
}

enum class DepthBudget { measured, a_priori };

struct PathCountResult {
  ApproxFloat value;
  int precision = 1;
  std::uint64_t budget = 0;  // B with 2^(1-t) <= eps / B
  std::uint64_t depth = 0;   // longest s,t-path of the binarized graph
};

/// Z with (1 - eps) s(t, C) <= Z <= s(t, C).
inline PathCountResult approx_count_paths(const WeightedMultiDag& g, const BigInt& cap, const Rational& eps,
                                          DepthBudget mode = DepthBudget::measured) {
  const auto pruned = prune(g);
  if (!pruned) {
    const int t = mantissa_length(Problem::dag_knapsack, 1, eps);
    return {ApproxFloat::zero(t), t, 1, 0};
  }
  const BinarizedDag b = binarize(pruned->graph);
  const std::uint64_t depth = b.sink_depth();
  std::uint64_t budget;
  int t;
  if (mode == DepthBudget::measured) {
    budget = std::max<std::uint64_t>(depth, 1);
    t = mantissa_length(Problem::dag_knapsack, budget, eps, 1);
  } else {
    const auto n = static_cast<std::uint64_t>(pruned->graph.n);
    const std::uint64_t factor = depth_factor(n, pruned->graph.arcs.size());
    budget = n * factor;
    if (depth > budget) throw std::logic_error("approx_count_paths: depth exceeds the a-priori budget");
    t = mantissa_length(Problem::dag_knapsack, n, eps, factor);
  }
  const auto lists = path_lists(b, cap, t);
  return {lookup(lists[static_cast<std::size_t>(b.graph.sink)], cap), t, budget, depth};
}

/// Path instance whose s,t-paths are the subsets of a knapsack instance:
/// vertices 0..n, two parallel arcs i-1 -> i of weights 0 and w_i.
inline PathInstance chain_gadget(const KnapsackInstance& inst) {
  PathInstance p;
  p.graph.n = static_cast<int>(inst.weights.size()) + 1;
  p.graph.source = 0;
  p.graph.sink = p.graph.n - 1;
  for (int i = 1; i < p.graph.n; ++i) {
    p.graph.add_arc(i - 1, i, 0);
    p.graph.add_arc(i - 1, i, inst.weights[static_cast<std::size_t>(i - 1)]);
  }
  p.capacity = inst.capacity;
  return p;
}

}  // namespace fpcount
