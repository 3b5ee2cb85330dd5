#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpcount {

enum class Family { dag, essdag, extdag };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::dag: return "dag";
    case Family::essdag: return "essdag";
    case Family::extdag: return "extdag";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "dag") return Family::dag;
  if (s == "essdag") return Family::essdag;
  if (s == "extdag") return Family::extdag;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

/// Digraph on labels 0..n-1 stored as sorted in-neighbor lists.
class LabeledDag {
 public:
  LabeledDag() = default;
  explicit LabeledDag(int n) : in_(static_cast<std::size_t>(n)) {}

  static LabeledDag from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    LabeledDag g(n);
    for (auto [u, v] : arcs) g.add_arc(u, v);
    return g;
  }

  int size() const { return static_cast<int>(in_.size()); }

  void add_arc(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("LabeledDag: self-loop");
    auto& list = in_[static_cast<std::size_t>(v)];
    auto it = std::lower_bound(list.begin(), list.end(), u);
    if (it == list.end() || *it != u) list.insert(it, u);
  }

  bool has_arc(int u, int v) const {
    const auto& list = in_[static_cast<std::size_t>(v)];
    return std::binary_search(list.begin(), list.end(), u);
  }

  const std::vector<int>& in_neighbors(int v) const { return in_[static_cast<std::size_t>(v)]; }

  std::vector<std::vector<int>> out_neighbors() const {
    std::vector<std::vector<int>> out(in_.size());
    for (int v = 0; v < size(); ++v) {
      for (int u : in_neighbors(v)) out[static_cast<std::size_t>(u)].push_back(v);
    }
    return out;  // each list sorted since v increases
  }

  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < size(); ++v) {
      for (int u : in_neighbors(v)) out.emplace_back(u, v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t arc_count() const {
    std::size_t m = 0;
    for (const auto& l : in_) m += l.size();
    return m;
  }

  friend bool operator==(const LabeledDag&, const LabeledDag&) = default;
  friend auto operator<=>(const LabeledDag&, const LabeledDag&) = default;

 private:
  void check(int v) const {
    if (v < 0 || v >= size()) throw std::out_of_range("LabeledDag: label out of range");
  }

  std::vector<std::vector<int>> in_;
};

/// Restriction of a graph to a vertex subset, as bitmasks over labels (n <= 64).
using VertexMask = std::uint64_t;

inline VertexMask in_mask(const LabeledDag& g, int v) {
  VertexMask m = 0;
  for (int u : g.in_neighbors(v)) m |= VertexMask{1} << u;
  return m;
}

inline bool is_acyclic(const LabeledDag& g) {
  const int n = g.size();
  std::vector<int> indeg(static_cast<std::size_t>(n));
  const auto out = g.out_neighbors();
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(g.in_neighbors(v).size());
    if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
  }
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (int w : out[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
    }
  }
  return seen == n;
}

inline std::vector<int> sources(const LabeledDag& g) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v) {
    if (g.in_neighbors(v).empty()) out.push_back(v);
  }
  return out;
}

/// Longest-path depth of every vertex from a source; g must be acyclic.
inline std::vector<int> depths(const LabeledDag& g) {
  const int n = g.size();
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<int> indeg(static_cast<std::size_t>(n));
  const auto out = g.out_neighbors();
  std::vector<int> order;
  for (int v = 0; v < n; ++v) {
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(g.in_neighbors(v).size());
    if (indeg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : out[static_cast<std::size_t>(order[i])]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) order.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("depths: graph has a cycle");
  for (int v : order) {
    int d = 0;
    for (int u : g.in_neighbors(v)) d = std::max(d, depth[static_cast<std::size_t>(u)] + 1);
    depth[static_cast<std::size_t>(v)] = d;
  }
  return depth;
}

/// Essential: for every arc (u, v), N-(u) != N-(v) \ {u}.
inline bool is_essential(const LabeledDag& g) {
  for (auto [u, v] : g.arcs()) {
    std::vector<int> rest;
    for (int x : g.in_neighbors(v)) {
      if (x != u) rest.push_back(x);
    }
    if (rest == g.in_neighbors(u)) return false;
  }
  return true;
}

/// Extensional: out-neighborhoods pairwise distinct.
inline bool is_extensional(const LabeledDag& g) {
  auto out = g.out_neighbors();
  std::sort(out.begin(), out.end());
  return std::adjacent_find(out.begin(), out.end()) == out.end();
}

inline bool in_family(const LabeledDag& g, Family f) {
  if (!is_acyclic(g)) return false;
  switch (f) {
    case Family::dag: return true;
    case Family::essdag: return is_essential(g);
    case Family::extdag: return is_extensional(g);
  }
  return false;
}

}  // namespace fpcount
