#pragma once

#include <cstdint>

#include "fpcount/knapsack.hpp"
#include "fpcount/path_fptas.hpp"
#include "fpcount/random_source.hpp"

namespace fpcount {

/// n in 1..max_n, weights in 0..max_weight, C uniform in [0, sum of weights].
inline KnapsackInstance random_knapsack(RandomSource& rng, int max_n, std::uint64_t max_weight) {
  KnapsackInstance inst;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
  BigInt sum = 0;
  for (int i = 0; i < n; ++i) {
    inst.weights.emplace_back(rng.below(max_weight + 1));
    sum += inst.weights.back();
  }
  inst.capacity = rng.in_range(0, sum);
  return inst;
}

/// A pruned random DAG: 2..max_n vertices, at most max_arcs arcs (parallel
/// arcs allowed) between labels u < v, s = 0, t = last; C uniform in
/// [0, sum of weights].
inline PathInstance random_path_instance(RandomSource& rng, int max_n, int max_arcs, std::uint64_t max_weight) {
  for (;;) {
    WeightedMultiDag g;
    g.n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    g.source = 0;
    g.sink = g.n - 1;
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_arcs)));
    for (int j = 0; j < m; ++j) {
      int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n - 1)));
      if (v >= u) ++v;
      if (u > v) std::swap(u, v);
      g.add_arc(u, v, BigInt(rng.below(max_weight + 1)));
    }
    auto pruned = prune(g);
    if (!pruned) continue;
    PathInstance inst{std::move(pruned->graph), 0};
    BigInt sum = 0;
    for (const auto& a : inst.graph.arcs) sum += a.weight;
    inst.capacity = rng.in_range(0, sum);
    return inst;
  }
}

}  // namespace fpcount
