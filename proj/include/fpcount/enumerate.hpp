#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fpcount/labeled_dag.hpp"

namespace fpcount {

inline constexpr int max_enumeration_size = 5;

/// Every labeled member of `family` on n vertices, by brute force over all
/// 2^(n(n-1)) arc subsets. Output order follows the subset code.
inline std::vector<LabeledDag> enumerate_dags(int n, Family family) {
  if (n < 1 || n > max_enumeration_size) throw std::invalid_argument("enumerate_dags: n must be in 1..5");
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) pairs.emplace_back(u, v);
    }
  }
  std::vector<LabeledDag> out;
  const std::uint64_t limit = std::uint64_t{1} << pairs.size();
  for (std::uint64_t code = 0; code < limit; ++code) {
    // Cheap reject: both directions of a pair form a 2-cycle.
    bool two_cycle = false;
    for (std::size_t i = 0; i < pairs.size() && !two_cycle; ++i) {
      if (!(code >> i & 1)) continue;
      auto [u, v] = pairs[i];
      const std::size_t back = static_cast<std::size_t>(v * (n - 1) + (u < v ? u : u - 1));
      two_cycle = (code >> back & 1) != 0;
    }
    if (two_cycle) continue;
    LabeledDag g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (code >> i & 1) g.add_arc(pairs[i].first, pairs[i].second);
    }
    if (in_family(g, family)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace fpcount
