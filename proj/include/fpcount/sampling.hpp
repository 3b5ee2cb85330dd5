#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fpcount/approx_float.hpp"
#include "fpcount/count_table.hpp"
#include "fpcount/random_source.hpp"

namespace fpcount {

/// Integer sampling weight of a table value. Approximate values are scaled by
/// 2^t, which keeps every ratio between values of one table exact.
inline BigInt sampling_weight(const BigInt& v) { return v; }
inline BigInt sampling_weight(const ApproxFloat& v) { return v.scaled(); }

/// Prefix sums over nonnegative integer weights; draws index j with
/// probability w_j / sum(w) by a successor query.
class WeightedChooser {
 public:
  WeightedChooser() = default;

  explicit WeightedChooser(std::vector<BigInt> weights) : weights_(std::move(weights)) {
    prefix_.reserve(weights_.size());
    BigInt acc = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw std::invalid_argument("WeightedChooser: negative weight");
      acc += w;
      prefix_.push_back(acc);
    }
  }

  template <class Value>
  static WeightedChooser from_values(std::span<const Value> values) {
    std::vector<BigInt> w;
    w.reserve(values.size());
    for (const auto& v : values) w.push_back(sampling_weight(v));
    return WeightedChooser(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  const std::vector<BigInt>& weights() const { return weights_; }
  const std::vector<BigInt>& prefix_sums() const { return prefix_; }
  BigInt total() const { return prefix_.empty() ? BigInt(0) : prefix_.back(); }

  /// Smallest index j with r <= P_j, for r in [1, total].
  std::size_t successor(const BigInt& r) const {
    if (r < 1 || r > total()) throw std::out_of_range("WeightedChooser: query outside [1, total]");
    return static_cast<std::size_t>(std::lower_bound(prefix_.begin(), prefix_.end(), r) - prefix_.begin());
  }

  std::size_t choose(RandomSource& rng) const {
    if (total() <= 0) throw std::logic_error("WeightedChooser: all weights are zero");
    return successor(BigInt(rng.below(total()) + 1));
  }

 private:
  std::vector<BigInt> weights_;
  std::vector<BigInt> prefix_;
};

/// Successor-query structures for one CountTable: one chooser per row over
/// T(i, 1..i), and one per entry over its branch weights.
class PrefixIndex {
 public:
  template <class Value>
  explicit PrefixIndex(const CountTable<Value>& table) : n_(table.size()) {
    rows_.resize(static_cast<std::size_t>(n_) + 1);
    branches_.resize(static_cast<std::size_t>(n_) + 1);
    for (int i = 1; i <= n_; ++i) {
      rows_[static_cast<std::size_t>(i)] = WeightedChooser::from_values(table.row(i));
      auto& b = branches_[static_cast<std::size_t>(i)];
      b.resize(static_cast<std::size_t>(i) + 1);
      for (int k = 1; k <= i; ++k) {
        b[static_cast<std::size_t>(k)] = WeightedChooser::from_values(table.branch_weights(i, k));
      }
    }
  }

  int size() const { return n_; }
  const WeightedChooser& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  const WeightedChooser& branches(int i, int k) const {
    return branches_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k));
  }

 private:
  int n_;
  std::vector<WeightedChooser> rows_;
  std::vector<std::vector<WeightedChooser>> branches_;
};

/// Draws k in 1..i with probability T(i,k) / sum_j T(i,j).
inline int sample_source_count(const PrefixIndex& index, int i, RandomSource& rng) {
  return static_cast<int>(index.row(i).choose(rng)) + 1;
}

/// Uniform k-subset of `universe`, returned sorted (partial Fisher-Yates).
inline std::vector<int> sample_k_subset(std::span<const int> universe, std::size_t k, RandomSource& rng) {
  if (k > universe.size()) throw std::invalid_argument("sample_k_subset: k exceeds the universe");
  std::vector<int> pool(universe.begin(), universe.end());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pool.size() - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// Bit code of a uniform subset of k positions.
inline BigInt sample_subset(std::size_t k, RandomSource& rng) { return rng.random_bits(k); }

/// Bit code of a uniform nonempty subset of k >= 1 positions: uniform in [1, 2^k - 1].
inline BigInt sample_nonempty_subset(std::size_t k, RandomSource& rng) {
  if (k == 0) throw std::invalid_argument("sample_nonempty_subset: k must be positive");
  return rng.in_range(1, BigInt(pow2_int(k) - 1));
}

/// The w-th (0-based) code in [0, 2^g) that is not in `forbidden` (sorted,
/// distinct). Iterates x <- w + |{f in forbidden : f <= x}| from x = w; the
/// least fixpoint is never forbidden and has exactly w allowed codes below it.
inline BigInt nth_allowed_code(const BigInt& w, std::span<const BigInt> forbidden) {
  BigInt x = w;
  for (;;) {
    const auto below = static_cast<std::size_t>(std::upper_bound(forbidden.begin(), forbidden.end(), x) - forbidden.begin());
    BigInt next = w + below;
    if (next == x) return x;
    x = std::move(next);
  }
}

/// Uniform code over subsets of g positions whose code is not forbidden.
inline BigInt sample_subset_excluding(std::size_t g, std::vector<BigInt> forbidden, RandomSource& rng) {
  std::sort(forbidden.begin(), forbidden.end());
  if (std::adjacent_find(forbidden.begin(), forbidden.end()) != forbidden.end()) {
    throw std::invalid_argument("sample_subset_excluding: forbidden codes must be distinct");
  }
  const BigInt space = pow2_int(g);
  if (!forbidden.empty() && (forbidden.front() < 0 || forbidden.back() >= space)) {
    throw std::invalid_argument("sample_subset_excluding: forbidden code outside the ground set");
  }
  if (BigInt(forbidden.size()) >= space) throw std::invalid_argument("sample_subset_excluding: every subset is forbidden");
  const BigInt w = rng.below(BigInt(space - forbidden.size()));
  return nth_allowed_code(w, forbidden);
}

/// Elements of `ground` selected by the bits of `code` (bit j <-> ground[j]).
inline std::vector<int> decode_subset(const BigInt& code, std::span<const int> ground) {
  std::vector<int> out;
  for (std::size_t j = 0; j < ground.size(); ++j) {
    if (boost::multiprecision::bit_test(code, static_cast<unsigned>(j))) out.push_back(ground[j]);
  }
  return out;
}

/// Inverse of decode_subset; members of `subset` outside `ground` are ignored.
inline BigInt encode_subset(std::span<const int> subset, std::span<const int> ground) {
  BigInt code = 0;
  for (std::size_t j = 0; j < ground.size(); ++j) {
    if (std::find(subset.begin(), subset.end(), ground[j]) != subset.end()) {
      boost::multiprecision::bit_set(code, static_cast<unsigned>(j));
    }
  }
  return code;
}

}  // namespace fpcount
