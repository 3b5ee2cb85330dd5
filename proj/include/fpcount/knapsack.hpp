#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcount/approx_float.hpp"
#include "fpcount/bigint.hpp"
#include "fpcount/mantissa.hpp"

namespace fpcount {

struct KnapsackInstance {
  std::vector<BigInt> weights;
  BigInt capacity;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

inline BigInt parse_field(const std::string& word, int line) {
  try {
    return parse_bigint(word);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, "expected a nonnegative integer, got '" + word + "'");
  }
}

// Next line with any content; blank lines are skipped.
inline bool next_line(std::istream& in, std::string& line, int& number) {
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

/// "n C" on the first line, then the n weights (possibly over several lines).
inline KnapsackInstance parse_knapsack(std::istream& in) {
  std::string line;
  int number = 0;
  if (!detail::next_line(in, line, number)) throw ParseError(number + 1, "missing header 'n C'");
  const auto head = detail::split_words(line);
  if (head.size() != 2) throw ParseError(number, "header must be 'n C'");
  const BigInt n = detail::parse_field(head[0], number);
  KnapsackInstance inst;
  inst.capacity = detail::parse_field(head[1], number);
  if (n < 1 || n > 1'000'000) throw ParseError(number, "n must be in 1..1000000");
  const auto count = static_cast<std::size_t>(n);
  while (inst.weights.size() < count) {
    if (!detail::next_line(in, line, number)) {
      throw ParseError(number + 1, "expected " + std::to_string(count) + " weights, found " +
                                       std::to_string(inst.weights.size()));
    }
    for (const auto& w : detail::split_words(line)) {
      if (inst.weights.size() == count) throw ParseError(number, "more than " + std::to_string(count) + " weights");
      inst.weights.push_back(detail::parse_field(w, number));
    }
  }
  if (detail::next_line(in, line, number)) throw ParseError(number, "trailing content after the weights");
  return inst;
}

/// Exact s(i, c) for every prefix i of the items, stored sparsely as the
/// distinct subset sums (capped at C) with running counts.
class KnapsackProfile {
 public:
  explicit KnapsackProfile(const KnapsackInstance& inst) : capacity_(inst.capacity) {
    std::map<BigInt, BigInt> sums{{0, 1}};
    rows_.push_back(cumulate(sums));
    for (const auto& w : inst.weights) {
      std::map<BigInt, BigInt> next = sums;
      for (const auto& [c, k] : sums) {
        BigInt shifted = c + w;
        if (shifted > capacity_) break;
        next[shifted] += k;
      }
      sums = std::move(next);
      rows_.push_back(cumulate(sums));
    }
  }

  int items() const { return static_cast<int>(rows_.size()) - 1; }

  /// Number of subsets of the first i items with total weight <= c (c <= C).
  BigInt count(int i, const BigInt& c) const {
    if (c < 0) return 0;
    if (c > capacity_) throw std::out_of_range("KnapsackProfile: capacity above C");
    const auto& row = rows_.at(static_cast<std::size_t>(i));
    auto it = std::upper_bound(row.begin(), row.end(), c,
                               [](const BigInt& x, const std::pair<BigInt, BigInt>& e) { return x < e.first; });
    return it == row.begin() ? BigInt(0) : std::prev(it)->second;
  }

  BigInt total() const { return rows_.back().back().second; }

 private:
  static std::vector<std::pair<BigInt, BigInt>> cumulate(const std::map<BigInt, BigInt>& sums) {
    std::vector<std::pair<BigInt, BigInt>> out;
    BigInt run = 0;
    for (const auto& [c, k] : sums) {
      run += k;
      out.emplace_back(c, run);
    }
    return out;
  }

  BigInt capacity_;
  std::vector<std::vector<std::pair<BigInt, BigInt>>> rows_;
};

inline BigInt exact_knapsack_count(const KnapsackInstance& inst) { return KnapsackProfile(inst).total(); }

struct CapacityEntry {
  BigInt capacity;
  ApproxFloat count;
};

/// list(i): pairs strictly increasing in both components.
struct CapacityList {
  std::vector<CapacityEntry> entries;
  int index = 0;
  int precision = 1;

  static CapacityList initial(int precision) {
    return {{CapacityEntry{0, ApproxFloat::one(precision)}}, 0, precision};
  }

  bool bimonotonic() const {
    for (std::size_t j = 1; j < entries.size(); ++j) {
      if (!(entries[j - 1].capacity < entries[j].capacity)) return false;
      if (!(entries[j - 1].count < entries[j].count)) return false;
    }
    return true;
  }
};

/// max{t : (c', t) in list, c' <= c}, zero for an empty set.
inline ApproxFloat lookup(const CapacityList& list, const BigInt& c) {
  auto it = std::upper_bound(list.entries.begin(), list.entries.end(), c,
                             [](const BigInt& x, const CapacityEntry& e) { return x < e.capacity; });
  return it == list.entries.begin() ? ApproxFloat::zero(list.precision) : std::prev(it)->count;
}

namespace detail {

// Merges two capacity-sorted streams, drops capacities above C, and keeps the
// smallest capacity of every run of equal counts.
inline std::vector<CapacityEntry> merge_and_prune(std::vector<CapacityEntry> a, std::vector<CapacityEntry> b,
                                                  const BigInt& cap) {
  std::vector<CapacityEntry> merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    CapacityEntry* next;
    if (j == b.size() || (i < a.size() && a[i].capacity < b[j].capacity)) {
      next = &a[i++];
    } else if (i == a.size() || b[j].capacity < a[i].capacity) {
      next = &b[j++];
    } else {
      next = &a[i++];
      ++j;
    }
    if (next->capacity > cap) break;
    if (!merged.empty() && merged.back().count == next->count) continue;
    merged.push_back(std::move(*next));
  }
  return merged;
}

}  // namespace detail

/// list(i) from list(i-1) and item weight w, i.e. the breakpoints of
/// c -> s~(i-1, c) (+) s~(i-1, c - w), capped at C.
inline CapacityList advance_list(const CapacityList& prev, const BigInt& w, const BigInt& cap) {
  const auto& in = prev.entries;
  std::vector<CapacityEntry> back;
  std::vector<CapacityEntry> forw;
  back.reserve(in.size());
  forw.reserve(in.size());
  const ApproxFloat zero = ApproxFloat::zero(prev.precision);

  // back: capacities c of list(i-1); `right` trails at the last entry <= c - w.
  std::size_t right = 0;
  for (const auto& e : in) {
    const BigInt target = e.capacity - w;
    while (right < in.size() && in[right].capacity <= target) ++right;
    const ApproxFloat& other = right == 0 ? zero : in[right - 1].count;
    back.push_back({e.capacity, add(e.count, other)});
  }
  // forw: capacities c + w; `left` trails at the last entry <= c + w.
  std::size_t left = 0;
  for (const auto& e : in) {
    BigInt shifted = e.capacity + w;
    while (left < in.size() && in[left].capacity <= shifted) ++left;
    forw.push_back({std::move(shifted), add(in[left - 1].count, e.count)});
  }
  return {detail::merge_and_prune(std::move(back), std::move(forw), cap), prev.index + 1, prev.precision};
}

/// list(0), ..., list(n) of the floating-point dynamic program at precision t.
inline std::vector<CapacityList> knapsack_lists(const KnapsackInstance& inst, int precision) {
  std::vector<CapacityList> lists{CapacityList::initial(precision)};
  lists.reserve(inst.weights.size() + 1);
  for (const auto& w : inst.weights) lists.push_back(advance_list(lists.back(), w, inst.capacity));
  return lists;
}

inline ApproxFloat approx_count_knapsack(const KnapsackInstance& inst, int precision) {
  CapacityList list = CapacityList::initial(precision);
  for (const auto& w : inst.weights) list = advance_list(list, w, inst.capacity);
  return lookup(list, inst.capacity);
}

/// Z with (1 - eps) s(n, C) <= Z <= s(n, C).
inline ApproxFloat approx_count_knapsack(const KnapsackInstance& inst, const Rational& eps) {
  if (inst.weights.empty()) throw std::invalid_argument("approx_count_knapsack: no items");
  return approx_count_knapsack(inst, mantissa_length(Problem::knapsack, inst.weights.size(), eps));
}

}  // namespace fpcount
