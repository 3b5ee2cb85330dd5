#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcount/approx_float.hpp"
#include "fpcount/bigint.hpp"
#include "fpcount/labeled_dag.hpp"

namespace fpcount {

/// Triangular table T(i, k), 1 <= k <= i <= n, for one DAG family.
///
/// Alongside each entry the table keeps the summands ("branch weights") of the
/// recurrence that produced it; the generators sample from them:
///   dag, essdag: index s - 1 holds the summand for s = 1..i-k
///   extdag:      index 0 holds the new-source branch (b = -1), index t + 1
///                the branch joining t + 1 existing sources.
template <class Value>
class CountTable {
 public:
  using value_type = Value;

  CountTable(Family family, int n, std::optional<int> precision)
      : family_(family), n_(n), precision_(precision) {
    if (n < 1) throw std::invalid_argument("CountTable: n must be positive");
    entries_.resize(static_cast<std::size_t>(n) + 1);
    branches_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
      entries_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
      branches_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
    }
  }

  Family family() const { return family_; }
  int size() const { return n_; }
  std::optional<int> precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }

  const Value& at(int i, int k) const { return entries_.at(index(i)).at(index_k(i, k)); }
  void set(int i, int k, Value v) { entries_.at(index(i)).at(index_k(i, k)) = std::move(v); }

  std::span<const Value> row(int i) const {
    const auto& r = entries_.at(index(i));
    return std::span<const Value>(r).subspan(1);
  }

  std::span<const Value> branch_weights(int i, int k) const {
    return branches_.at(index(i)).at(index_k(i, k));
  }
  void set_branch_weights(int i, int k, std::vector<Value> w) {
    branches_.at(index(i)).at(index_k(i, k)) = std::move(w);
  }

 private:
  std::size_t index(int i) const {
    if (i < 1 || i > n_) throw std::out_of_range("CountTable: row out of range");
    return static_cast<std::size_t>(i);
  }
  static std::size_t index_k(int i, int k) {
    if (k < 1 || k > i) throw std::out_of_range("CountTable: column out of range");
    return static_cast<std::size_t>(k);
  }

  Family family_;
  int n_;
  std::optional<int> precision_;
  std::vector<std::vector<Value>> entries_;
  std::vector<std::vector<std::vector<Value>>> branches_;
};

using ExactTable = CountTable<BigInt>;
using ApproxTable = CountTable<ApproxFloat>;

namespace detail {

inline std::string render_value(const BigInt& v) { return v.str(); }
inline std::string render_value(const ApproxFloat& v) { return v.to_fields_string(); }

}  // namespace detail

/// Line format: header "family n mode" (mode "exact" or "approx:t"), then one
/// "i k value" line per entry; approximate values print as "p:mantissa-hex".
template <class Value>
void write_table(std::ostream& out, const CountTable<Value>& table) {
  out << family_name(table.family()) << ' ' << table.size() << ' ';
  if (table.is_exact()) {
    out << "exact\n";
  } else {
    out << "approx:" << *table.precision() << '\n';
  }
  for (int i = 1; i <= table.size(); ++i) {
    for (int k = 1; k <= i; ++k) out << i << ' ' << k << ' ' << detail::render_value(table.at(i, k)) << '\n';
  }
}

struct TableHeader {
  Family family;
  int n;
  std::optional<int> precision;
};

inline TableHeader read_table_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("table: missing header");
  std::istringstream ls(line);
  std::string family;
  std::string mode;
  int n = 0;
  if (!(ls >> family >> n >> mode) || n < 1) throw std::invalid_argument("table: malformed header: " + line);
  TableHeader h{parse_family(family), n, std::nullopt};
  if (mode != "exact") {
    if (mode.rfind("approx:", 0) != 0) throw std::invalid_argument("table: unknown mode: " + mode);
    h.precision = std::stoi(mode.substr(7));
  }
  return h;
}

/// Reads the entries written by write_table. Branch weights are not part of
/// the format, so the result can be queried but not sampled from.
template <class Value>
CountTable<Value> read_table(std::istream& in) {
  const TableHeader h = read_table_header(in);
  constexpr bool exact = std::is_same_v<Value, BigInt>;
  if (exact != !h.precision.has_value()) throw std::invalid_argument("table: mode does not match value type");
  CountTable<Value> table(h.family, h.n, h.precision);
  std::string line;
  int line_no = 1;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int i = 0;
    int k = 0;
    std::string value;
    if (!(ls >> i >> k >> value) || i < 1 || i > h.n || k < 1 || k > i) {
      throw std::invalid_argument("table: malformed entry on line " + std::to_string(line_no));
    }
    if constexpr (exact) {
      table.set(i, k, parse_bigint(value));
    } else {
      table.set(i, k, parse_fields(value, *h.precision));
    }
    ++seen;
  }
  if (seen != static_cast<std::size_t>(h.n) * (h.n + 1) / 2) throw std::invalid_argument("table: wrong number of entries");
  return table;
}

}  // namespace fpcount
