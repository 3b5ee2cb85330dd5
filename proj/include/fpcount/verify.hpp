#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "fpcount/approx_float.hpp"
#include "fpcount/dag_counting.hpp"
#include "fpcount/dag_generation.hpp"
#include "fpcount/enumerate.hpp"
#include "fpcount/instances.hpp"
#include "fpcount/knapsack.hpp"
#include "fpcount/path_fptas.hpp"
#include "fpcount/random_source.hpp"
#include "fpcount/recurrences.hpp"

namespace fpcount {

struct ChiSquare {
  double statistic;
  double p_value;
  std::size_t degrees;
};

/// Pearson test of `counts` against the uniform distribution over its bins.
inline ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need at least two bins");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return {stat, boost::math::cdf(boost::math::complement(dist, stat)), counts.size() - 1};
}

/// One pass/fail line per checked invariant.
class VerifyReport {
 public:
  void add(std::string name, bool pass, std::string detail) {
    lines_.push_back({pass, std::move(name), std::move(detail)});
  }
  bool ok() const {
    return std::all_of(lines_.begin(), lines_.end(), [](const Line& l) { return l.pass; });
  }
  void print(std::ostream& out) const {
    for (const auto& l : lines_) out << (l.pass ? "PASS " : "FAIL ") << l.name << ' ' << l.detail << '\n';
  }

 private:
  struct Line {
    bool pass;
    std::string name;
    std::string detail;
  };
  std::vector<Line> lines_;
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(8);
  s << x;
  return s.str();
}

inline std::string fmt(const Rational& x) { return fmt(x.convert_to<double>()); }

// 1 - 2^(1-t)
inline Rational unit_loss(int t) { return Rational{1} - Rational{BigInt(1), pow2_int(static_cast<std::uint64_t>(t - 1))}; }

inline Rational rpow(const Rational& base, std::uint64_t e) {
  Rational r{1};
  Rational b = base;
  while (e != 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// A t-bit representable integer: random mantissa shifted left.
inline BigInt representable(RandomSource& rng, int t) {
  BigInt m = rng.random_bits(static_cast<std::uint64_t>(t));
  return m << static_cast<unsigned>(rng.below(std::uint64_t{80}));
}

inline const std::vector<Rational>& standard_epsilons() {
  static const std::vector<Rational> eps{Rational{1}, Rational{1, 2}, Rational{1, 10}, Rational{1, 100}};
  return eps;
}

}  // namespace detail

inline VerifyReport verify_float(std::uint64_t budget, std::uint64_t seed) {
  VerifyReport report;
  RandomSource rng(seed);
  std::uint64_t bad_trunc = 0, bad_add = 0, bad_mul = 0, bad_cmp = 0;
  Rational worst_trunc{1}, worst_add{1}, worst_mul{1};
  for (std::uint64_t i = 0; i < budget; ++i) {
    const int t = 2 + static_cast<int>(rng.below(std::uint64_t{63}));
    const BigInt x = rng.random_bits(1 + rng.below(std::uint64_t{400}));
    if (x != 0) {
      const Rational r = ApproxFloat::truncate(x, t).exact() / Rational{x};
      worst_trunc = std::min(worst_trunc, r);
      if (r > 1 || r < detail::unit_loss(t)) ++bad_trunc;
    }
    const BigInt a = detail::representable(rng, t);
    const BigInt b = detail::representable(rng, t);
    const ApproxFloat fa = ApproxFloat::truncate(a, t);
    const ApproxFloat fb = ApproxFloat::truncate(b, t);
    if (fa.exact() != Rational{a} || fb.exact() != Rational{b}) ++bad_trunc;
    if (a + b != 0) {
      const Rational r = add(fa, fb).exact() / Rational{a + b};
      worst_add = std::min(worst_add, r);
      if (r > 1 || r < detail::unit_loss(t)) ++bad_add;
    }
    if (a * b != 0) {
      const Rational r = mul(fa, fb).exact() / Rational{a * b};
      worst_mul = std::min(worst_mul, r);
      if (r > 1 || r < detail::unit_loss(t)) ++bad_mul;
    }
    if ((fa < fb) != (a < b) || (fa == fb) != (a == b)) ++bad_cmp;
  }
  const std::string n = "checks=" + std::to_string(budget);
  report.add("float.truncate_bound", bad_trunc == 0,
             n + " violations=" + std::to_string(bad_trunc) + " min_ratio=" + detail::fmt(worst_trunc));
  report.add("float.add_bound", bad_add == 0,
             n + " violations=" + std::to_string(bad_add) + " min_ratio=" + detail::fmt(worst_add));
  report.add("float.mul_bound", bad_mul == 0,
             n + " violations=" + std::to_string(bad_mul) + " min_ratio=" + detail::fmt(worst_mul));
  report.add("float.compare_exact", bad_cmp == 0, n + " violations=" + std::to_string(bad_cmp));
  return report;
}

/// Exact tables against enumeration, the per-entry error bound for the dag
/// table, and the counting bound for all families. Budgets of 1000 and more
/// extend the enumeration to n = 5.
inline VerifyReport verify_tables(std::uint64_t budget) {
  VerifyReport report;
  const int max_enum = budget >= 1000 ? 5 : 4;
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const ExactTable table = exact_table(f, max_enum);
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= max_enum; ++n) {
      const auto members = enumerate_dags(n, f).size();
      ok = ok && row_total(table, n) == members;
      detail += (n > 1 ? "," : "") + std::to_string(members);
    }
    report.add(std::string("tables.enumeration.") + family_name(f), ok, "counts=" + detail);
  }

  const int max_n = 20;
  const ExactTable exact = exact_dag_table(max_n);
  for (int t : {8, 12, 16}) {
    const ApproxTable approx = approx_table(Family::dag, max_n, t);
    Rational worst{1};
    Rational worst_bound{1};
    bool ok = true;
    for (int n = 1; n <= max_n; ++n) {
      const Rational bound = detail::rpow(detail::unit_loss(t), 3ull * static_cast<std::uint64_t>(n * n));
      for (int k = 1; k <= n; ++k) {
        const Rational r = approx.at(n, k).exact() / Rational{exact.at(n, k)};
        if (r > 1 || r < bound) ok = false;
        if (r < worst) {
          worst = r;
          worst_bound = bound;
        }
      }
    }
    report.add("tables.entry_bound.t" + std::to_string(t), ok,
               "n<=" + std::to_string(max_n) + " min_ratio=" + detail::fmt(worst) + " bound_at_min=" +
                   detail::fmt(worst_bound));
  }

  const int family_n = std::min(max_n, 12);
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const ExactTable table = exact_table(f, family_n);
    Rational worst{1};
    bool ok = true;
    for (int n = 1; n <= family_n; ++n) {
      const Rational F{row_total(table, n)};
      for (const Rational& eps : detail::standard_epsilons()) {
        const Rational z = approx_count(f, n, eps).value.exact();
        const Rational r = z / F;
        if (r > 1 || r < 1 - eps) ok = false;
        worst = std::min(worst, r);
      }
    }
    report.add(std::string("tables.count_bound.") + family_name(f), ok,
               "n<=" + std::to_string(family_n) + " min_ratio=" + detail::fmt(worst));
  }
  return report;
}

inline VerifyReport verify_knapsack(std::uint64_t budget, std::uint64_t seed) {
  VerifyReport report;
  RandomSource rng(seed);
  std::uint64_t bad_i1 = 0, bad_i2 = 0, bad_rec = 0, bad_len = 0, bad_final = 0;
  Rational worst{1};
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    const KnapsackInstance inst = random_knapsack(rng, 12, 100);
    const KnapsackProfile exact(inst);
    const auto n = inst.weights.size();
    for (const Rational& eps : {Rational{1}, Rational{1, 10}, Rational{1, 100}}) {
      const int t = mantissa_length(Problem::knapsack, n, eps);
      const auto lists = knapsack_lists(inst, t);
      std::set<BigInt> caps;
      for (const auto& l : lists) {
        for (const auto& e : l.entries) caps.insert(e.capacity);
      }
      const BigInt length_cap = pow2_int(static_cast<std::uint64_t>(ceil_log2(Rational{BigInt(n)})) + t);
      for (std::size_t i = 0; i < lists.size(); ++i) {
        if (!lists[i].bimonotonic()) ++bad_i1;
        if (BigInt(lists[i].entries.size()) > length_cap) ++bad_len;
        const Rational factor = detail::rpow(1 - eps / Rational{BigInt(n)}, i);
        for (const auto& c : caps) {
          const Rational approx = lookup(lists[i], c).exact();
          const Rational s{exact.count(static_cast<int>(i), c)};
          if (approx > s || approx < factor * s) ++bad_i2;
          if (i > 0) {
            const ApproxFloat expect =
                add(lookup(lists[i - 1], c), lookup(lists[i - 1], c - inst.weights[i - 1]));
            if (!(lookup(lists[i], c) == expect)) ++bad_rec;
          }
        }
      }
      const Rational z = approx_count_knapsack(inst, eps).exact();
      const Rational s{exact.total()};
      if (z > s || z < (1 - eps) * s) ++bad_final;
      worst = std::min(worst, Rational{z / s});
    }
  }
  const std::string n = "instances=" + std::to_string(budget);
  report.add("knapsack.I1_bimonotonic", bad_i1 == 0, n + " violations=" + std::to_string(bad_i1));
  report.add("knapsack.I2_row_bound", bad_i2 == 0, n + " violations=" + std::to_string(bad_i2));
  report.add("knapsack.row_recurrence", bad_rec == 0, n + " violations=" + std::to_string(bad_rec));
  report.add("knapsack.list_length", bad_len == 0, n + " violations=" + std::to_string(bad_len));
  report.add("knapsack.final_bound", bad_final == 0,
             n + " violations=" + std::to_string(bad_final) + " min_ratio=" + detail::fmt(worst));
  return report;
}

inline VerifyReport verify_paths(std::uint64_t budget, std::uint64_t seed) {
  VerifyReport report;
  RandomSource rng(seed);
  std::uint64_t bad_bin = 0, bad_i1 = 0, bad_i2 = 0, bad_depth = 0, bad_final = 0, bad_chain = 0;
  Rational worst{1};
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    const PathInstance inst = random_path_instance(rng, 10, 30, 50);
    const BinarizedDag bin = binarize(inst.graph);
    const BigInt exact = exact_path_count(inst.graph, inst.capacity);
    for (BigInt c = 0; c <= inst.capacity; c += 1 + inst.capacity / 16) {
      if (exact_path_count(inst.graph, c) != exact_path_count(bin.graph, c)) ++bad_bin;
    }
    const PathProfile profile(bin.graph, inst.capacity);
    for (const Rational& eps : {Rational{1}, Rational{1, 10}}) {
      for (DepthBudget mode : {DepthBudget::measured, DepthBudget::a_priori}) {
        PathCountResult res;
        try {
          res = approx_count_paths(inst.graph, inst.capacity, eps, mode);
        } catch (const std::logic_error&) {
          ++bad_depth;
          continue;
        }
        const auto lists = path_lists(bin, inst.capacity, res.precision);
        for (int v = 0; v < bin.graph.n; ++v) {
          const auto& list = lists[static_cast<std::size_t>(v)];
          if (!list.bimonotonic()) ++bad_i1;
          const Rational factor =
              detail::rpow(1 - eps / Rational{BigInt(res.budget)}, bin.depth[static_cast<std::size_t>(v)]);
          for (const auto& e : list.entries) {
            const Rational s{profile.count(v, e.capacity)};
            const Rational approx = e.count.exact();
            if (approx > s || approx < factor * s) ++bad_i2;
          }
        }
        const Rational z = res.value.exact();
        if (z > Rational{exact} || z < (1 - eps) * Rational{exact}) ++bad_final;
        if (exact != 0) worst = std::min(worst, Rational{z / Rational{exact}});
      }
    }
    const KnapsackInstance k = random_knapsack(rng, 12, 100);
    const PathInstance chain = chain_gadget(k);
    if (exact_path_count(chain.graph, chain.capacity) != exact_knapsack_count(k)) ++bad_chain;
  }
  const std::string n = "graphs=" + std::to_string(budget);
  report.add("paths.binarize_preserves_counts", bad_bin == 0, n + " violations=" + std::to_string(bad_bin));
  report.add("paths.I1_bimonotonic", bad_i1 == 0, n + " violations=" + std::to_string(bad_i1));
  report.add("paths.I2_vertex_bound", bad_i2 == 0, n + " violations=" + std::to_string(bad_i2));
  report.add("paths.depth_within_budget", bad_depth == 0, n + " violations=" + std::to_string(bad_depth));
  report.add("paths.final_bound", bad_final == 0,
             n + " violations=" + std::to_string(bad_final) + " min_ratio=" + detail::fmt(worst));
  report.add("paths.chain_gadget_matches_knapsack", bad_chain == 0, n + " violations=" + std::to_string(bad_chain));
  return report;
}

inline VerifyReport verify_sampling(std::uint64_t budget, std::uint64_t seed) {
  VerifyReport report;
  const std::uint64_t samples = std::max<std::uint64_t>(budget * 25, 1000);
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const auto members = enumerate_dags(3, f);
    std::map<LabeledDag, std::size_t> slot;
    for (std::size_t j = 0; j < members.size(); ++j) slot.emplace(members[j], j);
    std::vector<std::uint64_t> counts(members.size());
    const DagSampler<BigInt> sampler(exact_table(f, 3));
    RandomSource rng(derive_seed(seed, static_cast<std::uint64_t>(f)));
    bool valid = true;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const GeneratedDag g = sampler.sample(3, rng);
      auto it = slot.find(g.graph);
      if (it == slot.end()) {
        valid = false;
        continue;
      }
      ++counts[it->second];
    }
    const ChiSquare chi = chi_square_uniform(counts);
    report.add(std::string("sampling.uniform.") + family_name(f), valid && chi.p_value > 0.001,
               "samples=" + std::to_string(samples) + " chi2=" + detail::fmt(chi.statistic) +
                   " df=" + std::to_string(chi.degrees) + " p=" + detail::fmt(chi.p_value));
  }
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    bool ok = true;
    Rational lo{2}, hi{0};
    for (int n : {3, 4}) {
      const auto members = enumerate_dags(n, f);
      const Rational F{row_total(exact_table(f, n), n)};
      for (const Rational& eps : {Rational{1}, Rational{1, 10}}) {
        const ApproxTable table = approx_table(f, n, family_precision(f, Problem::dag_generate, n, eps));
        Rational sum{0};
        for (const auto& d : members) {
          const Rational p = dag_probability(d, table);
          sum += p;
          const Rational r = p * F;
          if (r < 1 - eps || r > 1 + eps) ok = false;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        if (sum != 1) ok = false;
      }
    }
    report.add(std::string("sampling.probability_bound.") + family_name(f), ok,
               "n=3,4 min=" + detail::fmt(lo) + " max=" + detail::fmt(hi));
  }
  return report;
}

inline const std::vector<std::string_view>& verify_suite_names() {
  static const std::vector<std::string_view> names{"float", "tables", "knapsack", "paths", "sampling"};
  return names;
}

inline VerifyReport run_verify_suite(std::string_view suite, std::uint64_t budget, std::uint64_t seed) {
  if (suite == "float") return verify_float(budget, seed);
  if (suite == "tables") return verify_tables(budget);
  if (suite == "knapsack") return verify_knapsack(budget, seed);
  if (suite == "paths") return verify_paths(budget, seed);
  if (suite == "sampling") return verify_sampling(budget, seed);
  throw std::invalid_argument("unknown suite: " + std::string(suite));
}

}  // namespace fpcount
