#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpcount/dag_counting.hpp"
#include "fpcount/dag_generation.hpp"
#include "fpcount/knapsack.hpp"
#include "fpcount/path_fptas.hpp"
#include "fpcount/verify.hpp"

namespace fpcount {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verify_failed = 2;

namespace cli_detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool terminating_decimal(BigInt den) {
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  return den == 1;
}

// Exact decimal when the expansion terminates, "num/den" otherwise.
inline std::string render_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (!terminating_decimal(den)) return num.str() + "/" + den.str();
  std::size_t digits = 0;
  BigInt scaled = num;
  while (den != 1) {
    scaled *= 10;
    BigInt g = boost::multiprecision::gcd(scaled, den);
    scaled /= g;
    den /= g;
    ++digits;
  }
  std::string s = scaled.str();
  if (digits == 0) return s;
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return s;
}

struct Accuracy {
  bool exact = false;
  std::string eps_text = "0.1";
  Rational eps{1, 10};
};

inline void add_accuracy_flags(CLI::App* cmd, std::optional<std::string>& eps, bool& exact) {
  auto* e = cmd->add_option("--eps", eps, "relative error in (0, 1] (default 0.1)");
  cmd->add_flag("--exact", exact, "exact arbitrary-precision computation")->excludes(e);
}

inline Accuracy resolve_accuracy(const std::optional<std::string>& eps, bool exact) {
  Accuracy a;
  a.exact = exact;
  if (eps) {
    try {
      a.eps = parse_decimal(*eps);
    } catch (const std::invalid_argument&) {
      throw UsageError("--eps: not a decimal number: " + *eps);
    }
    if (a.eps <= 0 || a.eps > 1) throw UsageError("--eps must lie in (0, 1]");
    a.eps_text = *eps;
  }
  return a;
}

inline void print_estimate(std::ostream& out, const ApproxFloat& z, const Rational& eps, const std::string& eps_text) {
  out << "eps " << eps_text << '\n';
  out << "precision " << z.precision() << '\n';
  out << "fields " << z.to_fields_string() << '\n';
  out << "hex " << z.to_hex() << '\n';
  out << "value " << z.to_decimal() << '\n';
  out << "interval " << z.to_decimal() << ' ';
  if (eps == 1) {
    out << "inf\n";
  } else {
    out << render_rational(z.exact() / (1 - eps)) << '\n';
  }
}

inline void write_graph(std::ostream& out, const GeneratedDag& g, bool json) {
  const auto arcs = g.graph.arcs();
  if (!json) {
    out << g.graph.size() << ' ' << arcs.size() << '\n';
    for (auto [u, v] : arcs) out << u << ' ' << v << '\n';
    return;
  }
  nlohmann::ordered_json j;
  std::vector<int> nodes;
  for (int v = 0; v < g.graph.size(); ++v) nodes.push_back(v);
  j["nodes"] = nodes;
  j["arcs"] = nlohmann::ordered_json::array();
  for (auto [u, v] : arcs) j["arcs"].push_back({u, v});
  j["sources"] = sources(g.graph);
  j["top"] = g.top;
  out << j.dump() << '\n';
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

}  // namespace cli_detail

/// Entry point of the fpcount tool; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Counting and sampling with truncated floating-point dynamic programs"};
  app.require_subcommand(1);

  std::string family_text;
  int n = 0;
  std::optional<std::string> eps;
  bool exact = false;
  std::uint64_t seed = 1;
  std::uint64_t count = 1;
  std::string format = "edges";
  std::string path;
  bool a_priori = false;
  std::string suite;
  std::uint64_t budget = 200;

  auto* count_cmd = app.add_subcommand("count", "count DAGs of a family on n labeled vertices");
  count_cmd->add_option("family", family_text, "dag, essdag or extdag")->required()->check(
      CLI::IsMember({"dag", "essdag", "extdag"}));
  count_cmd->add_option("n", n, "number of vertices")->required()->check(CLI::Range(1, 100000));
  add_accuracy_flags(count_cmd, eps, exact);
  count_cmd->add_option("--seed", seed, "accepted for uniformity; counting uses no randomness");

  auto* table_cmd = app.add_subcommand("table", "print the counting table T(i,k), 1 <= k <= i <= n");
  table_cmd->add_option("family", family_text)->required()->check(CLI::IsMember({"dag", "essdag", "extdag"}));
  table_cmd->add_option("n", n)->required()->check(CLI::Range(1, 100000));
  add_accuracy_flags(table_cmd, eps, exact);
  table_cmd->add_option("--seed", seed, "accepted for uniformity; counting uses no randomness");

  auto* sample_cmd = app.add_subcommand("sample", "draw random members of a family");
  sample_cmd->add_option("family", family_text)->required()->check(CLI::IsMember({"dag", "essdag", "extdag"}));
  sample_cmd->add_option("n", n)->required()->check(CLI::Range(1, 100000));
  add_accuracy_flags(sample_cmd, eps, exact);
  sample_cmd->add_option("--seed", seed, "64-bit seed");
  sample_cmd->add_option("--count", count, "number of graphs")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
  sample_cmd->add_option("--format", format)->check(CLI::IsMember({"edges", "json-lines"}));

  auto* knap_cmd = app.add_subcommand("knapsack", "count 0/1 knapsack solutions of an instance file");
  knap_cmd->add_option("file", path, "first line 'n C', then n weights")->required();
  add_accuracy_flags(knap_cmd, eps, exact);
  knap_cmd->add_option("--seed", seed, "accepted for uniformity; counting uses no randomness");

  auto* path_cmd = app.add_subcommand("pathcount", "count s,t-paths of weight <= C in a weighted DAG file");
  path_cmd->add_option("file", path, "header 'n m s t C', then m lines 'u v w'")->required();
  add_accuracy_flags(path_cmd, eps, exact);
  path_cmd->add_option("--seed", seed, "accepted for uniformity; counting uses no randomness");
  path_cmd->add_flag("--a-priori", a_priori, "size the mantissa from n and m instead of the measured depth");

  auto* verify_cmd = app.add_subcommand("verify", "run a property suite against the exact oracles");
  verify_cmd->add_option("suite", suite)->required()->check(
      CLI::IsMember({"float", "tables", "knapsack", "paths", "sampling", "all"}));
  verify_cmd->add_option("--budget", budget, "random trials per invariant")->check(
      CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
  verify_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (count_cmd->parsed()) {
      const Family f = parse_family(family_text);
      const Accuracy acc = resolve_accuracy(eps, exact);
      if (acc.exact) {
        out << exact_count(f, n) << '\n';
      } else {
        const ApproxCount z = approx_count(f, n, acc.eps);
        print_estimate(out, z.value, acc.eps, acc.eps_text);
      }
    } else if (table_cmd->parsed()) {
      const Family f = parse_family(family_text);
      const Accuracy acc = resolve_accuracy(eps, exact);
      if (acc.exact) {
        write_table(out, exact_table(f, n));
      } else {
        write_table(out, approx_table(f, n, family_precision(f, Problem::dag_count, n, acc.eps)));
      }
    } else if (sample_cmd->parsed()) {
      const Family f = parse_family(family_text);
      const Accuracy acc = resolve_accuracy(eps, exact);
      const bool json = format == "json-lines";
      auto emit = [&](const auto& sampler) {
        for (std::uint64_t i = 0; i < count; ++i) {
          RandomSource rng(derive_seed(seed, i));
          write_graph(out, sampler.sample(n, rng), json);
        }
      };
      if (acc.exact) {
        emit(DagSampler<BigInt>(exact_table(f, n)));
      } else {
        emit(DagSampler<ApproxFloat>(approx_table(f, n, family_precision(f, Problem::dag_generate, n, acc.eps))));
      }
    } else if (knap_cmd->parsed()) {
      const Accuracy acc = resolve_accuracy(eps, exact);
      auto in = open_input(path);
      KnapsackInstance inst;
      try {
        inst = parse_knapsack(in);
      } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
      }
      if (acc.exact) {
        out << exact_knapsack_count(inst) << '\n';
      } else {
        print_estimate(out, approx_count_knapsack(inst, acc.eps), acc.eps, acc.eps_text);
      }
    } else if (path_cmd->parsed()) {
      const Accuracy acc = resolve_accuracy(eps, exact);
      auto in = open_input(path);
      PathInstance inst;
      try {
        inst = parse_path_instance(in);
      } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
      }
      if (!topological_order(inst.graph)) throw UsageError(path + ": graph has a cycle");
      if (acc.exact) {
        out << exact_path_count(inst.graph, inst.capacity) << '\n';
      } else {
        const PathCountResult r = approx_count_paths(inst.graph, inst.capacity, acc.eps,
                                                     a_priori ? DepthBudget::a_priori : DepthBudget::measured);
        out << "depth " << r.depth << '\n';
        out << "budget " << r.budget << '\n';
        print_estimate(out, r.value, acc.eps, acc.eps_text);
      }
    } else if (verify_cmd->parsed()) {
      bool ok = true;
      for (auto name : verify_suite_names()) {
        if (suite != "all" && suite != name) continue;
        const VerifyReport report = run_verify_suite(name, budget, seed);
        report.print(out);
        ok = ok && report.ok();
      }
      return ok ? exit_ok : exit_verify_failed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}

}  // namespace fpcount
