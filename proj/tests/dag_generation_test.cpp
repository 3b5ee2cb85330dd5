#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fpcount/dag_counting.hpp"
#include "fpcount/dag_generation.hpp"
#include "fpcount/enumerate.hpp"
#include "support/brute_force.hpp"

using namespace fpcount;

namespace {

// |observed - expected| within z standard deviations of a binomial count.
bool within_sigma(std::uint64_t observed, std::uint64_t draws, double p, double z) {
  const double mean = static_cast<double>(draws) * p;
  const double sd = std::sqrt(static_cast<double>(draws) * p * (1 - p));
  return std::abs(static_cast<double>(observed) - mean) <= z * sd + 1e-9;
}

std::vector<int> top_set(const LabeledDag& g, Family f) {
  if (f != Family::essdag) return sources(g);
  const auto d = depths(g);
  const int deepest = *std::max_element(d.begin(), d.end());
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v) {
    if (d[static_cast<std::size_t>(v)] == deepest) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(PrefixIndex, RowsOfExactDagTable) {
  const PrefixIndex index(exact_dag_table(3));
  EXPECT_EQ(index.row(2).weights(), (std::vector<BigInt>{2, 1}));
  EXPECT_EQ(index.row(2).prefix_sums(), (std::vector<BigInt>{2, 3}));
  EXPECT_EQ(index.row(1).weights(), (std::vector<BigInt>{1}));
  EXPECT_EQ(index.row(2).successor(1), 0u);
  EXPECT_EQ(index.row(2).successor(2), 0u);
  EXPECT_EQ(index.row(2).successor(3), 1u);
  EXPECT_THROW((void)index.row(2).successor(4), std::out_of_range);
}

TEST(PrefixIndex, ApproxWeightsAreScaledValues) {
  const int t = 6;
  const auto table = approx_table(Family::dag, 9, t);
  const PrefixIndex index(table);
  for (int k = 1; k <= 9; ++k) {
    const BigInt& u = index.row(9).weights()[static_cast<std::size_t>(k - 1)];
    EXPECT_EQ(Rational(u, pow2_int(t)), table.at(9, k).exact());
  }
}

TEST(Sampling, SourceCountDistribution) {
  const PrefixIndex index(exact_dag_table(4));
  RandomSource rng(31);
  EXPECT_EQ(sample_source_count(index, 1, rng), 1);
  const std::uint64_t draws = 100000;
  std::vector<std::uint64_t> counts(5);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sample_source_count(index, 4, rng))];
  const auto table = exact_dag_table(4);
  for (int k = 1; k <= 4; ++k) {
    const double p = table.at(4, k).convert_to<double>() / 543.0;
    EXPECT_TRUE(within_sigma(counts[static_cast<std::size_t>(k)], draws, p, 4)) << "k=" << k;
  }
}

TEST(Sampling, KSubsets) {
  RandomSource rng(32);
  const std::vector<int> v{3, 5, 8, 9};
  EXPECT_EQ(sample_k_subset(v, 4, rng), v);
  EXPECT_TRUE(sample_k_subset(v, 0, rng).empty());
  std::map<std::vector<int>, std::uint64_t> counts;
  const std::uint64_t draws = 100000;
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[sample_k_subset(v, 2, rng)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [s, c] : counts) EXPECT_TRUE(within_sigma(c, draws, 1.0 / 6, 4));
}

TEST(Sampling, NonemptySubsets) {
  RandomSource rng(33);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_nonempty_subset(1, rng), 1);
  std::vector<std::uint64_t> counts(4);
  for (int i = 0; i < 30000; ++i) ++counts[static_cast<std::size_t>(sample_nonempty_subset(2, rng))];
  EXPECT_EQ(counts[0], 0u);
  for (int j = 1; j < 4; ++j) EXPECT_TRUE(within_sigma(counts[static_cast<std::size_t>(j)], 30000, 1.0 / 3, 4));
}

TEST(Sampling, NthAllowedCode) {
  const std::vector<BigInt> forbidden{0, 1, 2, 5};
  // allowed: 3, 4, 6, 7, ...
  EXPECT_EQ(nth_allowed_code(0, forbidden), 3);
  EXPECT_EQ(nth_allowed_code(1, forbidden), 4);
  EXPECT_EQ(nth_allowed_code(2, forbidden), 6);
  EXPECT_EQ(nth_allowed_code(3, forbidden), 7);
  EXPECT_EQ(nth_allowed_code(5, {}), 5);
}

TEST(Sampling, SubsetExcluding) {
  RandomSource rng(34);
  std::vector<std::uint64_t> small(4);
  for (int i = 0; i < 30000; ++i) ++small[static_cast<std::size_t>(sample_subset_excluding(2, {BigInt(1)}, rng))];
  EXPECT_EQ(small[1], 0u);
  for (int j : {0, 2, 3}) EXPECT_TRUE(within_sigma(small[static_cast<std::size_t>(j)], 30000, 1.0 / 3, 4));

  const std::vector<BigInt> forbidden{1, 4, 6, 7, 13};
  std::vector<std::uint64_t> counts(16);
  const std::uint64_t draws = 100000;
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(sample_subset_excluding(4, forbidden, rng))];
  for (int code = 0; code < 16; ++code) {
    const bool banned = std::find(forbidden.begin(), forbidden.end(), code) != forbidden.end();
    if (banned) {
      EXPECT_EQ(counts[static_cast<std::size_t>(code)], 0u);
    } else {
      EXPECT_TRUE(within_sigma(counts[static_cast<std::size_t>(code)], draws, 1.0 / 11, 4)) << code;
    }
  }
  EXPECT_THROW(sample_subset_excluding(1, {0, 1}, rng), std::invalid_argument);
  EXPECT_THROW(sample_subset_excluding(2, {1, 1}, rng), std::invalid_argument);
}

TEST(Sampling, SubsetCodesRoundTrip) {
  const std::vector<int> ground{2, 4, 7};
  EXPECT_EQ(encode_subset(std::vector<int>{4, 7}, ground), 6);
  EXPECT_EQ(decode_subset(6, ground), (std::vector<int>{4, 7}));
}

TEST(Generate, TinyCases) {
  RandomSource rng(35);
  const auto one = generate_dag(1, exact_dag_table(1), rng);
  EXPECT_EQ(one.graph.size(), 1);
  EXPECT_EQ(one.top, std::vector<int>{0});
  const DagSampler<BigInt> dag2(exact_dag_table(2));
  const auto empty = dag2.sample_with_top(2, 2, rng);
  EXPECT_EQ(empty.graph.arc_count(), 0u);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(generate_essdag(2, exact_essdag_table(2), rng).graph.arc_count(), 0u);
  std::uint64_t forward = 0;
  const DagSampler<BigInt> ext2(exact_extdag_table(2));
  for (int i = 0; i < 20000; ++i) {
    const auto g = ext2.sample(2, rng).graph;
    ASSERT_EQ(g.arc_count(), 1u);
    if (g.has_arc(0, 1)) ++forward;
  }
  EXPECT_TRUE(within_sigma(forward, 20000, 0.5, 4));
  EXPECT_THROW(generate_dag(2, exact_essdag_table(2), rng), std::invalid_argument);
}

TEST(Generate, OutputsAreMembersWithMatchingTop) {
  RandomSource rng(36);
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const DagSampler<BigInt> exact(exact_table(f, 8));
    const DagSampler<ApproxFloat> approx(approx_table(f, 8, 5));
    for (int n = 1; n <= 8; ++n) {
      for (int i = 0; i < 150; ++i) {
        for (const GeneratedDag& g : {exact.sample(n, rng), approx.sample(n, rng)}) {
          ASSERT_TRUE(in_family(g.graph, f)) << family_name(f) << " n=" << n;
          EXPECT_EQ(g.top, top_set(g.graph, f));
        }
      }
    }
  }
}

TEST(Generate, ExtensionalAtSixVertices) {
  RandomSource rng(37);
  const DagSampler<BigInt> s(exact_extdag_table(6));
  for (int i = 0; i < 10000; ++i) ASSERT_TRUE(is_extensional(s.sample(6, rng).graph));
}

TEST(Probability, ExactTablesAreUniform) {
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    for (int n = 1; n <= 4; ++n) {
      const auto table = exact_table(f, n);
      const Rational expect{BigInt(1), row_total(table, n)};
      for (const auto& d : enumerate_dags(n, f)) EXPECT_EQ(dag_probability(d, table), expect) << family_name(f);
    }
  }
  EXPECT_EQ(dag_probability(LabeledDag(1), exact_dag_table(1)), 1);
}

TEST(Probability, ApproxTablesSumToOneAndStayNearUniform) {
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    for (int n = 2; n <= 4; ++n) {
      const Rational F{exact_count(f, n)};
      for (int t : {2, 3, 5}) {
        const auto table = approx_table(f, n, t);
        Rational sum = 0;
        for (const auto& d : enumerate_dags(n, f)) sum += dag_probability(d, table);
        EXPECT_EQ(sum, 1) << family_name(f) << " n=" << n << " t=" << t;
      }
      const Rational eps{1, 10};
      const auto table = approx_table(f, n, family_precision(f, Problem::dag_generate, n, eps));
      for (const auto& d : enumerate_dags(n, f)) {
        const Rational r = dag_probability(d, table) * F;
        EXPECT_GE(r, 1 - eps);
        EXPECT_LE(r, 1 + eps);
      }
    }
  }
}

TEST(Probability, NonMembersAndCycles) {
  const auto table = exact_essdag_table(2);
  EXPECT_EQ(dag_probability(LabeledDag::from_arcs(2, {{0, 1}}), table), 0);
  EXPECT_THROW(dag_probability(LabeledDag::from_arcs(2, {{0, 1}, {1, 0}}), exact_dag_table(2)), std::invalid_argument);
}

// The sampler's empirical law matches dag_probability on a coarse table.
TEST(Probability, MatchesSamplerFrequencies) {
  for (Family f : {Family::dag, Family::essdag, Family::extdag}) {
    const auto table = approx_table(f, 3, 2);
    const DagSampler<ApproxFloat> sampler(table);
    const auto members = enumerate_dags(3, f);
    std::map<LabeledDag, std::uint64_t> counts;
    RandomSource rng(38);
    const std::uint64_t draws = 60000;
    for (std::uint64_t i = 0; i < draws; ++i) ++counts[sampler.sample(3, rng).graph];
    for (const auto& d : members) {
      const double p = dag_probability(d, table).convert_to<double>();
      EXPECT_TRUE(within_sigma(counts[d], draws, p, 4.5)) << family_name(f);
    }
  }
}
