#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpcount/cli.hpp"

using namespace fpcount;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "fpcount");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("fpcount_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST(Cli, CountExamples) {
  EXPECT_EQ(run({"count", "dag", "3", "--exact"}).out, "25\n");
  EXPECT_EQ(run({"count", "essdag", "2", "--exact"}).out, "1\n");
  const CliRun one = run({"count", "dag", "1", "--eps", "0.5"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(field(one.out, "value"), "1");
  EXPECT_EQ(field(one.out, "interval"), "1 2");
  EXPECT_EQ(field(run({"count", "dag", "3", "--eps", "1"}).out, "interval").substr(3), "inf");
  const CliRun r = run({"count", "dag", "6", "--eps", "0.3"});
  EXPECT_FALSE(field(r.out, "fields").empty());
  EXPECT_NE(field(r.out, "fields").find(':'), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"count", "dag", "3", "--exact", "--eps", "0.1"}).code, exit_usage);
  EXPECT_EQ(run({"count", "tree", "3"}).code, exit_usage);
  EXPECT_EQ(run({"count", "dag", "3", "--eps", "1.5"}).code, exit_usage);
  EXPECT_EQ(run({"count", "dag", "3", "--eps", "abc"}).code, exit_usage);
  EXPECT_EQ(run({}).code, exit_usage);
  EXPECT_EQ(run({"--help"}).code, exit_ok);
  EXPECT_EQ(run({"verify", "nothing"}).code, exit_usage);
}

TEST(Cli, SampleIsReproducible) {
  const std::vector<std::string> args{"sample", "dag", "5", "--seed", "99", "--count", "20"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"sample", "dag", "5", "--seed", "100", "--count", "20"}).out);
  EXPECT_EQ(run({"sample", "dag", "1", "--exact"}).out, "1 0\n");
}

TEST(Cli, SampledGraphsParseAndAreAcyclic) {
  const CliRun r = run({"sample", "extdag", "3", "--exact", "--count", "50", "--seed", "4"});
  std::istringstream in(r.out);
  int graphs = 0;
  for (int n, m; in >> n >> m;) {
    LabeledDag g(n);
    for (int j = 0; j < m; ++j) {
      int u, v;
      in >> u >> v;
      g.add_arc(u, v);
    }
    EXPECT_TRUE(is_acyclic(g));
    EXPECT_TRUE(is_extensional(g));
    ++graphs;
  }
  EXPECT_EQ(graphs, 50);
  const CliRun j = run({"sample", "dag", "3", "--count", "2", "--format", "json-lines"});
  const auto first = nlohmann::json::parse(j.out.substr(0, j.out.find('\n')));
  EXPECT_EQ(first["nodes"].size(), 3u);
  EXPECT_TRUE(first.contains("arcs"));
  EXPECT_TRUE(first.contains("sources"));
}

TEST(Cli, KnapsackAndPathcount) {
  const auto knap = write_temp("k.txt", "3 3\n1 2 3\n");
  EXPECT_EQ(run({"knapsack", knap, "--exact"}).out, "5\n");
  const CliRun approx = run({"knapsack", knap, "--eps", "1"});
  EXPECT_EQ(approx.code, 0);
  EXPECT_LE(parse_decimal(field(approx.out, "value")), 5);

  const auto chain = write_temp("p.txt", "4 6 0 3 3\n0 1 0\n0 1 1\n1 2 0\n1 2 2\n2 3 0\n2 3 3\n");
  EXPECT_EQ(run({"pathcount", chain, "--exact"}).out, "5\n");
  const CliRun p = run({"pathcount", chain, "--eps", "0.1"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(field(p.out, "depth"), "3");
  EXPECT_EQ(run({"pathcount", chain, "--eps", "0.1", "--a-priori"}).code, 0);

  const auto bad = write_temp("bad.txt", "3 3\n1 two 3\n");
  const CliRun e = run({"knapsack", bad, "--exact"});
  EXPECT_EQ(e.code, exit_usage);
  EXPECT_NE(e.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"knapsack", "/nonexistent/file", "--exact"}).code, exit_usage);
}

TEST(Cli, VerifyFloat) {
  const CliRun r = run({"verify", "float", "--budget", "50"});
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_NE(r.out.find("PASS float.truncate_bound"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CountingIgnoresSeed) {
  EXPECT_EQ(run({"count", "essdag", "7", "--eps", "0.2"}).out, run({"count", "essdag", "7", "--eps", "0.2"}).out);
}

TEST(Cli, TableOutput) {
  const CliRun r = run({"table", "dag", "3", "--exact"});
  EXPECT_EQ(r.out, "dag 3 exact\n1 1 1\n2 1 2\n2 2 1\n3 1 15\n3 2 9\n3 3 1\n");
}
