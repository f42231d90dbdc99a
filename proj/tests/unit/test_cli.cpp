#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "robustest/correlation.hpp"
#include "robustest/paired.hpp"
#include "robustest_cli/app.hpp"
#include "robustest_cli/csv.hpp"

using namespace robustest;
using namespace robustest::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "robustest");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& body) {
  fs::create_directories(ROBUSTEST_TEST_TMP);
  const auto path = fs::path(ROBUSTEST_TEST_TMP) / name;
  std::ofstream(path) << body;
  return path.string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

std::string second_line(const std::string& s) {
  const auto a = s.find('\n');
  return s.substr(a + 1, s.find('\n', a + 1) - a - 1);
}

bool same_to_12_digits(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) || a == b;
}

const char* kPairs =
    "id,x,y,g\n"
    "1,0.12,1.5,a\n2,0.85,0.3,b\n3,-0.4,2.2,a\n4,1.7,-0.9,b\n5,0.33,0.1,a\n"
    "6,-1.2,0.8,b\n7,0.9,1.1,a\n8,2.3,-0.2,b\n9,-0.7,0.45,a\n10,0.05,-1.3,b\n"
    "11,1.1,0.7,a\n12,-0.25,1.9,b\n";

}  // namespace

TEST(LoadCsv, Examples) {
  const auto p = write_file("three.csv", "a,b\n1,2\n3,4\n5,6\n");
  EXPECT_EQ(load_csv(p, {"a", "b"}).rows, 3u);
  const auto na = write_file("na.csv", "a,b\n1,2\nNA,4\n5,6\n");
  const auto t = load_csv(na, {"a", "b"});
  EXPECT_EQ(t.rows, 2u);
  EXPECT_EQ(t.dropped, 1u);
  EXPECT_EQ(t.missing, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(load_csv(na, {"b"}).rows, 3u);
  const auto f = write_file("filter.csv", "CDH,v\n0,1\n1,2\n1,3\n0,4\n");
  const auto kept = load_csv(f, {"v"}, parse_filter("CDH==1"));
  EXPECT_EQ(kept.column("v"), (std::vector<double>{2, 3}));
}

TEST(LoadCsv, Errors) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv", {"a"}), CsvError);
  const auto p = write_file("err.csv", "a,b\n1,2\n");
  EXPECT_THROW(load_csv(p, {"c"}), CsvError);
  EXPECT_THROW(load_csv(p, {"a"}, parse_filter("a==5")), CsvError);
  EXPECT_THROW(parse_filter("a=5"), CsvError);
  EXPECT_THROW(load_csv(write_file("dup.csv", "a,a\n1,2\n"), {"a"}), CsvError);
  EXPECT_THROW(load_csv(write_file("ragged.csv", "a,b\n1\n"), {"a"}), CsvError);
}

TEST(LoadCsv, QuotedHeaderAndLabels) {
  const auto p = write_file("quoted.csv", "\"v\",\"grp\"\n1.5,\"x\"\n2.5,y\n3.5,NA\n");
  const auto t = load_csv(p, {"v"}, std::nullopt, {"grp"});
  EXPECT_EQ(t.rows, 2u);
  EXPECT_EQ(t.label_column("grp"), (std::vector<std::string>{"x", "y"}));
}

TEST(Cli, CortestTextAndCsvAgree) {
  const auto p = write_file("pairs.csv", kPairs);
  const auto text = run_cli({"cortest", "--input", p, "--x", "x", "--y", "y"});
  ASSERT_EQ(text.code, 0) << text.err;
  EXPECT_NE(text.out.find("Corrected Pearson"), std::string::npos);
  EXPECT_NE(text.out.find("p-value"), std::string::npos);
  const auto csv = run_cli({"cortest", "--input", p, "--x", "x", "--y", "y", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  const auto cells = split(second_line(csv.out));
  const auto t = load_csv(p, {"x", "y"});
  const auto lib = pearson_robust(PairedSample(t.column("x"), t.column("y")));
  EXPECT_TRUE(same_to_12_digits(std::stod(cells[2]), lib.statistic));
  EXPECT_TRUE(same_to_12_digits(std::stod(cells[3]), lib.p_value));
  char shown[64];
  std::snprintf(shown, sizeof shown, "= %.4g", lib.p_value);
  EXPECT_NE(text.out.find(shown), std::string::npos);
}

TEST(Cli, EverySubcommandRuns) {
  const auto p = write_file("pairs2.csv", kPairs);
  const std::vector<std::vector<std::string>> cases{
      {"cortest", "--input", p, "--x", "x", "--y", "y", "--method", "kendall"},
      {"cortest", "--input", p, "--x", "x", "--y", "y", "--method", "spearman", "--classic"},
      {"indeptest", "--input", p, "--x", "x", "--y", "y", "--replicates", "200"},
      {"vartest", "--input", p, "--value", "x", "--group", "g"},
      {"vartest", "--input", p, "--value", "x", "--group", "g", "--baseline", "levene"},
      {"wilcoxtest", "--input", p, "--x", "x", "--y", "y", "--ties-break", "random"},
      {"wilcoxtest", "--input", p, "--x", "x", "--y", "y", "--paired", "--ties-break", "random"},
      {"wilcoxtest", "--input", p, "--value", "x", "--group", "g", "--classic", "--ties-break", "random"},
      {"mediantest", "--input", p, "--x", "x", "--y", "y"},
      {"symtest", "--input", p, "--x", "x", "--replicates", "200"},
      {"tiebreak", "--input", p, "--x", "id"},
  };
  for (const auto& c : cases) {
    const auto r = run_cli(c);
    EXPECT_EQ(r.code, 0) << c[0] << ": " << r.err;
    EXPECT_FALSE(r.out.empty());
  }
}

TEST(Cli, TiesWithoutPolicyExitTwo) {
  const auto p = write_file("ties.csv", "x,y\n1,1\n2,2\n2,3\n3,5\n4,4\n");
  const auto r = run_cli({"cortest", "--method", "kendall", "--input", p, "--x", "x", "--y", "y"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("tie"), std::string::npos);
  const auto ok = run_cli({"cortest", "--method", "kendall", "--input", p, "--x", "x", "--y", "y",
                           "--ties-break", "random"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, UsageAndDataErrors) {
  const auto p = write_file("pairs3.csv", kPairs);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"cortest", "--input", p, "--x", "x"}).code, 1);
  EXPECT_EQ(run_cli({"cortest", "--input", p, "--x", "x", "--y", "y", "--method", "rank"}).code, 1);
  EXPECT_EQ(run_cli({"cortest", "--input", p, "--x", "x", "--y", "y", "--alternative", "less"}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "--scenario", "mod1", "--sizes", "ten"}).code, 1);
  EXPECT_EQ(run_cli({"simulate", "--scenario", "mw", "--sizes", "10", "--tests", "VWelch"}).code, 1);
  EXPECT_EQ(run_cli({"cortest", "--input", p, "--x", "x", "--y", "nope"}).code, 2);
  const auto few = write_file("few.csv", "x,y\n1,2\n2,1\n");
  const auto r = run_cli({"mediantest", "--input", few, "--x", "x", "--y", "y"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("k >= 1"), std::string::npos);
}

TEST(Cli, HelpListsEveryFlag) {
  const std::map<std::string, std::vector<std::string>> flags{
      {"cortest", {"--input", "--filter", "--x", "--y", "--method", "--classic", "--alpha",
                   "--alternative", "--ties-break", "--seed", "--format"}},
      {"indeptest", {"--input", "--x", "--y", "--replicates", "--ties-break", "--seed", "--format"}},
      {"vartest", {"--input", "--value", "--group", "--baseline", "--alpha", "--format"}},
      {"wilcoxtest", {"--input", "--x", "--y", "--value", "--group", "--paired", "--classic",
                      "--ties-break", "--seed", "--format"}},
      {"mediantest", {"--input", "--x", "--y", "--alpha", "--format"}},
      {"symtest", {"--input", "--x", "--y", "--replicates", "--seed", "--format"}},
      {"simulate", {"--scenario", "--sizes", "--replicates", "--tests", "--workers", "--alpha",
                    "--seed", "--format"}},
      {"tiebreak", {"--input", "--x", "--seed"}},
  };
  for (const auto& [sub, names] : flags) {
    const auto r = run_cli({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    for (const auto& f : names) EXPECT_NE(r.out.find(f), std::string::npos) << sub << " " << f;
  }
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, SameSeedSameBytes) {
  const auto p = write_file("ties2.csv", "x,y\n1,1\n1,2\n2,3\n2,4\n3,6\n3,5\n4,7\n4,8\n5,9\n5,10\n");
  const std::vector<std::string> args{"cortest", "--method", "kendall", "--input", p, "--x", "x",
                                      "--y", "y", "--ties-break", "random", "--seed", "42"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  auto other = args;
  other.back() = "43";
  EXPECT_NE(run_cli(args).out, run_cli(other).out);
}

TEST(Cli, SeedFromEnvironment) {
  const auto p = write_file("ties3.csv", "x\n1\n1\n2\n2\n3\n");
  ::setenv("ROBUSTEST_SEED", "1234", 1);
  const auto env = run_cli({"tiebreak", "--input", p, "--x", "x"});
  ::unsetenv("ROBUSTEST_SEED");
  const auto explicit_seed = run_cli({"tiebreak", "--input", p, "--x", "x", "--seed", "1234"});
  EXPECT_EQ(env.out, explicit_seed.out);
  EXPECT_NE(env.out, run_cli({"tiebreak", "--input", p, "--x", "x"}).out);
}

TEST(Cli, MissingValuesWarn) {
  const auto p = write_file("na2.csv", std::string(kPairs) + "13,NA,1.0,a\n");
  const auto r = run_cli({"cortest", "--input", p, "--x", "x", "--y", "y"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("1 row(s)"), std::string::npos);
}

TEST(Cli, SimulateVWelchRow) {
  const auto r = run_cli({"simulate", "--scenario", "mod3", "--sizes", "100", "--replicates", "2000",
                          "--seed", "7", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  bool found = false;
  while (std::getline(lines, line)) {
    const auto cells = split(line);
    if (cells.size() > 3 && cells[1] == "VWelch" && cells[2] == "100") {
      found = true;
      EXPECT_NEAR(std::stod(cells[3]), 0.055, 0.015);
    }
  }
  EXPECT_TRUE(found);
  const auto again = run_cli({"simulate", "--scenario", "mod3", "--sizes", "100", "--replicates", "2000",
                              "--seed", "7", "--format", "csv", "--workers", "3"});
  EXPECT_EQ(r.out, again.out);
}
