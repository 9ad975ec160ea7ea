#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PROLATE_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, SpectrumRowsDescend) {
  const auto r = run("spectrum --c 3 --modes 6");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "lambda", "gap"}));
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][1]), std::stod(rows[i - 1][1]));
}

TEST(Cli, SpectrumSmallBandwidth) {
  const auto r = run("spectrum --c 0.01 --modes 1");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][1]) / (0.02 / M_PI), 1.0, 0.01);
}

TEST(Cli, InvalidArgumentsExitTwo) {
  EXPECT_EQ(run("spectrum --c -1").code, 2);
  EXPECT_EQ(run("spectrum --c 3 --order 10").code, 2);
  EXPECT_EQ(run("spectrum --format xml").code, 2);
  EXPECT_EQ(run("asymptotics --c ''").code, 2);
  EXPECT_EQ(run("asymptotics --c 2,x").code, 2);
  EXPECT_EQ(run("sum-spectrum --tau 40 --L 30").code, 2);
  EXPECT_EQ(run("sum-spectrum --n 100").code, 2);
  EXPECT_EQ(run("hardy --M 0").code, 2);
  EXPECT_EQ(run("hardy --omega 5").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, ForceAllowsLowOrder) { EXPECT_EQ(run("spectrum --c 3 --order 10 --force").code, 0); }

TEST(Cli, AsymptoticsTrend) {
  const auto rows = parse_csv(run("asymptotics --c 2,4,6,8").out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_LT(std::abs(std::stod(rows[4][3]) - 1.0), std::abs(std::stod(rows[2][3]) - 1.0));
  EXPECT_EQ(parse_csv(run("asymptotics --c 3").out).size(), 2u);
}

TEST(Cli, SumSpectrumProductInvariance) {
  const auto a = parse_csv(run("sum-spectrum --tau 1 --omega 3 --L 30 --n 600 --modes 6").out);
  const auto b = parse_csv(run("sum-spectrum --tau 2 --omega 1.5 --L 30 --n 600 --modes 6").out);
  ASSERT_EQ(a.size(), 13u);
  ASSERT_EQ(b.size(), 13u);
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_EQ(a[i][4], b[i][4]);
    if (a[i][1] == "1") {
      EXPECT_LT(std::stod(a[i][5]), 1e-4);
    }
  }
}

TEST(Cli, HardyRatioIncreases) {
  const auto r = run("hardy --omega 1.5,2,2.5 --M 1");
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto& head = rows[0];
  const auto col = std::find(head.begin(), head.end(), "margin_ratio") - head.begin();
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GT(std::stod(rows[i][col]), std::stod(rows[i - 1][col]));
}

TEST(Cli, DeterministicCsv) {
  for (const char* args : {"spectrum", "asymptotics", "sum-spectrum", "hardy"}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, JsonRoundTrips) {
  for (const char* args : {"spectrum --format json", "sum-spectrum --format json", "hardy --format json"}) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << args;
    const auto doc = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(doc.dump(2) + "\n", r.out) << args;
    EXPECT_TRUE(doc.contains("rows"));
  }
}

TEST(Cli, WritesToFile) {
  const std::string path = ::testing::TempDir() + "prolate_cli_out.csv";
  ASSERT_EQ(run("spectrum --out " + path).code, 0);
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_EQ(ss.str(), run("spectrum").out);
}
