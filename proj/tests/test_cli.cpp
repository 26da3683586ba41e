// Copyright 2026 The drawdown-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "ddk/mc.hpp"
#include "ddk/tools/cli.hpp"
#include "ddk/tools/io.hpp"

namespace ddk {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::initializer_list<std::string> args) {
  std::vector<std::string> store = {"drawdown-kit"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("ddk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST_F(Cli, SurvivalCurveAsCsv) {
  const CliResult r = run({"law", "survival-m", "--model", "bm_std", "--x", "0", "--delta", "2",
                     "--y-grid", "0:5:0.1", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 15), "grid,value,err\n");
  std::istringstream in(r.out);
  const CurveTable t = io::read_table(in);
  EXPECT_EQ(t.size(), 51u);
}

TEST_F(Cli, NegativeDeltaIsUsageError) {
  const CliResult r = run({"law", "survival-m", "--delta", "-1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("delta must be positive"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"law"}).code, 2);
  EXPECT_EQ(run({"law", "no-such-law"}).code, 2);
  EXPECT_EQ(run({"law", "survival-m", "--model", "bm_std", "--delta", "1"}).code, 2);
  EXPECT_EQ(run({"law", "survival-m", "--model", "bm_std", "--delta", "1", "--y", "1",
                 "--y-grid", "1:2:1"})
                .code,
            2);
  EXPECT_EQ(run({"law", "survival-m", "--model", "bm_std", "--delta", "1", "--y", "1", "--csv",
                 "--json"})
                .code,
            2);
  EXPECT_EQ(run({"law", "survival-m", "--model", "nope", "--delta", "1", "--y", "1"}).code, 2);
  EXPECT_EQ(run({"law", "lehoczky", "--model", "bm_std", "--delta", "1", "--alpha", "x"}).code,
            2);
  EXPECT_EQ(run({"law", "survival-m", "--model", "bm_std", "--delta", "1", "--y", "1",
                 "--tail", "spline"})
                .code,
            2);
}

TEST_F(Cli, NumericalFailureExitCode) {
  const CliResult r = run({"law", "escape", "--model", "example33", "--x", "1", "--delta", "1",
                     "--max-subdiv", "1", "--rel-tol", "1e-15", "--abs-tol", "1e-300"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, HelpAndVersion) {
  const CliResult h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("validate"), std::string::npos);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(Cli, ModelCommands) {
  const CliResult l = run({"model", "list"});
  ASSERT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("bm_std,1a"), std::string::npos);
  EXPECT_NE(l.out.find("example33,2b"), std::string::npos);
  const CliResult d = run({"model", "describe", "--model", "bm_drift", "--model-params", "2,1"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("class,2a"), std::string::npos);
  EXPECT_NE(d.out.find("params,2;1"), std::string::npos);
}

TEST_F(Cli, JumpCommands) {
  const CliResult k = run({"jump", "kernel", "--model", "bm_std", "--rho", "1", "--delta", "2", "--y",
                     "1", "--fa", "2"});
  ASSERT_EQ(k.code, 0) << k.err;
  std::istringstream in(k.out);
  EXPECT_NEAR(io::read_table(in).values[0], 0.5 * std::exp(-0.5), 1e-10);
  const CliResult h = run({"jump", "holding", "--model", "bm_std", "--rho", "1", "--y", "0",
                     "--t-grid", "0,1,3", "--json"});
  ASSERT_EQ(h.code, 0) << h.err;
  std::istringstream hin(h.out);
  const CurveTable t = io::read_table(hin);
  EXPECT_EQ(t.grid_param, "t");
  EXPECT_NEAR(t.values[2], 0.25, 1e-14);
}

TEST_F(Cli, IdenticalRunsAreByteIdentical) {
  const std::initializer_list<std::string> law = {"law", "malyutin", "--model", "rbm", "--eta",
                                                  "2", "--alpha", "0.5", "--y-grid",
                                                  "0.5:2:0.25", "--json"};
  EXPECT_EQ(run(law).out, run(law).out);
  const std::initializer_list<std::string> mc = {
      "mc", "estimate", "--law", "survival-m", "--model", "bm_std", "--delta", "1", "--y-grid",
      "0.5,1,2", "--paths", "500", "--step", "1e-3", "--seed", "9"};
  const CliResult a = run(mc);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(mc).out);
}

TEST_F(Cli, OutputFileAndCompareRoundTrip) {
  const std::string analytic = path("analytic.json");
  const std::string empirical = path("empirical.json");
  ASSERT_EQ(run({"law", "survival-m", "--model", "bm_std", "--delta", "1", "--y-grid",
                 "0.5,1,2", "--json", "--output", analytic})
                .code,
            0);
  const CliResult est = run({"mc", "estimate", "--law", "survival-m", "--model", "bm_std", "--delta",
                       "1", "--y-grid", "0.5,1,2", "--paths", "4000", "--step", "1e-3",
                       "--json", "--output", empirical});
  ASSERT_EQ(est.code, 0) << est.err;
  EXPECT_TRUE(est.out.empty());

  const CliResult cmp = run({"mc", "compare", analytic, empirical, "--band", "3", "--bias", "0.03"});
  EXPECT_EQ(cmp.code, 0) << cmp.out << cmp.err;

  // The same comparison from the in-memory tables.
  const Comparison direct = compare_to_analytic(io::read_table_file(analytic),
                                                io::read_table_file(empirical), 3.0, 0.03);
  std::ostringstream expect;
  expect << "grid,analytic,empirical,bound,flagged\n";
  for (const auto& p : direct.points)
    expect << io::format_double(p.grid) << ',' << io::format_double(p.analytic) << ','
           << io::format_double(p.empirical) << ',' << io::format_double(p.bound) << ','
           << (p.flagged ? 1 : 0) << '\n';
  EXPECT_EQ(cmp.out, expect.str());

  // CSV copies of the same tables compare identically.
  const std::string a_csv = path("analytic.csv"), e_csv = path("empirical.csv");
  {
    std::ofstream fa(a_csv), fe(e_csv);
    io::write_csv(fa, io::read_table_file(analytic));
    io::write_csv(fe, io::read_table_file(empirical));
  }
  EXPECT_EQ(run({"mc", "compare", a_csv, e_csv, "--band", "3", "--bias", "0.03"}).out, cmp.out);
}

TEST_F(Cli, CompareReportsFailure) {
  const std::string a = path("a.csv"), e = path("e.csv");
  {
    std::ofstream fa(a), fe(e);
    fa << "grid,value,err\n1,0.5,0\n2,0.25,0\n";
    fe << "grid,value,err\n1,0.6,0.001\n2,0.35,0.001\n";
  }
  const CliResult r = run({"mc", "compare", a, e, "--json"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("\"pass\": false"), std::string::npos) << r.out;
  EXPECT_NE(r.err.find("FAIL"), std::string::npos);
}

TEST_F(Cli, ConfigFileIsOverriddenByFlags) {
  const std::string cfg = path("run.ini");
  {
    std::ofstream f(cfg);
    f << "# batch settings\n[model]\nid = bm_std\n\n[query]\nx = 0\ndelta = 2\ny-grid = 0:1:0.5\n"
         "[output]\nformat = json\n";
  }
  const CliResult fromfile = run({"--config", cfg, "law", "survival-m"});
  ASSERT_EQ(fromfile.code, 0) << fromfile.err;
  EXPECT_EQ(fromfile.out.front(), '{');
  std::istringstream in(fromfile.out);
  const CurveTable t = io::read_table(in);
  EXPECT_NEAR(t.values[2], std::exp(-0.5), 1e-12);

  const CliResult over = run({"law", "survival-m", "--config", cfg, "--delta", "1", "--format", "csv"});
  ASSERT_EQ(over.code, 0) << over.err;
  std::istringstream in2(over.out);
  const CurveTable t2 = io::read_table(in2);
  EXPECT_EQ(over.out.substr(0, 4), "grid");
  EXPECT_NEAR(t2.values[2], std::exp(-1.0), 1e-12);

  EXPECT_EQ(run({"--config", path("missing.ini"), "law", "survival-m"}).code, 2);
}

TEST_F(Cli, ValidateClosedFormsForReflectedMotion) {
  const CliResult r = run({"validate", "closed-forms", "--model", "rbm"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace ddk
