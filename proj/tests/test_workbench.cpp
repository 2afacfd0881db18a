#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jk/jk.hpp"

using namespace jk;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("jk_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

// Runs the CLI; returns its exit status, stdout in `out`.
int cli(const std::string& args, std::string* out = nullptr, const std::string& env = "") {
  fs::path o = scratch("stdout.txt");
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(JK_CLI_PATH) + " " + args + " >" + o.string() + " 2>" +
                    scratch("stderr.txt").string();
  int rc = std::system(cmd.c_str());
  if (out) {
    std::ifstream is(o);
    *out = std::string(std::istreambuf_iterator<char>(is), {});
  }
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json without_time(json j) {
  j.erase("wall_time_ms");
  return j;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  Report r;
  r.suite = "tkk";
  r.algebra = "gamma:3";
  r.params = {{"trials", 3}};
  r.add(Check::exact("a.exact", true));
  r.add(Check::numeric("b.numeric", 1e-3, 1e-8, json{{"x", 1}}));
  r.add(Check::skipped("c.skipped", "too large"));
  r.wall_time_ms = 12;
  Report back = report_from_json(json::parse(emit(r, Format::Json)));
  EXPECT_EQ(back, r);
  EXPECT_FALSE(back.passed());
  EXPECT_EQ(back.checks[1].status, Status::Fail);
  EXPECT_EQ(back.checks[1].witness["x"], 1);
  EXPECT_TRUE(back.checks[2].passed());
}

TEST(Report, NanMetricSurvivesRoundTrip) {
  Report r;
  r.suite = "s";
  r.algebra = "gamma:2";
  r.add(Check::numeric("nan", std::numeric_limits<double>::quiet_NaN(), 1.0));
  EXPECT_FALSE(r.passed());
  Report back = report_from_json(to_json(r));
  ASSERT_TRUE(back.checks[0].metric.has_value());
  EXPECT_TRUE(std::isnan(*back.checks[0].metric));
}

TEST(Report, EmptyReportPasses) {
  Report r;
  EXPECT_TRUE(r.passed());
  EXPECT_NE(emit(r, Format::Text).find("OK 0/0"), std::string::npos);
  EXPECT_EQ(report_from_json(to_json(r)), r);
}

TEST(Report, MalformedJsonRejected) {
  json j = to_json(Report{});
  j["checks"] = json::array({{{"name", "x"}, {"status", "maybe"}, {"metric", "exact"}, {"witness", nullptr}}});
  EXPECT_THROW(report_from_json(j), std::exception);
}

TEST(Workbench, DeterministicAcrossRunsAndJobs) {
  SuiteConfig c;
  c.algebra = "h:3:R";
  c.suite = "cone";
  c.trials = 4;
  c.seed = 42;
  json a = without_time(to_json(run(c)));
  json b = without_time(to_json(run(c)));
  c.jobs = 4;
  json d = without_time(to_json(run(c)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  c.seed = 43;
  EXPECT_NE(a, without_time(to_json(run(c))));
}

TEST(Workbench, ChecksSortedAndPrefixed) {
  SuiteConfig c;
  c.algebra = "gamma:2";
  c.suite = "all";
  c.trials = 2;
  c.jobs = 3;
  Report r = run(c);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                             [](const Check& x, const Check& y) { return x.name < y.name; }));
  for (const auto& ch : r.checks) {
    auto dot = ch.name.find('.');
    ASSERT_NE(dot, std::string::npos) << ch.name;
    const auto& names = suite_names();
    EXPECT_NE(std::find(names.begin(), names.end(), ch.name.substr(0, dot)), names.end()) << ch.name;
  }
}

TEST(Workbench, ConfigValidation) {
  SuiteConfig c;
  c.trials = 0;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.suite = "nope";
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_THROW(config_from_json(json{{"bogus", 1}}), UsageError);
  SuiteConfig j = config_from_json(json{{"algebra", "h:3:C"}, {"nu", 2}, {"trials", 3}, {"format", "json"}});
  EXPECT_EQ(j.algebra, "h:3:C");
  EXPECT_EQ(j.nu.value(), "2");
  EXPECT_EQ(j.trials, 3);
  SuiteConfig bad;
  bad.algebra = "h:2:R";
  EXPECT_THROW(run(bad), UsageError);
}

TEST(Workbench, StableHashAndEngines) {
  EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cull);
  Engine a = task_engine(1, "cone.k=1"), b = task_engine(1, "cone.k=1"), c = task_engine(1, "cone.k=2");
  EXPECT_EQ(a(), b());
  EXPECT_NE(task_engine(1, "cone.k=1")(), c());
}

TEST(Workbench, SpectrumAndInfo) {
  Spectrum s = spectrum("gamma:3", "1", 4, true, 7);
  ASSERT_EQ(s.rows.size(), 4u);
  for (unsigned I = 0; I < 4; ++I) {
    EXPECT_EQ(s.rows[I].energy, Rational(-1, 2) / Rational((I + 1) * (I + 1)));
    EXPECT_EQ(s.rows[I].degeneracy.value(), static_cast<int>((I + 1) * (I + 1)));
  }
  json j = to_json(spectrum("h:3:R", "1/2", 2, false, 1));
  EXPECT_EQ(j["nu_kind"], "discrete");
  EXPECT_TRUE(j["levels"][0]["degeneracy"].is_null());
  EXPECT_THROW(spectrum("h:3:R", "1/4", 2, false, 1), WallachDomainError);
  json i = info("h:3:O");
  EXPECT_EQ(i["dim_str"], 79);
  EXPECT_EQ(i["dim_co"], 133);
  EXPECT_EQ(i["n"], 27);
  EXPECT_EQ(i["cones"][0]["D_k"], 17);
}

// ---------------------------------------------------------------- CLI

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("info --algebra gamma:3"), 0);
  EXPECT_EQ(cli("verify --suite jordan --algebra gamma:3 --trials 2"), 0);
  EXPECT_EQ(cli("verify --suite jordan --algebra h:2:R"), 2);
  EXPECT_EQ(cli("verify --suite nope"), 2);
  EXPECT_EQ(cli("verify --bogus-flag"), 2);
  EXPECT_EQ(cli("verify --format yaml"), 2);
  EXPECT_EQ(cli(""), 2);
  EXPECT_EQ(cli("spectrum --algebra h:3:R --nu 1/4"), 3);
  EXPECT_EQ(cli("verify --suite operators --algebra h:3:R --nu 0.25 --trials 1"), 3);
  // an absurd tolerance makes float checks fail
  EXPECT_EQ(cli("verify --suite cone --algebra gamma:3 --trials 2 --tol 1e-300"), 1);
}

TEST(Cli, JsonOutputAndFile) {
  std::string out;
  ASSERT_EQ(cli("spectrum --algebra gamma:3 --nu 1 --levels 3 --degeneracies --format json", &out), 0);
  json j = json::parse(out);
  EXPECT_EQ(j["levels"][2]["energy"], "-1/18");
  EXPECT_EQ(j["levels"][2]["degeneracy"], 9);
  fs::path f = scratch("report.json");
  ASSERT_EQ(cli("verify --suite tkk --algebra h:3:R --trials 2 --format json --out " + f.string()), 0);
  std::ifstream is(f);
  Report r = report_from_json(json::parse(is));
  EXPECT_EQ(r.algebra, "h:3:R");
  EXPECT_TRUE(r.passed());
}

TEST(Cli, ConfigPrecedenceAndSeedFallback) {
  fs::path cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"algebra": "h:3:R", "suite": "jordan", "trials": 2, "seed": 5})";
  std::string out;
  ASSERT_EQ(cli("verify --config " + cfg.string() + " --trials 3 --format json", &out), 0);
  json j = json::parse(out);
  EXPECT_EQ(j["algebra"], "h:3:R");
  EXPECT_EQ(j["suite"], "jordan");
  EXPECT_EQ(j["params"]["trials"], 3);
  EXPECT_EQ(j["params"]["seed"], 5);
  ASSERT_EQ(cli("verify --suite jordan --trials 2 --format json", &out, "JK_SEED=17"), 0);
  EXPECT_EQ(json::parse(out)["params"]["seed"], 17);
  ASSERT_EQ(cli("verify --suite jordan --trials 2 --seed 4 --format json", &out, "JK_SEED=17"), 0);
  EXPECT_EQ(json::parse(out)["params"]["seed"], 4);
  EXPECT_EQ(cli("verify --config /nonexistent/cfg.json"), 2);
}
