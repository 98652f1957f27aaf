#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pmc/config.hpp"
#include "pmc/error.hpp"
#include "pmc/runner.hpp"

using namespace pmc;
namespace fs = std::filesystem;

namespace {

// true when f() throws an Error whose message contains needle
template <class F>
bool fails_with(F f, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

RunConfig t1_only(const std::string& suite) {
  RunConfig cfg = default_config();
  cfg.towers.resize(1);
  cfg.checks = {suite};
  return cfg;
}

size_t plan_count(const RunConfig& cfg) { return plan_jobs(cfg).size(); }

int run_cmd(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("the default run covers every suite over both towers") {
  RunConfig cfg = default_config();
  CHECK(cfg.checks == suite_names());
  CHECK(cfg.checks.size() == 8);
  REQUIRE(cfg.towers.size() == 2);
  CHECK(cfg.towers[0].name == "t1");
  CHECK(cfg.towers[0].p == 2);
  CHECK(cfg.towers[0].top == "Qrt5");
  CHECK(cfg.towers[0].f == 20);
  CHECK(cfg.towers[0].levels == std::vector<long>{40});
  CHECK(cfg.towers[0].ks == std::vector<unsigned long>{2, 4});
  CHECK(cfg.towers[1].name == "t2");
  CHECK(cfg.towers[1].p == 3);
  CHECK(cfg.towers[1].top == "Qz7p");
  CHECK(cfg.towers[1].f == 63);
  CHECK(cfg.seed == 1);
  CHECK(cfg.workers == 1);
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("config text overrides defaults and keeps the rest") {
  CHECK(parse_config("{}").checks == suite_names());
  CHECK(parse_config("{}").towers.size() == 2);

  RunConfig cfg = parse_config(R"({
    "seed": 42, "workers": 3, "alpha_max": 4, "random_eps": 0,
    "group_cap": 9, "out": "reports",
    "checks": ["claim", "dr"],
    "towers": {
      "t3": {"p": 2, "top": "Qz16p", "s": [2], "f": 4, "levels": [16, 32], "ks": [2]}
    }
  })");
  CHECK(cfg.seed == 42);
  CHECK(cfg.workers == 3);
  CHECK(cfg.alpha_max == 4);
  CHECK(cfg.random_eps == 0);
  CHECK(cfg.group_cap == 9);
  CHECK(cfg.out_dir == "reports");
  CHECK(cfg.checks == std::vector<std::string>{"claim", "dr"});
  REQUIRE(cfg.towers.size() == 1);
  CHECK(cfg.towers[0].name == "t3");
  CHECK(cfg.towers[0].s == std::vector<long>{2});
  CHECK(cfg.towers[0].levels == std::vector<long>{16, 32});
  CHECK_NOTHROW(validate_config(cfg));

  // a present empty checks array means run nothing, not run everything
  CHECK(parse_config(R"({"checks": []})").checks.empty());
}

TEST_CASE("bad config text and bad values are rejected with the field named") {
  CHECK(fails_with([] { parse_config("{nope"); }, "config:"));
  CHECK(fails_with([] { parse_config("[1]"); }, "top level"));
  CHECK(fails_with([] { parse_config(R"({"spede": 1})"); }, "spede"));
  CHECK(fails_with([] { parse_config(R"({"seed": -4})"); }, "seed"));
  CHECK(fails_with([] { parse_config(R"({"seed": "x"})"); }, "seed"));
  CHECK(fails_with([] { parse_config(R"({"towers": {"a": {"frob": 1}}})"); }, "frob"));

  auto invalid = [](const std::string& text, const std::string& needle) {
    return fails_with([&] { validate_config(parse_config(text)); }, needle);
  };
  CHECK(invalid(R"({"workers": 0})", "workers"));
  CHECK(invalid(R"({"alpha_max": 9})", "alpha_max"));
  CHECK(invalid(R"({"checks": ["claim", "claim"]})", "duplicate"));
  CHECK(invalid(R"({"checks": ["zeta"]})", "unknown suite"));
  CHECK(invalid(R"({"towers": {"x": {"p": 4}}})", "4 is not prime"));
  CHECK(invalid(R"({"towers": {"x": {"p": 3, "top": "Qz7p", "s": [3, 7], "f": 63,
                                     "levels": [63], "ks": [3]}}})",
                "weights must be even"));
  CHECK(invalid(R"({"towers": {"x": {"p": 3, "top": "Qz7p", "s": [3],
                                     "levels": [], "ks": [2]}}})",
                "levels"));
  CHECK(invalid(R"({"towers": {"x": {"p": 3, "top": "Qz7p", "s": [7],
                                     "levels": [63], "ks": [2]}}})",
                "must contain p"));
  // suites built around the distinguished shift refuse towers without one
  CHECK(invalid(R"({"checks": ["four-star"],
                    "towers": {"x": {"p": 3, "top": "Qz7p", "s": [3, 7],
                                     "levels": [63], "ks": [2]}}})",
                "required by special-g"));
  CHECK(invalid(R"({"checks": ["dr"], "towers": {}})", "at least one tower"));
}

TEST_CASE("plans enumerate a deterministic job list per suite") {
  CHECK(plan_count(t1_only("claim")) == 80);  // 16 groups x p-unit multipliers
  CHECK(plan_count(t1_only("hio")) == 16);
  CHECK(plan_count(t1_only("dr")) == 2);             // one per tower field
  CHECK(plan_count(t1_only("pseudomeasure")) == 32);  // 16 law instances per field
  CHECK(plan_count(t1_only("special-g")) == 1);
  CHECK(plan_count(t1_only("four-star")) == 14);  // 7 test functions x 2 weights
  CHECK(plan_count(t1_only("prop9")) == 13);      // 1 main + 10 extension + 2 orbit
  CHECK(plan_count(t1_only("theorem")) == 2);

  RunConfig none = default_config();
  none.checks.clear();
  CHECK(plan_count(none) == 0);

  // suite order in the config is the row order in the plan
  RunConfig two = default_config();
  two.towers.resize(1);
  two.checks = {"theorem", "special-g"};
  auto jobs = plan_jobs(two);
  REQUIRE(jobs.size() == 3);
  CHECK(jobs[0].suite == "theorem");
  CHECK(jobs[2].suite == "special-g");

  // claim alone needs no towers at all
  RunConfig bare;
  bare.checks = {"claim"};
  CHECK(plan_count(bare) == 80);
}

TEST_CASE("impossible levels and shifts surface as config errors at plan time") {
  RunConfig cfg = t1_only("dr");
  cfg.towers[0].levels = {8};  // not a multiple of the top conductor 5
  CHECK(fails_with([&] { plan_jobs(cfg); }, "towers.t1.levels"));

  // a shift conductor with a prime outside s breaks the suites that need it
  RunConfig strict = t1_only("four-star");
  strict.towers[0].f = 12;
  CHECK(fails_with([&] { plan_jobs(strict); }, "towers.t1.f"));

  // but is quietly skipped by suites that can run without the shift
  RunConfig lax = t1_only("dr");
  lax.towers[0].f = 12;
  CHECK(plan_count(lax) == 2);
}

TEST_CASE("run_config executes the plan in order and tallies verdicts") {
  RunConfig cfg = default_config();
  cfg.towers.resize(1);
  cfg.checks = {"special-g", "theorem"};
  ReportBundle b = run_config(cfg);
  REQUIRE(b.rows.size() == 3);
  CHECK(b.rows[0].suite == "special-g");
  CHECK(b.rows[1].suite == "theorem");
  CHECK(b.passed == 3);
  CHECK(b.failed == 0);
  CHECK(b.vacuous == 0);
  CHECK(b.rows[0].report.witness.front() == "21*21=1 mod 40");
  for (const auto& row : b.rows) CHECK(row.report.seconds >= 0);
  CHECK(b.seconds > 0);
}

TEST_CASE("report bodies are byte stable across worker counts and runs") {
  RunConfig cfg = t1_only("four-star");
  ReportBundle b1 = run_config(cfg);
  ReportBundle b1again = run_config(cfg);
  cfg.workers = 3;
  ReportBundle b3 = run_config(cfg);

  CHECK(render_report(b1) == render_report(b1again));
  CHECK(render_report(b1) == render_report(b3));
  CHECK(render_csv(b1) == render_csv(b3));
  CHECK(render_json(b1, false) == render_json(b3, false));
  // timing data stays out of the stable body and in the opt-in one
  CHECK(render_json(b1, false).find("seconds") == std::string::npos);
  CHECK(render_json(b1, true).find("seconds") != std::string::npos);
  CHECK(render_report(b1).find("seconds") == std::string::npos);

  // the seed reaches the random test functions, not just the header
  RunConfig seeded = t1_only("four-star");
  seeded.seed = 9;
  ReportBundle b9 = run_config(seeded);
  std::string w1, w9;
  for (const auto& row : b1.rows)
    if (row.report.params.find("eps=rand0") != std::string::npos && w1.empty())
      w1 = row.report.witness.front();
  for (const auto& row : b9.rows)
    if (row.report.params.find("eps=rand0") != std::string::npos && w9.empty())
      w9 = row.report.witness.front();
  REQUIRE(!w1.empty());
  REQUIRE(!w9.empty());
  CHECK(w1 != w9);
}

TEST_CASE("failing rows render as FAIL with their witness and counts") {
  ReportBundle b;
  b.config = default_config();
  ReportRow ok;
  ok.suite = "claim";
  ok.report.name = "claim";
  ok.report.params = "group=C2 p=2 r=3";
  ok.report.pass = true;
  ReportRow bad;
  bad.suite = "claim";
  bad.report.name = "claim";
  bad.report.params = "group=C4 p=2 r=3";
  bad.report.pass = false;
  bad.report.witness = {"sum=1/2 v=-1 need=2"};
  b.rows = {ok, bad};
  b.passed = 1;
  b.failed = 1;

  std::string text = render_report(b);
  CHECK(text.find("PASS claim [group=C2 p=2 r=3]") != std::string::npos);
  CHECK(text.find("FAIL claim [group=C4 p=2 r=3]") != std::string::npos);
  CHECK(text.find("    sum=1/2 v=-1 need=2") != std::string::npos);
  CHECK(text.find("summary: total=2 passed=1 failed=1 vacuous=0") != std::string::npos);
  CHECK(render_csv(b) == "suite,total,passed,failed,vacuous\nclaim,2,1,1,0\n");
}

TEST_CASE("the tool writes reports and signals through exit codes") {
  fs::path tmp = fs::current_path() / "cli_tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const std::string bin = PMCONG_BIN;
  fs::path log = tmp / "log";
  auto tool = [&](const std::string& args) {
    return run_cmd(bin + " " + args + " > " + log.string() + " 2>&1");
  };

  CHECK(tool("claim --out " + (tmp / "r1").string()) == 0);
  for (const char* f : {"report.txt", "summary.csv", "bundle.json"})
    CHECK(fs::exists(tmp / "r1" / f));
  CHECK(tool("claim --out " + (tmp / "r2").string()) == 0);
  CHECK(slurp(tmp / "r1" / "report.txt") == slurp(tmp / "r2" / "report.txt"));
  CHECK(slurp(tmp / "r1" / "summary.csv") == slurp(tmp / "r2" / "summary.csv"));
  CHECK(slurp(tmp / "r1" / "summary.csv") ==
        "suite,total,passed,failed,vacuous\nclaim,80,80,0,0\n");

  // --checks beats the subcommand, so one flag can rescope a saved invocation
  CHECK(tool("claim --checks hio --out " + (tmp / "r3").string()) == 0);
  CHECK(slurp(tmp / "r3" / "summary.csv") ==
        "suite,total,passed,failed,vacuous\nhio,16,16,0,0\n");

  spit(tmp / "bad.json", "{nope");
  CHECK(tool("--config " + (tmp / "bad.json").string()) == 2);
  CHECK(slurp(log).find("error: config:") != std::string::npos);

  spit(tmp / "p4.json", R"({"towers": {"x": {"p": 4}}})");
  CHECK(tool("--config " + (tmp / "p4.json").string()) == 2);
  CHECK(slurp(log).find("4 is not prime") != std::string::npos);

  spit(tmp / "none.json", R"({"checks": []})");
  CHECK(tool("--config " + (tmp / "none.json").string() + " --out " + (tmp / "r0").string()) ==
        0);
  CHECK(slurp(tmp / "r0" / "summary.csv") == "suite,total,passed,failed,vacuous\n");

  CHECK(tool("--frobnicate") == 2);
  CHECK(tool("claim --tower nosuch") == 2);
  CHECK(tool("--help") == 0);
  fs::remove_all(tmp);
}

TEST_CASE("cache admin builds, verifies, flags corruption, and clears") {
  fs::path tmp = fs::current_path() / "cli_cache_tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const std::string bin = PMCONG_BIN;
  fs::path log = tmp / "log";
  const std::string env = "env PMCONG_CACHE_DIR=" + (tmp / "cache").string() + " ";
  auto cache = [&](const std::string& mode) {
    return run_cmd(env + bin + " cache " + mode + " > " + log.string() + " 2>&1");
  };

  CHECK(cache("build") == 0);
  CHECK(fs::exists(tmp / "cache" / "bernoulli.cache"));
  CHECK(fs::exists(tmp / "cache" / "moebius.cache"));
  CHECK(cache("verify") == 0);
  CHECK(slurp(log).find("cache clean") != std::string::npos);

  fs::path bp = tmp / "cache" / "bernoulli.cache";
  std::string text = slurp(bp);
  auto pos = text.find("\n2 1/6\n");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "\n2 1/5\n");
  spit(bp, text);
  CHECK(cache("verify") == 1);
  CHECK(slurp(log).find("B_2 cached 1/5 recomputed 1/6") != std::string::npos);

  CHECK(cache("clear") == 0);
  CHECK(!fs::exists(bp));
  CHECK(cache("verify") == 2);  // nothing left to verify
  CHECK(cache("clear") == 0);   // clearing nothing is not an error
  fs::remove_all(tmp);
}
