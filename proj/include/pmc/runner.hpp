#ifndef PMC_RUNNER_HPP
#define PMC_RUNNER_HPP

#include <functional>
#include <string>
#include <vector>

#include "pmc/checks.hpp"
#include "pmc/config.hpp"

namespace pmc {

struct PlannedJob {
  std::string suite;
  std::function<CheckReport()> run;
};

// The deterministic job list for a validated config: suites in cfg.checks
// order, towers in config order, parameters ascending. Configuration
// problems (bad levels, impossible shift conductors) surface here as
// errors, before anything runs.
std::vector<PlannedJob> plan_jobs(const RunConfig& cfg);

struct ReportRow {
  std::string suite;
  CheckReport report;
};

struct ReportBundle {
  RunConfig config;
  std::vector<ReportRow> rows;  // plan order, independent of scheduling
  long passed = 0;
  long failed = 0;
  long vacuous = 0;  // vacuous passes, tallied separately
  double seconds = 0;
};

// Execute the plan on cfg.workers threads. A check that throws mid-run is
// recorded as a failed row carrying the error text.
ReportBundle run_config(const RunConfig& cfg);

// Renderings. The text report and the CSV are byte-stable for a given
// config and seed; wall-clock data appears only in the JSON bundle, and
// only when asked for.
std::string render_report(const ReportBundle& b);
std::string render_csv(const ReportBundle& b);
std::string render_json(const ReportBundle& b, bool with_timings);

}  // namespace pmc

#endif
