#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadrl/eval/metrics.hpp"

namespace quadrl {

// One evaluated run, as persisted by `evaluate` and aggregated by `report`.
struct RunSummary {
  std::string scenario;
  std::string controller;
  double tier = 0.0;     // payload fraction (hold scenarios)
  double period = 0.0;   // figure-8 period (slung scenario)
  std::uint64_t seed = 0;
  TrackingMetrics metrics;

  std::string to_line() const;                     // single-line columnar record
  static RunSummary from_line(const std::string&); // throws IoError on malformed input
};

void save_summaries(const std::vector<RunSummary>& runs, const std::string& path);
std::vector<RunSummary> load_summaries(const std::string& path);

// Mean RMSE per (controller, tier) cell for one scenario family; cells with
// no runs render as 'x' (the convention for untested configurations).
std::string payload_table(const std::vector<RunSummary>& runs,
                          const std::string& scenario,
                          const std::vector<double>& tiers,
                          const std::vector<std::string>& controllers);

// Per-period metric rows for the slung figure-8 runs of one controller.
std::string trajectory_table(const std::vector<RunSummary>& runs,
                             const std::string& controller,
                             const std::vector<double>& periods);

// Machine-readable columnar dump of every run.
std::string machine_report(const std::vector<RunSummary>& runs);

}  // namespace quadrl
