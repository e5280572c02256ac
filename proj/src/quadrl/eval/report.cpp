#include "quadrl/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrl/error.hpp"

namespace quadrl {

namespace {
constexpr const char* kHeader =
    "# quadrl-run-summary v1: scenario controller tier period seed rmse max_err "
    "std_err delay phase crashed samples";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace

std::string RunSummary::to_line() const {
  std::string s = scenario + " " + controller + " " + fmt(tier) + " " + fmt(period) +
                  " " + std::to_string(seed) + " " + fmt(metrics.rmse) + " " +
                  fmt(metrics.max_err) + " " + fmt(metrics.std_err) + " " +
                  (metrics.delay ? fmt(*metrics.delay) : std::string("nan")) + " " +
                  (metrics.phase ? fmt(*metrics.phase) : std::string("nan")) + " " +
                  (metrics.crashed ? "1" : "0") + " " + std::to_string(metrics.samples);
  return s;
}

RunSummary RunSummary::from_line(const std::string& line) {
  std::istringstream in(line);
  RunSummary r;
  std::string delay_s, phase_s;
  int crashed = 0;
  if (!(in >> r.scenario >> r.controller >> r.tier >> r.period >> r.seed >>
        r.metrics.rmse >> r.metrics.max_err >> r.metrics.std_err >> delay_s >>
        phase_s >> crashed >> r.metrics.samples))
    throw IoError("malformed run summary line: " + line);
  if (delay_s != "nan") r.metrics.delay = std::stod(delay_s);
  if (phase_s != "nan") r.metrics.phase = std::stod(phase_s);
  r.metrics.crashed = crashed != 0;
  return r;
}

void save_summaries(const std::vector<RunSummary>& runs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write summary file '" + path + "'");
  out << kHeader << "\n";
  for (const auto& r : runs) out << r.to_line() << "\n";
}

std::vector<RunSummary> load_summaries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open summary file '" + path + "'");
  std::vector<RunSummary> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(RunSummary::from_line(line));
  }
  return out;
}

namespace {

struct CellStat {
  double sum = 0.0;
  int n = 0;
  bool crashed = false;
};

}  // namespace

std::string payload_table(const std::vector<RunSummary>& runs,
                          const std::string& scenario,
                          const std::vector<double>& tiers,
                          const std::vector<std::string>& controllers) {
  std::map<std::string, std::map<int, CellStat>> cells;
  for (const auto& r : runs) {
    if (r.scenario != scenario) continue;
    for (size_t ti = 0; ti < tiers.size(); ++ti) {
      if (std::fabs(r.tier - tiers[ti]) < 1e-9) {
        auto& c = cells[r.controller][static_cast<int>(ti)];
        c.sum += r.metrics.rmse;
        c.n += 1;
        c.crashed = c.crashed || r.metrics.crashed;
      }
    }
  }

  std::string out = "RMSE (m), scenario: " + scenario + "\n";
  char buf[64];
  out += "controller       ";
  for (double t : tiers) {
    std::snprintf(buf, sizeof buf, " %8.1f%%", 100.0 * t);
    out += buf;
  }
  out += "\n";
  for (const auto& ctl : controllers) {
    std::snprintf(buf, sizeof buf, "%-17s", ctl.c_str());
    out += buf;
    for (size_t ti = 0; ti < tiers.size(); ++ti) {
      const auto it = cells.find(ctl);
      const bool have =
          it != cells.end() && it->second.count(static_cast<int>(ti)) > 0;
      if (!have) {
        out += "         x";
      } else {
        const CellStat& c = it->second.at(static_cast<int>(ti));
        std::snprintf(buf, sizeof buf, " %9.3f", c.sum / c.n);
        out += buf;
        if (c.crashed) out += "*";
      }
    }
    out += "\n";
  }
  out += "('x' = configuration not evaluated, '*' = contains a crashed run)\n";
  return out;
}

std::string trajectory_table(const std::vector<RunSummary>& runs,
                             const std::string& controller,
                             const std::vector<double>& periods) {
  std::string out = "slung figure-8 tracking, controller: " + controller + "\n";
  out += "T(s)    RMSE(m)  MaxErr(m)  Std(m)   Delay(s)  Phase(deg)  runs\n";
  char buf[128];
  for (double T : periods) {
    double rmse = 0, maxe = 0, stde = 0, delay = 0, phase = 0;
    int n = 0, nd = 0;
    for (const auto& r : runs) {
      if (r.scenario != "slung-figure8" || r.controller != controller) continue;
      if (std::fabs(r.period - T) > 1e-9) continue;
      rmse += r.metrics.rmse;
      maxe += r.metrics.max_err;
      stde += r.metrics.std_err;
      if (r.metrics.delay) {
        delay += *r.metrics.delay;
        phase += *r.metrics.phase;
        ++nd;
      }
      ++n;
    }
    if (n == 0) {
      std::snprintf(buf, sizeof buf, "%-7.3g x\n", T);
      out += buf;
      continue;
    }
    std::snprintf(buf, sizeof buf, "%-7.3g %-8.3f %-10.3f %-8.3f %-9.3f %-11.1f %d\n",
                  T, rmse / n, maxe / n, stde / n, nd ? delay / nd : 0.0,
                  nd ? phase / nd : 0.0, n);
    out += buf;
  }
  return out;
}

std::string machine_report(const std::vector<RunSummary>& runs) {
  std::string out(kHeader);
  out += "\n";
  for (const auto& r : runs) {
    out += r.to_line();
    out += "\n";
  }
  return out;
}

}  // namespace quadrl
