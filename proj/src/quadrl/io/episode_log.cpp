#include "quadrl/io/episode_log.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrl/error.hpp"

namespace quadrl {

std::vector<EpisodeTick> EpisodeLog::metric_ticks() const {
  std::vector<EpisodeTick> out;
  for (const auto& tk : ticks)
    if (tk.in_metric_window) out.push_back(tk);
  return out;
}

namespace {
constexpr const char* kHeader = "# quadrl-episode-log v1";

void put(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, " %.12g", v);
  line += buf;
}

void put3(std::string& line, const Vec3& v) {
  put(line, v.x);
  put(line, v.y);
  put(line, v.z);
}

void put6(std::string& line, const Wrench& w) {
  put3(line, w.force);
  put3(line, w.torque);
}
}  // namespace

void EpisodeLog::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write episode log '" + path + "'");
  out << kHeader << "\n";
  out << "# scenario " << scenario << "\n";
  out << "# controller " << controller << "\n";
  out << "# seed " << seed << "\n";
  out << "# metric_window_start_s " << metric_window_start << "\n";
  out << "# crashed " << (crashed ? 1 : 0) << "\n";
  out << "# columns: t ref[3] p[3] q[4] v[3] w[3] action[4] pwm[4] "
         "d_true[6] d_raw[6] d_smooth[6] d_corr[6] in_window\n";
  for (const auto& tk : ticks) {
    std::string line;
    put(line, tk.t);
    put3(line, tk.ref);
    put3(line, tk.state.p);
    put(line, tk.state.q.w);
    put(line, tk.state.q.x);
    put(line, tk.state.q.y);
    put(line, tk.state.q.z);
    put3(line, tk.state.v);
    put3(line, tk.state.w);
    put(line, tk.action.thrust);
    put3(line, tk.action.rates);
    for (double p : tk.pwm) put(line, p);
    put6(line, tk.true_wrench);
    put6(line, tk.raw_estimate);
    put6(line, tk.smoothed_estimate);
    put6(line, tk.corrected_estimate);
    line += tk.in_metric_window ? " 1" : " 0";
    out << line.substr(1) << "\n";
  }
}

EpisodeLog EpisodeLog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open episode log '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw IoError("'" + path + "' is not a v1 episode log");

  EpisodeLog log;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "scenario") hs >> log.scenario;
      else if (key == "controller") hs >> log.controller;
      else if (key == "seed") hs >> log.seed;
      else if (key == "metric_window_start_s") hs >> log.metric_window_start;
      else if (key == "crashed") { int c = 0; hs >> c; log.crashed = c != 0; }
      continue;
    }
    std::istringstream ls(line);
    EpisodeTick tk;
    auto rd3 = [&](Vec3& v) { ls >> v.x >> v.y >> v.z; };
    auto rd6 = [&](Wrench& w) { rd3(w.force); rd3(w.torque); };
    ls >> tk.t;
    rd3(tk.ref);
    rd3(tk.state.p);
    ls >> tk.state.q.w >> tk.state.q.x >> tk.state.q.y >> tk.state.q.z;
    rd3(tk.state.v);
    rd3(tk.state.w);
    ls >> tk.action.thrust;
    rd3(tk.action.rates);
    for (auto& p : tk.pwm) ls >> p;
    rd6(tk.true_wrench);
    rd6(tk.raw_estimate);
    rd6(tk.smoothed_estimate);
    rd6(tk.corrected_estimate);
    int inw = 0;
    ls >> inw;
    tk.in_metric_window = inw != 0;
    if (!ls) throw IoError("malformed episode log row in '" + path + "'");
    log.ticks.push_back(tk);
  }
  return log;
}

}  // namespace quadrl
