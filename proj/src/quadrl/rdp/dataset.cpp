#include "quadrl/rdp/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrl/error.hpp"
#include "quadrl/rl/runner.hpp"

namespace quadrl {

long RdpDataset::total_ticks() const {
  long n = 0;
  for (const auto& e : episodes) n += static_cast<long>(e.features.size());
  return n;
}

namespace {
constexpr const char* kHeader = "# quadrl-rdp-dataset v1";
}

void RdpDataset::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset '" + path + "'");
  out << kHeader << "\n";
  out << "# feature_order: pos_err[3](m) rot[9] vel[3](m/s) angvel[3](rad/s) "
         "prev_action[4](N,rad/s) pwm[4]\n";
  out << "# target_order: force[3](N) torque[3](N*m), force world frame, "
         "torque body frame\n";
  out << "episodes " << episodes.size() << "\n";
  char buf[32];
  for (const auto& e : episodes) {
    out << "episode seed " << e.seed << " mode " << e.mode << " crashed "
        << (e.crashed ? 1 : 0) << " ticks " << e.features.size() << "\n";
    for (size_t t = 0; t < e.features.size(); ++t) {
      for (int i = 0; i < kRdpFeatureDim; ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", e.features[t][i]);
        out << buf << (i + 1 < kRdpFeatureDim ? ' ' : ' ');
      }
      for (int i = 0; i < kRdpTargetDim; ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", e.targets[t][i]);
        out << buf << (i + 1 < kRdpTargetDim ? ' ' : '\n');
      }
    }
  }
}

RdpDataset RdpDataset::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw IoError("'" + path + "' is not a v1 rdp dataset");

  RdpDataset ds;
  size_t n_episodes = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "episodes") {
      ls >> n_episodes;
      ds.episodes.reserve(n_episodes);
    } else if (tok == "episode") {
      RdpEpisode ep;
      std::string kw;
      size_t ticks = 0;
      int crashed = 0;
      ls >> kw >> ep.seed >> kw >> ep.mode >> kw >> crashed >> kw >> ticks;
      ep.crashed = crashed != 0;
      ep.features.resize(ticks);
      ep.targets.resize(ticks);
      for (size_t t = 0; t < ticks; ++t) {
        if (!std::getline(in, line)) throw IoError("dataset truncated");
        std::istringstream row(line);
        for (int i = 0; i < kRdpFeatureDim; ++i)
          if (!(row >> ep.features[t][i])) throw IoError("dataset row malformed");
        for (int i = 0; i < kRdpTargetDim; ++i)
          if (!(row >> ep.targets[t][i])) throw IoError("dataset row malformed");
      }
      ds.episodes.push_back(std::move(ep));
    } else {
      throw IoError("unexpected dataset line: " + line);
    }
  }
  if (ds.episodes.size() != n_episodes)
    throw IoError("dataset episode count mismatch");
  return ds;
}

RdpDataset collect_rdp_dataset(const Checkpoint& oracle_ck, const EnvConfig& env_base,
                               int n_episodes, const DisturbanceSpec& family,
                               std::uint64_t seed, bool parallel) {
  EnvConfig env = env_base;
  env.disturbance = family;
  env.obs_mode = ObsMode::WithWrench;
  env.wrench_source = WrenchSource::TrueOracle;
  env.validate();

  RdpDataset ds;
  ds.episodes.resize(n_episodes);
  const int max_ticks = env.max_ticks();

  auto run_episode = [&](int i) {
    PolicyRunner runner(oracle_ck);  // private instance per episode
    QuadEnv qe(env, Rng::derive(seed, i).next_u64());
    RdpEpisode& ep = ds.episodes[i];
    ep.seed = seed + i;
    ep.mode = to_string(family.mode);
    ep.features.reserve(max_ticks);
    ep.targets.reserve(max_ticks);
    while (true) {
      ep.features.push_back(build_rdp_feature(qe.noisy_frame(), qe.pwm()));
      ep.targets.push_back(qe.true_disturbance().flat());
      const OuterAction a = runner.act(qe);
      const auto out = qe.step(a);
      if (out.crashed) {
        ep.crashed = true;
        break;
      }
      if (out.timeout) break;
    }
  };

  if (parallel && threads::num() > 1) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_episodes; ++i) run_episode(i);
  } else {
    for (int i = 0; i < n_episodes; ++i) run_episode(i);
  }
  return ds;
}

}  // namespace quadrl
