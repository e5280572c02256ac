#pragma once

#include <string>

#include "quadrl/env/quad_env.hpp"
#include "quadrl/eval/trajectory.hpp"
#include "quadrl/io/config.hpp"
#include "quadrl/rdp/model.hpp"
#include "quadrl/rl/ppo.hpp"
#include "quadrl/rl/train.hpp"

namespace quadrl {

// Everything a run needs, loadable from one sectioned config file. Defaults
// are the desk-scale configuration; the paper-scale values are noted in
// configs/crazyflie.cfg.
struct ExperimentConfig {
  EnvConfig env;
  PpoConfig ppo;
  NetConfig net;
  EarlyStopConfig early_stop;

  RdpTrainConfig rdp;
  int rdp_episodes = 600;
  DisturbanceSpec rdp_family;  // disturbances during dataset collection

  double settle_s = 3.0;
  double hold_s = 5.0;
  double n_periods = 2.0;
  ReferenceTrajectory traj;

  std::string out_root = "runs";
  bool deterministic = false;
  int threads = 0;  // 0 = library default

  // Consumes the recognized keys; call cfg.finish() afterwards to reject
  // unknown ones.
  static ExperimentConfig from_config(Config& cfg);
  static ExperimentConfig load(const std::string& path, Config* echo_out = nullptr);
};

// Applies thread-count and output-root environment overrides
// (QUADRL_THREADS, QUADRL_OUT_ROOT) and the determinism flag.
void apply_runtime_settings(ExperimentConfig& cfg);

}  // namespace quadrl
