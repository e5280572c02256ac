#pragma once

#include <string>

#include "quadrl/bridge/bridge.hpp"
#include "quadrl/env/quad_env.hpp"
#include "quadrl/eval/trajectory.hpp"
#include "quadrl/io/episode_log.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/rdp/model.hpp"

namespace quadrl {

enum class ScenarioKind { PositionHold, CentralPayload, AsymmetricPayload, SlungFigure8 };
enum class ControllerKind { Base, Robust, AdaptiveOracle, AdaptiveRdp };

std::string to_string(ScenarioKind k);
std::string to_string(ControllerKind c);
ScenarioKind scenario_from_string(const std::string& s);
ControllerKind controller_from_string(const std::string& s);

struct Scenario {
  ScenarioKind kind = ScenarioKind::PositionHold;
  ControllerKind controller = ControllerKind::Base;
  double payload_fraction = 0.0;       // central / asymmetric tiers
  Vec3 offset_point{0.028, 0.0, 0.0};  // asymmetric attachment (arm tip)
  ReferenceTrajectory traj;            // figure-8 parameters
  double settle_s = 3.0;               // hover settle excluded from metrics
  double hold_s = 5.0;                 // metric window for hold scenarios
  double n_periods = 2.0;              // figure-8 metric window = n * T
  std::uint64_t seed = 0;

  double metric_period() const {
    return kind == ScenarioKind::SlungFigure8 ? traj.period : 0.0;
  }
  void validate() const;
};

struct ControllerBundle {
  const Checkpoint* policy_ck = nullptr;  // required
  const RdpModel* rdp = nullptr;          // required for AdaptiveRdp
  LinearBridge bridge;                    // identity by default
  AltBiasState alt_bias;                  // f_bias starts at 0
  bool use_alt_bias = true;
};

// Full closed-loop run at 500 Hz physics / 50 Hz control, logging every
// control tick. A crash ends the run; the partial log carries the flag.
EpisodeLog run_scenario(const Scenario& sc, const ControllerBundle& ctl,
                        const EnvConfig& base);

}  // namespace quadrl
