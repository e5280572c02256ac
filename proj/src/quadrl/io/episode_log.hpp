#pragma once

#include <array>
#include <string>
#include <vector>

#include "quadrl/control/action.hpp"
#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/rigid_body.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

// Per-control-tick record of a closed-loop run. All wrenches are Mixed
// frame (force world, torque body).
struct EpisodeTick {
  double t = 0.0;              // s, from run start
  Vec3 ref;                    // reference position
  RigidBodyState state;
  OuterAction action;
  std::array<double, 4> pwm{};
  Wrench true_wrench;
  Wrench raw_estimate;         // rdp output (zero when not estimating)
  Wrench smoothed_estimate;
  Wrench corrected_estimate;   // after bridge + altitude bias
  bool in_metric_window = false;
};

struct EpisodeLog {
  std::string scenario;
  std::string controller;
  std::uint64_t seed = 0;
  double metric_window_start = 0.0;  // s
  bool crashed = false;
  std::vector<EpisodeTick> ticks;

  std::vector<EpisodeTick> metric_ticks() const;

  void save(const std::string& path) const;  // columnar text, versioned header
  static EpisodeLog load(const std::string& path);
};

}  // namespace quadrl
