#pragma once

#include <string>

#include "quadrl/math/rng.hpp"
#include "quadrl/sim/params.hpp"
#include "quadrl/sim/rigid_body.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

enum class DisturbanceMode {
  None,
  ConstantWrench,
  UniformRandom,
  PayloadCentral,
  PayloadOffset,
  Pendulum,
};

std::string to_string(DisturbanceMode m);
DisturbanceMode disturbance_mode_from_string(const std::string& s);

struct DisturbanceSpec {
  DisturbanceMode mode = DisturbanceMode::None;
  double force_range = 0.1;     // N, uniform_random draws U(-r, r) per axis
  double torque_range = 0.001;  // N*m
  Wrench constant;              // constant_wrench mode, Mixed frame
  double payload_fraction = 0.0;
  Vec3 offset_point;            // m, body frame (payload_offset)

  void validate() const;
};

// The random part of a disturbance, drawn once per episode and held constant.
// For payload modes the stored force is the world-frame payload weight; the
// attitude-dependent moment is recomputed per step by realize().
struct DisturbanceRealization {
  Wrench base;  // Mixed frame
};

DisturbanceRealization sample_episode_disturbance(const DisturbanceSpec& spec,
                                                  const PhysicalParams& p, Rng& rng);

// Instantaneous wrench given the stored realization and the current state
// (the offset-payload moment is r x f with f re-expressed in the body frame).
Wrench realize_disturbance(const DisturbanceSpec& spec,
                           const DisturbanceRealization& real,
                           const RigidBodyState& state);

// Convenience composition of the two (per-episode sample semantics).
Wrench disturbance_wrench(const DisturbanceSpec& spec, const PhysicalParams& p,
                          Rng& rng, const RigidBodyState& state);

}  // namespace quadrl
