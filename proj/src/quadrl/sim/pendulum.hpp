#pragma once

#include <utility>

#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/params.hpp"
#include "quadrl/sim/rigid_body.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

// Slung payload modeled as a point mass on a tension-only spring-damper
// tether. Stiffness/damping defaults keep the oscillation period within 2%
// of a rigid pendulum at this scale while staying stable at dt = 0.002 s.
struct PendulumPayload {
  double mass = 0.0047;       // kg
  double tether_length = 0.028;  // m, natural length
  Vec3 attach_offset;         // m, body frame attachment point
  double stiffness = 100.0;   // N/m
  double damping = 0.7;       // N*s/m, radial only
  Vec3 pos;                   // m, world
  Vec3 vel;                   // m/s, world
};

// Payload resting straight below the attachment at static spring stretch.
PendulumPayload pendulum_init_hanging(PendulumPayload payload,
                                      const RigidBodyState& vehicle, double g);

// Advance the payload one substep and return the reaction wrench on the
// vehicle (Mixed frame). Slack tether transmits nothing.
std::pair<PendulumPayload, Wrench> pendulum_step(const PendulumPayload& payload,
                                                 const RigidBodyState& vehicle,
                                                 double g, double dt);

}  // namespace quadrl
