#pragma once

#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/params.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

struct RigidBodyState {
  Vec3 p;        // m, world
  Quat q;        // body -> world
  Vec3 v;        // m/s, world
  Vec3 w;        // rad/s, body

  bool finite() const {
    return p.finite() && q.finite() && v.finite() && w.finite();
  }
};

// One semi-implicit Euler step of the Newton-Euler equations with diagonal
// inertia. `total` must be Mixed (force world, torque body); gravity is
// applied internally, downward along world -z. Throws SimFault on
// non-finite state.
RigidBodyState step_rigid_body(const RigidBodyState& s, const Wrench& total,
                               const PhysicalParams& p, double dt);

}  // namespace quadrl
