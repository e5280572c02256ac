#include "quadrl/sim/rigid_body.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

RigidBodyState step_rigid_body(const RigidBodyState& s, const Wrench& total,
                               const PhysicalParams& p, double dt) {
  RigidBodyState n;

  const Vec3 accel = total.force / p.m + Vec3{0.0, 0.0, -p.g};
  n.v = s.v + dt * accel;
  n.p = s.p + dt * n.v;

  // I w_dot = tau - w x (I w)
  const Vec3 iw{p.ixx * s.w.x, p.iyy * s.w.y, p.izz * s.w.z};
  const Vec3 gyro = s.w.cross(iw);
  const Vec3 wdot{(total.torque.x - gyro.x) / p.ixx,
                  (total.torque.y - gyro.y) / p.iyy,
                  (total.torque.z - gyro.z) / p.izz};
  n.w = s.w + dt * wdot;

  n.q = s.q * Quat::from_axis_angle(n.w * dt);
  n.q.normalize();

  if (!n.finite()) throw SimFault("rigid body state became non-finite");
  return n;
}

}  // namespace quadrl
