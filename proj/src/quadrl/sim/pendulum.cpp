#include "quadrl/sim/pendulum.hpp"

namespace quadrl {

PendulumPayload pendulum_init_hanging(PendulumPayload payload,
                                      const RigidBodyState& vehicle, double g) {
  const Vec3 attach = vehicle.p + vehicle.q.rotate(payload.attach_offset);
  const double stretch = payload.mass * g / payload.stiffness;
  payload.pos = attach + Vec3{0.0, 0.0, -(payload.tether_length + stretch)};
  payload.vel = vehicle.v;
  return payload;
}

std::pair<PendulumPayload, Wrench> pendulum_step(const PendulumPayload& payload,
                                                 const RigidBodyState& vehicle,
                                                 double g, double dt) {
  const Vec3 attach = vehicle.p + vehicle.q.rotate(payload.attach_offset);
  const Vec3 attach_vel =
      vehicle.v + vehicle.q.rotate(vehicle.w.cross(payload.attach_offset));

  const Vec3 delta = payload.pos - attach;
  const double dist = delta.norm();

  double tension = 0.0;
  Vec3 dir{0.0, 0.0, -1.0};
  if (dist > payload.tether_length && dist > 1e-12) {
    dir = delta / dist;
    const double stretch = dist - payload.tether_length;
    const double radial_rate = (payload.vel - attach_vel).dot(dir);
    tension = payload.stiffness * stretch + payload.damping * radial_rate;
    if (tension < 0.0) tension = 0.0;  // the tether cannot push
  }

  PendulumPayload next = payload;
  const Vec3 accel = Vec3{0.0, 0.0, -g} - dir * (tension / payload.mass);
  next.vel = payload.vel + dt * accel;
  next.pos = payload.pos + dt * next.vel;

  Wrench on_vehicle;
  on_vehicle.force = dir * tension;  // world frame, pulls toward the payload
  const Vec3 f_body = vehicle.q.rotate_inv(on_vehicle.force);
  on_vehicle.torque = payload.attach_offset.cross(f_body);
  return {next, on_vehicle};
}

}  // namespace quadrl
