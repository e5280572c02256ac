#pragma once

#include <array>

#include "quadrl/math/vec3.hpp"

namespace quadrl {

// Frame convention for a 6D force/moment pair. The simulator's canonical
// convention for anything applied to the rigid body is Mixed: force in the
// world frame, moment in the body frame. Rotor aerodynamics are produced in
// the body frame and rotated by the caller.
enum class WrenchFrame { Body, World, Mixed };

struct Wrench {
  Vec3 force;   // N
  Vec3 torque;  // N*m
  WrenchFrame frame = WrenchFrame::Mixed;

  Wrench() = default;
  Wrench(const Vec3& f, const Vec3& tau, WrenchFrame fr = WrenchFrame::Mixed)
      : force(f), torque(tau), frame(fr) {}

  Wrench operator+(const Wrench& o) const {
    return {force + o.force, torque + o.torque, frame};
  }
  Wrench& operator+=(const Wrench& o) {
    force += o.force;
    torque += o.torque;
    return *this;
  }
  bool finite() const { return force.finite() && torque.finite(); }

  double operator[](int i) const { return i < 3 ? force[i] : torque[i - 3]; }
  void set(int i, double v) {
    if (i < 3) force[i] = v; else torque[i - 3] = v;
  }
  std::array<double, 6> flat() const {
    return {force.x, force.y, force.z, torque.x, torque.y, torque.z};
  }
  static Wrench from_flat(const std::array<double, 6>& a,
                          WrenchFrame fr = WrenchFrame::Mixed) {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}, fr};
  }
};

}  // namespace quadrl
