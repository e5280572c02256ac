#pragma once

#include <cmath>

#include "quadrl/math/vec3.hpp"

namespace quadrl {

// Planar figure-8 (Lissajous) reference at constant altitude.
struct ReferenceTrajectory {
  double a = 0.4;      // m, x amplitude
  double b = 0.2;      // m, y amplitude
  double period = 10.0;  // s
  double z_ref = 0.5;  // m
};

inline Vec3 lissajous(double t, const ReferenceTrajectory& traj) {
  constexpr double kTwoPi = 6.283185307179586477;
  return {traj.a * std::cos(kTwoPi * t / traj.period),
          traj.b * std::sin(2.0 * kTwoPi * t / traj.period), traj.z_ref};
}

}  // namespace quadrl
