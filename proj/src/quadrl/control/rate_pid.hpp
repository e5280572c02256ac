#pragma once

#include "quadrl/control/action.hpp"
#include "quadrl/math/vec3.hpp"

namespace quadrl {

// Inner-loop body-rate PID. Default gains are tuned against the default
// vehicle so a rate step settles within 5 tau_m with modest overshoot.
struct RatePidGains {
  Vec3 kp{3.5e-4, 3.5e-4, 6.0e-4};   // N*m per rad/s
  Vec3 ki{0.0, 0.0, 0.0};            // N*m per rad
  Vec3 kd{4.0e-6, 4.0e-6, 0.0};      // N*m per rad/s^2
  Vec3 i_limit{2.0e-3, 2.0e-3, 6.0e-4};   // integrator clamp, N*m
  Vec3 out_limit{4.0e-3, 4.0e-3, 8.0e-4}; // torque command clamp, N*m
};

struct RatePidState {
  Vec3 integ;
  Vec3 prev_meas;
  bool has_prev = false;

  void reset() { integ = {}; prev_meas = {}; has_prev = false; }
};

// One 500 Hz update: PID on (commanded - measured) body rates, producing a
// body torque command. Integrator and output are clamped per axis.
Vec3 rate_pid_step(const Vec3& w, const OuterAction& action,
                   const RatePidGains& gains, RatePidState& state, double dt);

}  // namespace quadrl
