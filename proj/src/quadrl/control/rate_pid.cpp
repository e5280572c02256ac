#include "quadrl/control/rate_pid.hpp"

#include <algorithm>

namespace quadrl {

namespace {
double clamp_abs(double v, double lim) { return std::clamp(v, -lim, lim); }
}

Vec3 rate_pid_step(const Vec3& w, const OuterAction& action,
                   const RatePidGains& gains, RatePidState& state, double dt) {
  const Vec3 err = action.rates - w;
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    state.integ[i] = clamp_abs(state.integ[i] + gains.ki[i] * err[i] * dt,
                               gains.i_limit[i]);
    // derivative on the measurement, not the error: no setpoint kick
    const double deriv = state.has_prev ? -(w[i] - state.prev_meas[i]) / dt : 0.0;
    out[i] = clamp_abs(gains.kp[i] * err[i] + state.integ[i] + gains.kd[i] * deriv,
                       gains.out_limit[i]);
  }
  state.prev_meas = w;
  state.has_prev = true;
  return out;
}

}  // namespace quadrl
