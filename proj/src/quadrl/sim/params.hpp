#pragma once

#include <cmath>

namespace quadrl {

// Physical constants of the modeled vehicle. Defaults are the Crazyflie 2.X
// numbers; the rotor coefficients are chosen so hover sits mid-range of the
// per-rotor thrust bounds at a realistic speed (~1850 rad/s). All of them are
// config-overridable, see configs/crazyflie.cfg.
struct PhysicalParams {
  double m = 0.0315;       // kg
  double ixx = 1.4e-5;     // kg m^2
  double iyy = 1.4e-5;     // kg m^2
  double izz = 2.17e-5;    // kg m^2
  double k_t = 2.25e-8;    // N s^2 / rad^2
  double k_q = 1.35e-10;   // N m s^2 / rad^2
  double l1 = 0.028;       // m, moment arm (x)
  double l2 = 0.028;       // m, moment arm (y)
  double x0 = 0.0;         // m, geometric-center offset from C.G.
  double y0 = 0.0;         // m, defined but absent from the torque map; unused
  double f_min = 0.028;    // N, per-rotor thrust floor
  double f_max = 0.148;    // N, per-rotor thrust ceiling
  double tau_m = 0.03;     // s, actuator time constant
  double g = 9.81;         // m/s^2

  double omega_min() const { return std::sqrt(f_min / k_t); }
  double omega_max() const { return std::sqrt(f_max / k_t); }
  double hover_thrust() const { return m * g; }

  void validate() const;  // throws ConfigError on invariant violation
};

}  // namespace quadrl
