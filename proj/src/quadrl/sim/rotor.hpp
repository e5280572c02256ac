#pragma once

#include <array>

#include "quadrl/sim/params.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

struct RotorState {
  std::array<double, 4> omega{};      // rad/s
  std::array<double, 4> omega_cmd{};  // rad/s
};

// Quadratic rotor model: F = K_T w^2, Q = K_Q w^2. No clamping here;
// thrust bounds are enforced at the command-mapping stage.
void rotor_thrust_torque(const std::array<double, 4>& omega,
                         const PhysicalParams& p,
                         std::array<double, 4>& thrust,
                         std::array<double, 4>& torque);

// Exact exponential discretization of the first-order actuator lag
// dw/dt = (w_cmd - w) / tau_m over one substep.
RotorState actuator_step(const RotorState& rotor, double dt, double tau_m);

// Body-frame aerodynamic wrench: collective thrust along +z plus the 3x4
// squared-speed torque map built from K_T, K_Q, L1, L2 and x0.
Wrench aero_wrench(const std::array<double, 4>& omega, const PhysicalParams& p);

// Torque map as a row-major 3x4 matrix (moments = M * omega^2).
std::array<double, 12> torque_matrix(const PhysicalParams& p);

// Speed at which four rotors balance gravity. Throws SimFault when the
// required per-rotor thrust is outside [f_min, f_max].
double hover_speed(const PhysicalParams& p);

}  // namespace quadrl
