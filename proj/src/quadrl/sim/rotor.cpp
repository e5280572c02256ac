#include "quadrl/sim/rotor.hpp"

#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {

void rotor_thrust_torque(const std::array<double, 4>& omega,
                         const PhysicalParams& p,
                         std::array<double, 4>& thrust,
                         std::array<double, 4>& torque) {
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(omega[i])) throw SimFault("rotor speed not finite");
    const double w2 = omega[i] * omega[i];
    thrust[i] = p.k_t * w2;
    torque[i] = p.k_q * w2;
  }
}

RotorState actuator_step(const RotorState& rotor, double dt, double tau_m) {
  const double decay = std::exp(-dt / tau_m);
  RotorState out = rotor;
  for (int i = 0; i < 4; ++i)
    out.omega[i] = rotor.omega_cmd[i] + (rotor.omega[i] - rotor.omega_cmd[i]) * decay;
  return out;
}

std::array<double, 12> torque_matrix(const PhysicalParams& p) {
  const double kt = p.k_t, kq = p.k_q, l1 = p.l1, l2 = p.l2, x0 = p.x0;
  return {
      -kt * (l1 - x0), -kt * (l1 + x0),  kt * (l1 - x0),  kt * (l1 + x0),
       kt * (l2 + x0), -kt * (l2 + x0),  kt * (l2 - x0), -kt * (l2 - x0),
      -kq,              kq,              kq,             -kq,
  };
}

Wrench aero_wrench(const std::array<double, 4>& omega, const PhysicalParams& p) {
  std::array<double, 4> w2;
  for (int i = 0; i < 4; ++i) w2[i] = omega[i] * omega[i];

  const auto m = torque_matrix(p);
  Vec3 tau;
  for (int r = 0; r < 3; ++r) {
    // products stored before summation so symmetric speeds cancel exactly
    // (FMA contraction of a fused multiply-add would break the zero case)
    double t[4];
    for (int c = 0; c < 4; ++c) t[c] = m[4 * r + c] * w2[c];
    tau[r] = ((t[0] + t[1]) + t[2]) + t[3];
  }
  const double fz = p.k_t * (w2[0] + w2[1] + w2[2] + w2[3]);
  return {{0.0, 0.0, fz}, tau, WrenchFrame::Body};
}

double hover_speed(const PhysicalParams& p) {
  const double per_rotor = p.m * p.g / 4.0;
  if (per_rotor < p.f_min || per_rotor > p.f_max)
    throw SimFault("hover infeasible: per-rotor thrust outside bounds");
  return std::sqrt(per_rotor / p.k_t);
}

}  // namespace quadrl
