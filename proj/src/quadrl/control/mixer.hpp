#pragma once

#include <array>

#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/params.hpp"

namespace quadrl {

struct MotorCommand {
  std::array<double, 4> omega_cmd{};  // rad/s
  std::array<double, 4> pwm{};        // normalized [0, 1]
  bool clamped = false;               // any rotor hit its thrust bound
};

// Normalized duty from commanded speed: (w - w_min) / (w_max - w_min).
std::array<double, 4> pwm_from_command(const std::array<double, 4>& omega_cmd,
                                       const PhysicalParams& p);

// Inverse of the thrust/torque mixing: solves
//   [collective thrust; body moments] = A * omega^2
// for the squared rotor speeds, then clamps each rotor to its thrust bounds.
// The 4x4 system is inverted once at construction; a singular geometry is a
// configuration error.
class MotorMixer {
 public:
  explicit MotorMixer(const PhysicalParams& p);

  MotorCommand mix(double thrust_cmd, const Vec3& torque_cmd) const;

  // Row-major 4x4 forward map, rows [T, tau_x, tau_y, tau_z].
  const std::array<double, 16>& matrix() const { return a_; }

 private:
  PhysicalParams params_;
  std::array<double, 16> a_{};
  std::array<double, 16> ainv_{};
};

}  // namespace quadrl
