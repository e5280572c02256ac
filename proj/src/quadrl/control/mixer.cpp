#include "quadrl/control/mixer.hpp"

#include <cmath>

#include "quadrl/error.hpp"
#include "quadrl/sim/rotor.hpp"

namespace quadrl {

std::array<double, 4> pwm_from_command(const std::array<double, 4>& omega_cmd,
                                       const PhysicalParams& p) {
  const double lo = p.omega_min(), hi = p.omega_max();
  std::array<double, 4> pwm;
  for (int i = 0; i < 4; ++i) pwm[i] = (omega_cmd[i] - lo) / (hi - lo);
  return pwm;
}

namespace {

// Gauss-Jordan inverse with partial pivoting.
std::array<double, 16> invert4(const std::array<double, 16>& a) {
  double m[4][8];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      m[r][c] = a[4 * r + c];
      m[r][4 + c] = (r == c) ? 1.0 : 0.0;
    }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (std::fabs(m[piv][col]) < 1e-18)
      throw ConfigError("mixer matrix is singular (degenerate geometry)");
    if (piv != col)
      for (int c = 0; c < 8; ++c) std::swap(m[piv][c], m[col][c]);
    const double d = m[col][col];
    for (int c = 0; c < 8; ++c) m[col][c] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (int c = 0; c < 8; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<double, 16> inv;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) inv[4 * r + c] = m[r][4 + c];
  return inv;
}

}  // namespace

MotorMixer::MotorMixer(const PhysicalParams& p) : params_(p) {
  const auto tm = torque_matrix(p);
  for (int c = 0; c < 4; ++c) a_[c] = p.k_t;           // collective thrust row
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) a_[4 * (r + 1) + c] = tm[4 * r + c];
  ainv_ = invert4(a_);
}

MotorCommand MotorMixer::mix(double thrust_cmd, const Vec3& torque_cmd) const {
  if (!std::isfinite(thrust_cmd) || !torque_cmd.finite())
    throw SimFault("non-finite mixer command");

  const double rhs[4] = {thrust_cmd, torque_cmd.x, torque_cmd.y, torque_cmd.z};
  const double w2min = params_.f_min / params_.k_t;
  const double w2max = params_.f_max / params_.k_t;

  double s[4];
  for (int i = 0; i < 4; ++i) {
    s[i] = 0.0;
    for (int j = 0; j < 4; ++j) s[i] += ainv_[4 * i + j] * rhs[j];
  }
  // one iterative-refinement step; the rows of A span two orders of
  // magnitude, so the plain inverse leaves ~1e-10 relative residual
  double resid[4];
  for (int i = 0; i < 4; ++i) {
    double as = 0.0;
    for (int j = 0; j < 4; ++j) as += a_[4 * i + j] * s[j];
    resid[i] = rhs[i] - as;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s[i] += ainv_[4 * i + j] * resid[j];

  MotorCommand out;
  for (int i = 0; i < 4; ++i) {
    double si = s[i];
    if (si < w2min) { si = w2min; out.clamped = true; }
    if (si > w2max) { si = w2max; out.clamped = true; }
    out.omega_cmd[i] = std::sqrt(si);
  }
  out.pwm = pwm_from_command(out.omega_cmd, params_);
  return out;
}

}  // namespace quadrl
