#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "quadrl/sim/wrench.hpp"

namespace quadrl {

// Per-channel affine correction mapping raw estimator output to the
// expected wrench: corrected = slope * raw + offset. Fit from a handful of
// (raw, expected) pairs; channels without usable spread fall back to unit
// slope with an offset-only fit.
struct LinearBridge {
  std::array<double, 6> slope{1, 1, 1, 1, 1, 1};
  std::array<double, 6> offset{0, 0, 0, 0, 0, 0};

  static LinearBridge fit(
      const std::vector<std::pair<std::array<double, 6>, std::array<double, 6>>>&
          samples);  // (raw, expected)

  Wrench apply(const Wrench& raw) const;

  void save(const std::string& path) const;  // 12-number text record
  static LinearBridge load(const std::string& path);
};

// Online altitude thrust-bias integrator. Updated once per control tick:
//   F_bias <- clamp(F_bias + eta * (z_des - z))
// The bias is added to the corrected vertical force channel. With a z-up
// world and the wrench channel carrying the external disturbance, closing
// the loop stably requires eta < 0 (sagging below the reference must push
// the estimate further negative so the policy adds thrust).
struct AltBiasState {
  double f_bias = 0.0;   // N
  double eta = -0.002;   // N per m per tick
  double clamp = 0.05;   // N, symmetric bound

  void update(double z_des, double z);
};

// apply_bridge then add the accumulated bias to the vertical force channel.
Wrench corrected_prediction(const LinearBridge& bridge, const AltBiasState& bias,
                            const Wrench& smoothed_raw);

}  // namespace quadrl
