#pragma once

#include <array>
#include <vector>

#include "quadrl/control/observation.hpp"

namespace quadrl {

inline constexpr int kRdpFeatureDim = 26;
inline constexpr int kRdpTargetDim = 6;
inline constexpr int kRdpWindow = 64;

// Estimator input: the 18-value kinematic block and previous outer action
// from the (noisy) observation frame, plus the commanded motor PWM. Order:
//   [pos_err 3 | rot 9 | v 3 | w 3 | prev action 4 | pwm 4]
using RdpFeature = std::array<double, kRdpFeatureDim>;

inline RdpFeature build_rdp_feature(const ObservationFrame& frame,
                                    const std::array<double, 4>& pwm) {
  RdpFeature f;
  for (int i = 0; i < kFrameBaseWidth; ++i) f[i] = frame.v[i];
  for (int i = 0; i < 4; ++i) f[kFrameBaseWidth + i] = pwm[i];
  return f;
}

// Per-feature / per-target standardization statistics.
struct NormStats {
  std::array<double, kRdpFeatureDim> f_mean{}, f_std{};
  std::array<double, kRdpTargetDim> t_mean{}, t_std{};

  NormStats() {
    f_std.fill(1.0);
    t_std.fill(1.0);
  }

  static constexpr double kStdFloor = 1e-8;

  void standardize_feature(const RdpFeature& in, double* out) const {
    for (int i = 0; i < kRdpFeatureDim; ++i) out[i] = (in[i] - f_mean[i]) / f_std[i];
  }
  void standardize_target(const std::array<double, kRdpTargetDim>& in, double* out) const {
    for (int i = 0; i < kRdpTargetDim; ++i) out[i] = (in[i] - t_mean[i]) / t_std[i];
  }
  std::array<double, kRdpTargetDim> destandardize_target(const double* in) const {
    std::array<double, kRdpTargetDim> out;
    for (int i = 0; i < kRdpTargetDim; ++i) out[i] = in[i] * t_std[i] + t_mean[i];
    return out;
  }
};

}  // namespace quadrl
