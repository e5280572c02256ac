#pragma once

#include <array>
#include <cmath>

#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/params.hpp"

namespace quadrl {

// Outer-loop command: collective thrust plus desired body rates.
struct OuterAction {
  double thrust = 0.0;  // N
  Vec3 rates;           // rad/s

  std::array<double, 4> flat() const { return {thrust, rates.x, rates.y, rates.z}; }
};

struct ActionConfig {
  double rate_max = 6.0;  // rad/s, symmetric saturation on every axis
};

// Fixed affine+tanh map from raw network outputs to bounded physical
// commands: thrust spans [4 f_min, 4 f_max], rates span +-rate_max.
struct ActionSquash {
  double thrust_mid = 0.0, thrust_half = 0.0, rate_max = 6.0;

  ActionSquash() = default;
  ActionSquash(const PhysicalParams& p, const ActionConfig& a)
      : thrust_mid(2.0 * (p.f_min + p.f_max)),
        thrust_half(2.0 * (p.f_max - p.f_min)),
        rate_max(a.rate_max) {}

  OuterAction apply(const double raw[4]) const {
    OuterAction out;
    out.thrust = thrust_mid + thrust_half * std::tanh(raw[0]);
    out.rates = {rate_max * std::tanh(raw[1]), rate_max * std::tanh(raw[2]),
                 rate_max * std::tanh(raw[3])};
    return out;
  }
};

}  // namespace quadrl
