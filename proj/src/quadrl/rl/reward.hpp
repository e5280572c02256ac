#pragma once

#include "quadrl/control/action.hpp"
#include "quadrl/math/vec3.hpp"
#include "quadrl/sim/rigid_body.hpp"

namespace quadrl {

// Hover reward coefficients. Penalties are on squared magnitudes; the
// survival bonus is granted every live step and the crash penalty once.
struct RewardCoeffs {
  double c_p = -30.0;    // position error
  double c_psi = -2.0;   // yaw angle (ZYX convention)
  double c_v = -3.0;     // linear velocity
  double c_w = -0.5;     // angular velocity
  double c_t = -1.0;     // collective-thrust delta
  double c_dw = -0.5;    // rate-command delta
  double c_s = 4.0;      // survival bonus
  double c_d = -100.0;   // crash penalty
  double boundary = 0.6; // m, crash box half-width around the reference
};

double compute_reward(const RigidBodyState& state, const Vec3& ref,
                      const OuterAction& action, const OuterAction& prev_action,
                      bool crashed, const RewardCoeffs& c);

enum class EpisodeOutcome { Running, Crashed, Timeout };

// Crash on infinity-norm position error above the boundary; timeout when the
// tick count reaches the episode length.
EpisodeOutcome terminal_check(const RigidBodyState& state, const Vec3& ref,
                              int tick, int max_ticks, double boundary);

}  // namespace quadrl
