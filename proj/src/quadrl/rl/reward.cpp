#include "quadrl/rl/reward.hpp"

namespace quadrl {

double compute_reward(const RigidBodyState& state, const Vec3& ref,
                      const OuterAction& action, const OuterAction& prev_action,
                      bool crashed, const RewardCoeffs& c) {
  const Vec3 perr = state.p - ref;
  const double psi = state.q.yaw();
  const double dthrust = action.thrust - prev_action.thrust;
  const Vec3 drates = action.rates - prev_action.rates;

  double r = c.c_p * perr.norm2() + c.c_psi * psi * psi + c.c_v * state.v.norm2() +
             c.c_w * state.w.norm2() + c.c_t * dthrust * dthrust +
             c.c_dw * drates.norm2() + c.c_s;
  if (crashed) r += c.c_d;
  return r;
}

EpisodeOutcome terminal_check(const RigidBodyState& state, const Vec3& ref,
                              int tick, int max_ticks, double boundary) {
  if ((state.p - ref).inf_norm() > boundary) return EpisodeOutcome::Crashed;
  if (tick >= max_ticks) return EpisodeOutcome::Timeout;
  return EpisodeOutcome::Running;
}

}  // namespace quadrl
