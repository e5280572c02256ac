#include "quadrl/rl/runner.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

PolicyRunner::PolicyRunner(const Checkpoint& ck)
    : policy_(GaussianPolicy::load(ck)),
      variant_(ck.meta_at("variant")),
      obs_mode_(ck.meta_at("obs_mode") == "wrench" ? ObsMode::WithWrench
                                                   : ObsMode::Plain) {}

OuterAction PolicyRunner::act(const QuadEnv& env) {
  if (env.frame_width() != frame_width())
    throw ConfigError("policy expects frame width " + std::to_string(frame_width()) +
                      " but the environment provides " +
                      std::to_string(env.frame_width()));
  if (x_.rows != 1 || x_.cols != env.obs_dim()) x_ = Mat(1, env.obs_dim());
  env.obs_flat(x_.row(0));
  const Mat mean = policy_.mean(x_, /*cache=*/false);
  return env.squash().apply(mean.row(0));
}

}  // namespace quadrl
