#pragma once

#include "quadrl/env/quad_env.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/rl/policy.hpp"

namespace quadrl {

// Deployment-style wrapper around a trained policy checkpoint: deterministic
// mean actions, observation-contract checks against the environment.
class PolicyRunner {
 public:
  explicit PolicyRunner(const Checkpoint& ck);

  OuterAction act(const QuadEnv& env);

  const std::string& variant() const { return variant_; }
  ObsMode obs_mode() const { return obs_mode_; }
  int frame_width() const { return policy_.net_config().frame_width; }

 private:
  GaussianPolicy policy_;
  std::string variant_;
  ObsMode obs_mode_ = ObsMode::Plain;
  Mat x_;
};

}  // namespace quadrl
