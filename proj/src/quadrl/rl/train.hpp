#pragma once

#include <string>
#include <vector>

#include "quadrl/env/vec_env.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/rl/policy.hpp"
#include "quadrl/rl/ppo.hpp"

namespace quadrl {

enum class TrainingVariant { Base, Robust, OracleAdaptive };

std::string to_string(TrainingVariant v);
TrainingVariant variant_from_string(const std::string& s);

// Applies the variant's disturbance family and observation contract:
// Base trains clean, Robust under domain randomization, OracleAdaptive under
// the same randomization with the true wrench appended to every frame.
EnvConfig variant_env(TrainingVariant v, EnvConfig base);

struct EarlyStopConfig {
  bool enabled = true;
  double survival = 0.97;      // fraction of the full episode length
  double mean_return = 880.0;
  int patience = 6;            // consecutive qualifying iterations
};

struct IterStats {
  int iter = 0;
  long env_steps = 0;
  int episodes = 0;
  double mean_return = 0.0;
  double mean_ep_len = 0.0;
  double survival = 0.0;
  double rms_pos = 0.0;        // rollout-wide rms position error (includes spawns)
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_frac = 0.0;
};

struct TrainResult {
  Checkpoint checkpoint;       // policy + value + metadata
  std::vector<IterStats> curve;
  bool aborted = false;
  std::string abort_reason;
  long env_steps = 0;
};

// PPO training of one variant over vectorized environments. When `run_dir`
// is non-empty, per-iteration metrics and checkpoints are written there.
// `verbose` prints one line per iteration to stdout.
TrainResult train_variant(TrainingVariant v, const EnvConfig& env_base,
                          const PpoConfig& ppo, NetConfig net,
                          const EarlyStopConfig& early_stop, std::uint64_t seed,
                          const std::string& run_dir = "", bool verbose = false,
                          int checkpoint_every = 0);

Checkpoint make_policy_checkpoint(const GaussianPolicy& policy, const ValueNet& value,
                                  TrainingVariant v, const EnvConfig& env, long steps);

std::string format_curve_table(const std::vector<IterStats>& curve);

}  // namespace quadrl
