#pragma once

#include <vector>

#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/nn/adam.hpp"
#include "quadrl/rl/policy.hpp"

namespace quadrl {

struct PpoConfig {
  double lr = 1e-3;
  double gamma = 0.99;
  double lambda = 0.95;
  int epochs = 8;
  int minibatches = 4;
  double clip = 0.2;
  double value_clip = 0.2;
  double entropy_coef = 0.0;
  double max_grad_norm = 0.5;
  double kl_target = 0.0;  // > 0: stop the epoch sweep when approx KL exceeds it
  bool advantage_norm = true;
  long total_env_steps = 2000000;  // desk scale; the paper trains far longer
  int num_envs = 128;
  int rollout_steps = 128;
  double log_std_init = -1.2;
  int dr_warmup_iters = 0;  // > 0: disturbance ranges ramp 0 -> 1 over this many iterations
};

// Rectangular rollout storage for n_envs x horizon control steps. Frames are
// stored once per step; stacked windows are reconstructed on demand from the
// per-sample frame age (windows never cross an episode reset).
class RolloutBuffer {
 public:
  RolloutBuffer(int n_envs, int horizon, int frame_width, int depth);

  void begin_iteration();

  int n_envs() const { return n_; }
  int horizon() const { return h_; }
  int samples() const { return n_ * h_; }
  int idx(int env, int t) const { return env * h_ + t; }

  // frame row f_t of an env lives at slot (depth-1 + t); slots 0..depth-2
  // hold the window prefix captured at iteration start.
  double* frame_slot(int env, int slot);
  void set_prefix_from_window(int env, const double* window_flat);

  // Materialize stacked windows for the given sample indices.
  void gather_windows(const std::vector<int>& indices, Mat& x) const;

  // per-sample data, indexed by idx(env, t)
  Mat actions_raw;
  std::vector<double> logp, value, reward, adv, ret, boot_value;
  std::vector<unsigned char> done, trunc;
  std::vector<int> age;             // stack count when the sample's obs was read
  std::vector<double> final_value;  // V(s_H) per env
  double vnorm_mean = 0.0;          // critic normalization in effect
  double vnorm_sigma = 1.0;

  int frame_width() const { return w_; }
  int depth() const { return d_; }

 private:
  int n_, h_, w_, d_;
  std::vector<double> frames_;  // [env][(depth-1)+horizon][width]
};

// Running normalization of value targets with output-preserving rescaling
// of the value head (PopArt style). Keeps the critic's optimization at unit
// scale while returns span hundreds of reward units.
struct ValueNormalizer {
  double mean = 0.0;
  double sigma = 1.0;
  double alpha = 0.1;  // EMA weight for new batches
  bool initialized = false;

  void update(const std::vector<double>& targets, DenseLayer& head);
  double norm(double x) const { return (x - mean) / sigma; }
  double denorm(double v) const { return mean + sigma * v; }
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_frac = 0.0;
  bool aborted = false;  // non-finite loss encountered
};

// Clipped-surrogate PPO update over the buffer: `epochs` passes of
// `minibatches` shuffled splits, Adam step per minibatch. Advantages are
// normalized once per batch. Windows feed the policy with no hidden carry
// across minibatches.
UpdateStats ppo_update(RolloutBuffer& buf, GaussianPolicy& policy, ValueNet& value,
                       AdamOpt& opt_policy, AdamOpt& opt_value,
                       const PpoConfig& cfg, Rng& rng);

}  // namespace quadrl
