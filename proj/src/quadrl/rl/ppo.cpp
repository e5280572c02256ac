#include "quadrl/rl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "quadrl/error.hpp"
#include "quadrl/nn/gaussian.hpp"

namespace quadrl {

RolloutBuffer::RolloutBuffer(int n_envs, int horizon, int frame_width, int depth)
    : actions_raw(n_envs * horizon, 4),
      n_(n_envs), h_(horizon), w_(frame_width), d_(depth) {
  const size_t rows = static_cast<size_t>(n_) * (d_ - 1 + h_);
  frames_.assign(rows * w_, 0.0);
  const int s = samples();
  logp.assign(s, 0.0);
  value.assign(s, 0.0);
  reward.assign(s, 0.0);
  adv.assign(s, 0.0);
  ret.assign(s, 0.0);
  boot_value.assign(s, 0.0);
  done.assign(s, 0);
  trunc.assign(s, 0);
  age.assign(s, 0);
  final_value.assign(n_, 0.0);
}

void RolloutBuffer::begin_iteration() {
  std::fill(done.begin(), done.end(), 0);
  std::fill(trunc.begin(), trunc.end(), 0);
  std::fill(boot_value.begin(), boot_value.end(), 0.0);
}

double* RolloutBuffer::frame_slot(int env, int slot) {
  return frames_.data() +
         (static_cast<size_t>(env) * (d_ - 1 + h_) + slot) * w_;
}

void RolloutBuffer::set_prefix_from_window(int env, const double* window_flat) {
  // window rows 0..depth-1 are frames f_{-(depth-1)}..f_0 -> slots 0..depth-1
  std::memcpy(frame_slot(env, 0), window_flat,
              sizeof(double) * static_cast<size_t>(d_) * w_);
}

void RolloutBuffer::gather_windows(const std::vector<int>& indices, Mat& x) const {
  const int dim = d_ * w_;
  if (x.rows != static_cast<int>(indices.size()) || x.cols != dim)
    x = Mat(static_cast<int>(indices.size()), dim);
  for (size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    const int env = i / h_;
    const int t = i % h_;
    const int a = age[i];
    double* row = x.row(static_cast<int>(k));
    std::memset(row, 0, sizeof(double) * static_cast<size_t>(d_ - a) * w_);
    // frames f_{t-a+1}..f_t live at slots (d-1)+t-a+1 .. (d-1)+t
    const double* src =
        frames_.data() +
        (static_cast<size_t>(env) * (d_ - 1 + h_) + (d_ - 1 + t - a + 1)) * w_;
    std::memcpy(row + static_cast<size_t>(d_ - a) * w_, src,
                sizeof(double) * static_cast<size_t>(a) * w_);
  }
}

void ValueNormalizer::update(const std::vector<double>& targets, DenseLayer& head) {
  double m = 0.0;
  for (double t : targets) m += t;
  m /= targets.size();
  double var = 0.0;
  for (double t : targets) var += (t - m) * (t - m);
  double s = std::max(std::sqrt(var / targets.size()), 1e-4);

  const double nm = initialized ? (1.0 - alpha) * mean + alpha * m : m;
  const double ns = initialized ? std::max((1.0 - alpha) * sigma + alpha * s, 1e-4) : s;

  // rescale the head so denormalized outputs are unchanged
  for (auto& w : head.w.d) w *= sigma / ns;
  for (auto& b : head.b.d) b = (b * sigma + mean - nm) / ns;
  mean = nm;
  sigma = ns;
  initialized = true;
}

UpdateStats ppo_update(RolloutBuffer& buf, GaussianPolicy& policy, ValueNet& value,
                       AdamOpt& opt_policy, AdamOpt& opt_value,
                       const PpoConfig& cfg, Rng& rng) {
  UpdateStats stats;
  const int n = buf.samples();

  // advantage normalization, once per batch
  if (cfg.advantage_norm) {
    double mean = 0.0;
    for (double a : buf.adv) mean += a;
    mean /= n;
    double var = 0.0;
    for (double a : buf.adv) var += (a - mean) * (a - mean);
    const double sd = std::sqrt(var / n) + 1e-8;
    for (double& a : buf.adv) a = (a - mean) / sd;
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;

  const int mb_count = std::max(1, cfg.minibatches);
  Mat x;
  long updates = 0;
  double sum_pl = 0, sum_vl = 0, sum_kl = 0, sum_clip = 0;
  bool kl_stop = false;

  for (int epoch = 0; epoch < cfg.epochs && !kl_stop; ++epoch) {
    // Fisher-Yates with the training stream
    for (int i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_int(i + 1)]);

    for (int mb = 0; mb < mb_count; ++mb) {
      const int lo = static_cast<int>(static_cast<long>(n) * mb / mb_count);
      const int hi = static_cast<int>(static_cast<long>(n) * (mb + 1) / mb_count);
      const int m = hi - lo;
      if (m <= 0) continue;
      std::vector<int> idx(order.begin() + lo, order.begin() + hi);

      buf.gather_windows(idx, x);
      Mat araw(m, 4);
      for (int k = 0; k < m; ++k)
        std::memcpy(araw.row(k), buf.actions_raw.row(idx[k]), 4 * sizeof(double));

      // ---- policy ----
      const Mat mean = policy.mean(x, /*cache=*/true);
      const auto log_std = policy.log_std();
      const auto lp_new = diag_gaussian::log_prob(mean, log_std, araw);

      std::vector<double> scale(m, 0.0);
      double pl = 0.0, kl = 0.0, clipped = 0.0;
      for (int k = 0; k < m; ++k) {
        const double a = buf.adv[idx[k]];
        const double ratio = std::exp(lp_new[k] - buf.logp[idx[k]]);
        const double rc = std::clamp(ratio, 1.0 - cfg.clip, 1.0 + cfg.clip);
        const double unclipped = ratio * a;
        const double clip_val = rc * a;
        pl -= std::min(unclipped, clip_val) / m;
        if (unclipped <= clip_val) scale[k] = a * ratio / m;  // d(-loss)/d logp
        if (std::fabs(ratio - 1.0) > cfg.clip) clipped += 1.0;
        kl += (buf.logp[idx[k]] - lp_new[k]) / m;
      }
      if (!std::isfinite(pl)) {
        stats.aborted = true;
        return stats;
      }

      policy.zero_grad();
      std::vector<double> dls(4, 0.0);
      // minimizing: d loss / d mean = -scale * dlogp/dmean
      std::vector<double> neg_scale(m);
      for (int k = 0; k < m; ++k) neg_scale[k] = -scale[k];
      const Mat dmean =
          diag_gaussian::dlogp_dmean(mean, log_std, araw, neg_scale, dls);
      if (cfg.entropy_coef != 0.0)
        for (auto& g : dls) g -= cfg.entropy_coef;
      policy.backward(dmean);
      policy.add_log_std_grad(dls);
      opt_policy.clip_grad_norm(cfg.max_grad_norm);
      opt_policy.step();

      // ---- value (losses and clipping in normalized space) ----
      const auto v = value.forward(x, /*cache=*/true);
      std::vector<double> dv(m, 0.0);
      double vl = 0.0;
      for (int k = 0; k < m; ++k) {
        const double target = (buf.ret[idx[k]] - buf.vnorm_mean) / buf.vnorm_sigma;
        const double vold = (buf.value[idx[k]] - buf.vnorm_mean) / buf.vnorm_sigma;
        const double dvk = v[k] - vold;
        const double vclip = vold + std::clamp(dvk, -cfg.value_clip, cfg.value_clip);
        const double lu = (v[k] - target) * (v[k] - target);
        const double lc = (vclip - target) * (vclip - target);
        if (lu >= lc) {
          vl += lu / m;
          dv[k] = 2.0 * (v[k] - target) / m;
        } else {
          vl += lc / m;
          dv[k] = (std::fabs(dvk) < cfg.value_clip) ? 2.0 * (vclip - target) / m : 0.0;
        }
      }
      if (!std::isfinite(vl)) {
        stats.aborted = true;
        return stats;
      }
      value.zero_grad();
      value.backward(dv);
      opt_value.clip_grad_norm(cfg.max_grad_norm);
      opt_value.step();

      sum_pl += pl;
      sum_vl += vl;
      sum_kl += kl;
      sum_clip += clipped / m;
      ++updates;
      if (cfg.kl_target > 0.0 && kl > cfg.kl_target) {
        kl_stop = true;
        break;
      }
    }
  }

  stats.policy_loss = sum_pl / updates;
  stats.value_loss = sum_vl / updates;
  stats.approx_kl = sum_kl / updates;
  stats.clip_frac = sum_clip / updates;
  stats.entropy = diag_gaussian::entropy(policy.log_std());
  return stats;
}

}  // namespace quadrl
