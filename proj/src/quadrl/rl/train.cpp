#include "quadrl/rl/train.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "quadrl/error.hpp"
#include "quadrl/nn/gaussian.hpp"
#include "quadrl/rl/gae.hpp"

namespace quadrl {

std::string to_string(TrainingVariant v) {
  switch (v) {
    case TrainingVariant::Base: return "base";
    case TrainingVariant::Robust: return "robust";
    case TrainingVariant::OracleAdaptive: return "oracle-adaptive";
  }
  return "base";
}

TrainingVariant variant_from_string(const std::string& s) {
  if (s == "base") return TrainingVariant::Base;
  if (s == "robust") return TrainingVariant::Robust;
  if (s == "oracle-adaptive" || s == "oracle_adaptive") return TrainingVariant::OracleAdaptive;
  throw ConfigError("unknown training variant '" + s + "'");
}

EnvConfig variant_env(TrainingVariant v, EnvConfig base) {
  switch (v) {
    case TrainingVariant::Base:
      base.disturbance.mode = DisturbanceMode::None;
      base.obs_mode = ObsMode::Plain;
      base.wrench_source = WrenchSource::None;
      break;
    case TrainingVariant::Robust:
      base.disturbance.mode = DisturbanceMode::UniformRandom;
      base.obs_mode = ObsMode::Plain;
      base.wrench_source = WrenchSource::None;
      break;
    case TrainingVariant::OracleAdaptive:
      base.disturbance.mode = DisturbanceMode::UniformRandom;
      base.obs_mode = ObsMode::WithWrench;
      base.wrench_source = WrenchSource::TrueOracle;
      break;
  }
  return base;
}

Checkpoint make_policy_checkpoint(const GaussianPolicy& policy, const ValueNet& value,
                                  TrainingVariant v, const EnvConfig& env, long steps) {
  Checkpoint ck;
  ck.meta["kind"] = "policy";
  ck.meta["variant"] = to_string(v);
  ck.meta["obs_mode"] = env.obs_mode == ObsMode::Plain ? "plain" : "wrench";
  ck.meta["frame_width"] = std::to_string(env.frame_width());
  ck.meta["wrench_scale.force"] = std::to_string(env.wrench_scale.force);
  ck.meta["wrench_scale.torque"] = std::to_string(env.wrench_scale.torque);
  ck.meta["action.rate_max"] = std::to_string(env.action.rate_max);
  ck.meta["env_steps"] = std::to_string(steps);
  policy.save(ck);
  value.save(ck);
  return ck;
}

namespace {

struct EpisodeTracker {
  std::vector<double> ret;
  std::vector<int> len;
  explicit EpisodeTracker(int n) : ret(n, 0.0), len(n, 0) {}
};

std::vector<double> snapshot(std::vector<ParamRef> refs) {
  std::vector<double> out;
  for (auto& r : refs) out.insert(out.end(), r.value->d.begin(), r.value->d.end());
  return out;
}

void restore(std::vector<ParamRef> refs, const std::vector<double>& snap) {
  size_t pos = 0;
  for (auto& r : refs) {
    std::copy(snap.begin() + pos, snap.begin() + pos + r.value->size(),
              r.value->d.begin());
    pos += r.value->size();
  }
}

}  // namespace

std::string format_curve_table(const std::vector<IterStats>& curve) {
  std::string out =
      "# iter env_steps episodes mean_return mean_ep_len survival rms_pos "
      "policy_loss value_loss entropy approx_kl clip_frac\n";
  char buf[320];
  for (const auto& s : curve) {
    std::snprintf(buf, sizeof buf,
                  "%d %ld %d %.6g %.6g %.6g %.6g %.6g %.6g %.6g %.6g %.6g\n",
                  s.iter, s.env_steps, s.episodes, s.mean_return, s.mean_ep_len,
                  s.survival, s.rms_pos, s.policy_loss, s.value_loss, s.entropy,
                  s.approx_kl, s.clip_frac);
    out += buf;
  }
  return out;
}

TrainResult train_variant(TrainingVariant v, const EnvConfig& env_base,
                          const PpoConfig& ppo, NetConfig net,
                          const EarlyStopConfig& early_stop, std::uint64_t seed,
                          const std::string& run_dir, bool verbose,
                          int checkpoint_every) {
  const EnvConfig env = variant_env(v, env_base);
  env.validate();
  net.frame_width = env.frame_width();
  net.stack = kStackDepth;

  Rng init_rng = Rng::derive(seed, 1);
  Rng rollout_rng = Rng::derive(seed, 2);
  Rng update_rng = Rng::derive(seed, 3);

  VecEnv venv(env, ppo.num_envs, Rng::derive(seed, 4).next_u64());
  // seed the raw thrust output at exact hover so early episodes survive
  const ActionSquash sq(env.phys, env.action);
  const double hover_raw =
      std::atanh(std::clamp((env.phys.hover_thrust() - sq.thrust_mid) / sq.thrust_half,
                            -0.999, 0.999));
  GaussianPolicy policy(net, 4, ppo.log_std_init, init_rng, {hover_raw, 0, 0, 0});
  ValueNet value(net, init_rng);

  AdamOpt opt_policy({ppo.lr}), opt_value({ppo.lr});
  opt_policy.add_params(policy.params());
  opt_value.add_params(value.params());

  const int n = ppo.num_envs, h = ppo.rollout_steps;
  RolloutBuffer buf(n, h, env.frame_width(), kStackDepth);
  EpisodeTracker tracker(n);
  ValueNormalizer vnorm;

  const long iters =
      std::max(1L, (ppo.total_env_steps + static_cast<long>(n) * h - 1) /
                       (static_cast<long>(n) * h));

  TrainResult result;
  Mat x(n, venv.obs_dim());
  std::vector<OuterAction> actions(n);
  std::vector<QuadEnv::StepOut> outs(n);
  std::vector<double> window(venv.obs_dim());
  int streak = 0;
  double dr_scale = ppo.dr_warmup_iters > 0 ? 0.0 : 1.0;
  double last_survival = 0.0;
  int iters_since_ramp = 0;

  for (long iter = 0; iter < iters; ++iter) {
    if (ppo.dr_warmup_iters > 0 && dr_scale < 1.0) {
      // performance-gated disturbance ramp: grow once flight is stable, but
      // never stall more than a handful of iterations at one level
      if (iter > 0 && (last_survival >= 0.90 || iters_since_ramp >= 6)) {
        dr_scale = std::min(1.0, dr_scale + 1.0 / ppo.dr_warmup_iters);
        iters_since_ramp = 0;
      } else if (iter > 0) {
        ++iters_since_ramp;
      }
      for (int e = 0; e < n; ++e) venv.env(e).set_disturbance_scale(dr_scale);
    }

    // ---- collect ----
    buf.begin_iteration();
    for (int e = 0; e < n; ++e) {
      venv.env(e).obs_flat(window.data());
      buf.set_prefix_from_window(e, window.data());
    }

    int episodes = 0;
    double ep_ret_sum = 0.0, ep_len_sum = 0.0, pos_sq_sum = 0.0;
    struct Boot { int env, t; std::vector<double> obs; };
    std::vector<Boot> boots;

    for (int t = 0; t < h; ++t) {
      venv.obs_matrix(x);
      const Mat mean = policy.mean(x, /*cache=*/false);
      const auto log_std = policy.log_std();
      const Mat araw = diag_gaussian::sample(mean, log_std, rollout_rng);
      const auto lp = diag_gaussian::log_prob(mean, log_std, araw);
      auto vals = value.forward(x, /*cache=*/false);
      for (auto& vv : vals) vv = vnorm.denorm(vv);

      for (int e = 0; e < n; ++e) {
        const int i = buf.idx(e, t);
        std::memcpy(buf.actions_raw.row(i), araw.row(e), 4 * sizeof(double));
        buf.logp[i] = lp[e];
        buf.value[i] = vals[e];
        buf.age[i] = venv.env(e).frames_in_window();
        actions[e] = venv.env(e).squash().apply(araw.row(e));
      }
      venv.step_all(actions, outs);

      for (int e = 0; e < n; ++e) {
        const int i = buf.idx(e, t);
        QuadEnv& qe = venv.env(e);
        buf.reward[i] = outs[e].reward;
        buf.done[i] = outs[e].done() ? 1 : 0;
        buf.trunc[i] = outs[e].timeout ? 1 : 0;
        pos_sq_sum += (qe.state().p - qe.reference()).norm2();

        tracker.ret[e] += outs[e].reward;
        tracker.len[e] += 1;
        if (outs[e].done()) {
          if (outs[e].timeout) {
            Boot b;
            b.env = e;
            b.t = t;
            b.obs.resize(venv.obs_dim());
            qe.obs_flat(b.obs.data());
            boots.push_back(std::move(b));
          }
          ++episodes;
          ep_ret_sum += tracker.ret[e];
          ep_len_sum += tracker.len[e];
          tracker.ret[e] = 0.0;
          tracker.len[e] = 0;
          qe.reset();
        }
        // the frame just built is the observation for sample t+1
        if (t + 1 < h) qe.latest_row(buf.frame_slot(e, kStackDepth + t));
      }
    }

    // bootstrap values for truncated episodes and the rollout tail
    if (!boots.empty()) {
      Mat bx(static_cast<int>(boots.size()), venv.obs_dim());
      for (size_t k = 0; k < boots.size(); ++k)
        std::memcpy(bx.row(static_cast<int>(k)), boots[k].obs.data(),
                    sizeof(double) * venv.obs_dim());
      const auto bv = value.forward(bx, /*cache=*/false);
      for (size_t k = 0; k < boots.size(); ++k)
        buf.boot_value[buf.idx(boots[k].env, boots[k].t)] = vnorm.denorm(bv[k]);
    }
    venv.obs_matrix(x);
    buf.final_value = value.forward(x, /*cache=*/false);
    for (auto& vv : buf.final_value) vv = vnorm.denorm(vv);

    // ---- advantages ----
    {
      std::vector<double> rew(h), val(h + 1), boot(h), a(h), r(h);
      std::vector<unsigned char> dn(h), tr(h);
      for (int e = 0; e < n; ++e) {
        for (int t = 0; t < h; ++t) {
          const int i = buf.idx(e, t);
          rew[t] = buf.reward[i];
          val[t] = buf.value[i];
          dn[t] = buf.done[i];
          tr[t] = buf.trunc[i];
          boot[t] = buf.boot_value[i];
        }
        val[h] = buf.final_value[e];
        gae(rew, val, dn, tr, boot, ppo.gamma, ppo.lambda, a, r);
        for (int t = 0; t < h; ++t) {
          buf.adv[buf.idx(e, t)] = a[t];
          buf.ret[buf.idx(e, t)] = r[t];
        }
      }
    }

    // retune the critic's normalization to this batch of targets
    vnorm.update(buf.ret, value.head());
    buf.vnorm_mean = vnorm.mean;
    buf.vnorm_sigma = vnorm.sigma;

    // ---- update, with rollback on numerical failure ----
    const auto snap_p = snapshot(policy.params());
    const auto snap_v = snapshot(value.params());
    const UpdateStats us = ppo_update(buf, policy, value, opt_policy, opt_value,
                                      ppo, update_rng);
    if (us.aborted) {
      restore(policy.params(), snap_p);
      restore(value.params(), snap_v);
      result.aborted = true;
      result.abort_reason = "non-finite loss at iteration " + std::to_string(iter);
      break;
    }

    IterStats is;
    is.iter = static_cast<int>(iter);
    is.env_steps = static_cast<long>(iter + 1) * n * h;
    is.episodes = episodes;
    is.mean_return = episodes ? ep_ret_sum / episodes : 0.0;
    is.mean_ep_len = episodes ? ep_len_sum / episodes : 0.0;
    is.survival = episodes ? (ep_len_sum / episodes) / env.max_ticks() : 0.0;
    is.rms_pos = std::sqrt(pos_sq_sum / (static_cast<double>(n) * h));
    last_survival = is.survival;
    is.policy_loss = us.policy_loss;
    is.value_loss = us.value_loss;
    is.entropy = us.entropy;
    is.approx_kl = us.approx_kl;
    is.clip_frac = us.clip_frac;
    result.curve.push_back(is);
    result.env_steps = is.env_steps;

    if (verbose) {
      std::printf(
          "[%s] iter %3ld steps %8ld eps %4d ret %8.1f len %6.1f surv %.3f "
          "rms %.3f kl %.4f dr %.2f\n",
          to_string(v).c_str(), iter, is.env_steps, episodes, is.mean_return,
          is.mean_ep_len, is.survival, is.rms_pos, is.approx_kl, dr_scale);
      std::fflush(stdout);
    }

    if (!run_dir.empty() && checkpoint_every > 0 && (iter + 1) % checkpoint_every == 0) {
      make_policy_checkpoint(policy, value, v, env, is.env_steps)
          .save(run_dir + "/checkpoint_iter" + std::to_string(iter + 1) + ".qck");
    }

    if (early_stop.enabled && episodes > 0 && dr_scale >= 1.0 &&
        is.survival >= early_stop.survival &&
        is.mean_return >= early_stop.mean_return) {
      if (++streak >= early_stop.patience) break;
    } else {
      streak = 0;
    }
  }

  result.checkpoint =
      make_policy_checkpoint(policy, value, v, env, result.env_steps);
  result.checkpoint.meta["value.norm_mean"] = std::to_string(vnorm.mean);
  result.checkpoint.meta["value.norm_sigma"] = std::to_string(vnorm.sigma);
  if (!run_dir.empty()) {
    std::filesystem::create_directories(run_dir);
    result.checkpoint.save(run_dir + "/checkpoint_final.qck");
    std::ofstream mf(run_dir + "/metrics.txt");
    mf << format_curve_table(result.curve);
  }
  return result;
}

}  // namespace quadrl
