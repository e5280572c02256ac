// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavy artifacts (trained policies, estimator) are cached in the
// artifacts directory so reruns skip training.
//
//   acceptance [--artifacts DIR] [--criterion N[,M...]] [--fresh]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadrl/bridge/bridge.hpp"
#include "quadrl/env/vec_env.hpp"
#include "quadrl/eval/metrics.hpp"
#include "quadrl/eval/scenario.hpp"
#include "quadrl/io/experiment.hpp"
#include "quadrl/nn/gaussian.hpp"
#include "quadrl/rdp/dataset.hpp"
#include "quadrl/rdp/model.hpp"
#include "quadrl/rl/gae.hpp"
#include "quadrl/rl/runner.hpp"
#include "quadrl/rl/train.hpp"
#include "quadrl/verify.hpp"

namespace fs = std::filesystem;
using namespace quadrl;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- fixture

struct Fixture {
  std::string dir = "acceptance_artifacts";
  ExperimentConfig cfg;  // desk-scale defaults, see make()

  Checkpoint base_ck, oracle_ck;
  RdpModel rdp;
  bool base_loaded = false, oracle_loaded = false, rdp_loaded = false;
  double base_train_wall = -1.0;  // criterion 6 runtime, when trained here

  static ExperimentConfig make() {
    Config c;
    ExperimentConfig x = ExperimentConfig::from_config(c);
    // desk-scale training setup (mirrors configs/crazyflie.cfg)
    x.net.arch = NetArch::Mlp;
    x.ppo.num_envs = 64;
    x.ppo.rollout_steps = 128;
    x.ppo.total_env_steps = 1200000;
    x.ppo.log_std_init = -2.3;
    x.ppo.kl_target = 0.05;
    x.early_stop.enabled = true;
    x.rdp_episodes = 600;
    x.rdp.train_steps = 1200;
    return x;
  }

  void ensure_base() {
    if (base_loaded) return;
    const std::string path = dir + "/base.qck";
    if (fs::exists(path)) {
      base_ck = Checkpoint::load(path);
      std::printf("     [artifact] base policy: cached (%s)\n", path.c_str());
    } else {
      std::printf("     [artifact] training base policy (~10 min)...\n");
      std::fflush(stdout);
      const auto t0 = Clock::now();
      TrainResult r = train_variant(TrainingVariant::Base, cfg.env, cfg.ppo, cfg.net,
                                    cfg.early_stop, 101, "", false);
      base_train_wall = seconds_since(t0);
      base_ck = std::move(r.checkpoint);
      fs::create_directories(dir);
      base_ck.save(path);
      std::ofstream(dir + "/base_wall_s.txt") << base_train_wall << "\n";
      std::printf("     [artifact] base trained in %.0f s (%ld env steps)\n",
                  base_train_wall, r.env_steps);
    }
    if (base_train_wall < 0 && fs::exists(dir + "/base_wall_s.txt"))
      std::ifstream(dir + "/base_wall_s.txt") >> base_train_wall;
    base_loaded = true;
  }

  void ensure_oracle() {
    if (oracle_loaded) return;
    const std::string path = dir + "/oracle.qck";
    if (fs::exists(path)) {
      oracle_ck = Checkpoint::load(path);
      std::printf("     [artifact] oracle policy: cached (%s)\n", path.c_str());
    } else {
      std::printf("     [artifact] training oracle-adaptive policy (~12 min)...\n");
      std::fflush(stdout);
      TrainResult r = train_variant(TrainingVariant::OracleAdaptive, cfg.env, cfg.ppo,
                                    cfg.net, cfg.early_stop, 202, "", false);
      oracle_ck = std::move(r.checkpoint);
      fs::create_directories(dir);
      oracle_ck.save(path);
    }
    oracle_loaded = true;
  }

  void ensure_rdp() {
    if (rdp_loaded) return;
    ensure_oracle();
    const std::string path = dir + "/rdp.qck";
    if (fs::exists(path)) {
      rdp = RdpModel::load(path);
      std::printf("     [artifact] rdp model: cached (%s)\n", path.c_str());
    } else {
      std::printf("     [artifact] collecting %d oracle episodes...\n", cfg.rdp_episodes);
      std::fflush(stdout);
      const RdpDataset ds = collect_rdp_dataset(oracle_ck, cfg.env, cfg.rdp_episodes,
                                                cfg.rdp_family, 303);
      std::printf("     [artifact] training rdp (%ld steps)...\n", cfg.rdp.train_steps);
      std::fflush(stdout);
      RdpTrainResult r = train_rdp(ds, cfg.rdp, 404);
      rdp = std::move(r.model);
      fs::create_directories(dir);
      rdp.save(path);
      std::printf("     [artifact] rdp val mse %.5f (standardized)\n", r.final_val_loss);
    }
    rdp_loaded = true;
  }

  Scenario scenario(ScenarioKind kind, ControllerKind ctl, double tier,
                    std::uint64_t seed) const {
    Scenario sc;
    sc.kind = kind;
    sc.controller = ctl;
    sc.payload_fraction = tier;
    sc.offset_point = {cfg.env.phys.l1, 0.0, 0.0};
    sc.traj = cfg.traj;
    sc.settle_s = cfg.settle_s;
    sc.hold_s = cfg.hold_s;
    sc.n_periods = cfg.n_periods;
    sc.seed = seed;
    return sc;
  }

  ControllerBundle bundle(ControllerKind ctl) const {
    ControllerBundle b;
    switch (ctl) {
      case ControllerKind::Base:
      case ControllerKind::Robust:
        b.policy_ck = &base_ck;
        break;
      case ControllerKind::AdaptiveOracle:
      case ControllerKind::AdaptiveRdp:
        b.policy_ck = &oracle_ck;
        break;
    }
    if (ctl == ControllerKind::AdaptiveRdp) b.rdp = &rdp;
    return b;
  }
};

struct Criterion {
  int id;
  std::string name;
  std::function<bool(Fixture&, std::string&)> run;
};

// ------------------------------------------------------------- criteria

bool c1_hover_fixed_point(Fixture&, std::string& detail) {
  const auto t0 = Clock::now();
  PhysicalParams p;
  const double wh = hover_speed(p);
  RigidBodyState s;
  const std::array<double, 4> rotors{wh, wh, wh, wh};
  for (int i = 0; i < 500; ++i) {
    const Wrench aero = aero_wrench(rotors, p);
    s = step_rigid_body(s, {s.q.rotate(aero.force), aero.torque, WrenchFrame::Mixed},
                        p, 0.002);
  }
  const double drift = s.p.norm();
  const double wall = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "drift %.3g m over 1 s (runtime %.3f s)", drift, wall);
  detail = buf;
  return drift < 1e-6 && wall < 1.0;
}

bool c2_actuator(Fixture&, std::string& detail) {
  const double dt = 0.002, tau = 0.03, cmd = 2000.0;
  RotorState r;
  r.omega_cmd = {cmd, cmd, cmd, cmd};
  double worst = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    r = actuator_step(r, dt, tau);
    const double analytic = cmd * (1.0 - std::exp(-k * dt / tau));
    worst = std::max(worst, std::fabs(r.omega[0] - analytic) /
                                std::max(std::fabs(analytic), 1.0));
  }
  RotorState s;
  s.omega_cmd = {cmd, cmd, cmd, cmd};
  for (int k = 0; k < 15; ++k) s = actuator_step(s, dt, tau);
  const double rise = s.omega[0] / cmd;
  const double rise_err = std::fabs(rise - (1.0 - std::exp(-1.0))) / 0.6321205588;
  char buf[128];
  std::snprintf(buf, sizeof buf, "per-step rel err %.2g, 63.21%% rise err %.2g%%",
                worst, 100 * rise_err);
  detail = buf;
  return worst < 1e-12 && rise_err < 1e-4;
}

bool c3_mixer(Fixture&, std::string& detail) {
  PhysicalParams p;
  p.x0 = 0.003;
  MotorMixer mx(p);
  Rng rng(31337);
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 10000) {
    const double thrust = rng.uniform(4.2 * p.f_min, 3.8 * p.f_max);
    const Vec3 tau{rng.uniform(-6e-4, 6e-4), rng.uniform(-6e-4, 6e-4),
                   rng.uniform(-1.2e-4, 1.2e-4)};
    const MotorCommand mc = mx.mix(thrust, tau);
    if (mc.clamped) continue;
    ++accepted;
    const Wrench w = aero_wrench(mc.omega_cmd, p);
    worst = std::max(worst, std::fabs(w.force.z - thrust) / thrust);
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::fabs(w.torque[i] - tau[i]) /
                                  std::max(std::fabs(tau[i]), 1e-8));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max rel err %.2g over 10^4 commands", worst);
  detail = buf;
  return worst < 1e-10;
}

double fd_max_err(std::vector<double>& x, const std::vector<double>& analytic,
                  const std::function<double()>& f, size_t stride) {
  double worst = 0.0;
  const double h = 1e-5;
  for (size_t i = 0; i < x.size(); i += stride) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f();
    x[i] = orig - h;
    const double fm = f();
    x[i] = orig;
    const double fd = (fp - fm) / (2 * h);
    worst = std::max(worst, std::fabs(fd - analytic[i]) /
                                std::max({std::fabs(fd), std::fabs(analytic[i]), 1e-3}));
  }
  return worst;
}

bool c4_gradients(Fixture&, std::string& detail) {
  const auto t0 = Clock::now();
  Rng rng(42);
  double worst = 0.0;

  {  // dense layer, every coordinate
    DenseLayer d(10, 6, rng);
    Mat x(4, 10), proj(4, 6);
    for (auto& v : x.d) v = rng.normal();
    for (auto& v : proj.d) v = rng.normal();
    auto loss = [&] {
      DenseLayer t = d;
      const Mat y = t.forward(x);
      double s = 0;
      for (size_t i = 0; i < y.d.size(); ++i) s += y.d[i] * proj.d[i];
      return s;
    };
    d.zero_grad();
    d.forward(x);
    d.backward(proj);
    worst = std::max(worst, fd_max_err(d.w.d, d.dw.d, loss, 1));
    worst = std::max(worst, fd_max_err(d.b.d, d.db.d, loss, 1));
  }

  for (int steps : {8, 64}) {  // two-layer GRU over short and full windows
    GruLayer g1(26, 64, rng), g2(64, 64, rng);
    std::vector<Mat> x(steps, Mat(2, 26));
    for (auto& m : x)
      for (auto& v : m.d) v = rng.normal();
    Mat proj(2, 64);
    for (auto& v : proj.d) v = rng.normal();
    auto loss = [&] {
      GruLayer t1 = g1, t2 = g2;
      const auto h1 = t1.forward(x);
      const auto& h2 = t2.forward(h1);
      double s = 0;
      for (size_t i = 0; i < h2.back().d.size(); ++i) s += h2.back().d[i] * proj.d[i];
      return s;
    };
    g1.zero_grad();
    g2.zero_grad();
    const auto h1 = g1.forward(x);
    g2.forward(h1);
    std::vector<Mat> dh(steps);
    dh.back() = proj;
    g1.backward(g2.backward(dh));
    for (auto* layer : {&g1, &g2})
      for (auto& pr : layer->params("g"))
        worst = std::max(
            worst, fd_max_err(pr.value->d, pr.grad->d, loss,
                              std::max<size_t>(1, pr.value->d.size() / 16)));
  }

  {  // gaussian head
    Mat mean(3, 4), actions(3, 4);
    for (auto& v : mean.d) v = rng.normal();
    for (auto& v : actions.d) v = rng.normal();
    std::vector<double> ls{-0.3, 0.2, -1.0, 0.0};
    std::vector<double> scale{0.7, -0.4, 1.1};
    std::vector<double> dls(4, 0.0);
    const Mat dmean = diag_gaussian::dlogp_dmean(mean, ls, actions, scale, dls);
    auto loss = [&] {
      const auto lp = diag_gaussian::log_prob(mean, ls, actions);
      return scale[0] * lp[0] + scale[1] * lp[1] + scale[2] * lp[2];
    };
    worst = std::max(worst, fd_max_err(mean.d, dmean.d, loss, 1));
    worst = std::max(worst, fd_max_err(ls, dls, loss, 1));
  }

  const double wall = seconds_since(t0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max rel err %.2g (runtime %.1f s)", worst, wall);
  detail = buf;
  return worst < 1e-4 && wall < 30.0;
}

bool c5_reward_gae(Fixture&, std::string& detail) {
  RewardCoeffs c;
  RigidBodyState s;
  OuterAction a;
  bool ok = std::fabs(compute_reward(s, {0, 0, 0}, a, a, false, c) - 4.0) < 1e-12;
  RigidBodyState off;
  off.p = {0.1, 0, 0};
  ok = ok && std::fabs(compute_reward(off, {0, 0, 0}, a, a, false, c) - 3.7) < 1e-12;
  ok = ok && std::fabs(compute_reward(s, {0, 0, 0}, a, a, true, c) -
                       compute_reward(s, {0, 0, 0}, a, a, false, c) + 100.0) < 1e-12;

  Rng rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const int T = 20;
    std::vector<double> rew(T), val(T + 1), adv, ret;
    std::vector<unsigned char> dn(T, 0);
    for (auto& r : rew) r = rng.normal();
    for (auto& v : val) v = rng.normal();
    if (trial % 2) dn[rng.uniform_int(T)] = 1;
    const double g = trial % 3 ? 0.99 : 1.0;
    const double l = trial % 3 ? 0.95 : 1.0;
    gae(rew, val, dn, g, l, adv, ret);
    for (int t = 0; t < T; ++t) {
      double sum = 0.0, w = 1.0;
      for (int k = t; k < T; ++k) {
        const double next = dn[k] ? 0.0 : val[k + 1];
        sum += w * (rew[k] + g * next - val[k]);
        if (dn[k]) break;
        w *= g * l;
      }
      worst = std::max(worst, std::fabs(adv[t] - sum));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "reward oracle ok, gae vs brute force %.2g", worst);
  detail = buf;
  return ok && worst < 1e-10;
}

bool c6_training_smoke(Fixture& fx, std::string& detail) {
  fx.ensure_base();

  // survival over training-distribution episodes with deterministic actions
  EnvConfig env = variant_env(TrainingVariant::Base, fx.cfg.env);
  PolicyRunner runner(fx.base_ck);
  int full = 0;
  const int episodes = 40;
  double len_sum = 0;
  for (int e = 0; e < episodes; ++e) {
    QuadEnv qe(env, Rng::derive(515, e).next_u64());
    int len = 0;
    while (true) {
      const auto out = qe.step(runner.act(qe));
      ++len;
      if (out.crashed) break;
      if (out.timeout) {
        ++full;
        break;
      }
    }
    len_sum += len;
  }
  const double survival = len_sum / (episodes * env.max_ticks());

  // position-hold rmse via the eval harness
  double rmse_sum = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const EpisodeLog log = run_scenario(
        fx.scenario(ScenarioKind::PositionHold, ControllerKind::Base, 0.0, seed),
        fx.bundle(ControllerKind::Base), fx.cfg.env);
    rmse_sum += tracking_metrics(log).rmse;
  }
  const double hold_rmse = rmse_sum / 3.0;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "survival %.1f%% (%d/%d full), hold rmse %.3f m, train wall %.0f s",
                100 * survival, full, episodes, hold_rmse,
                fx.base_train_wall < 0 ? 0.0 : fx.base_train_wall);
  detail = buf;
  bool ok = survival > 0.95 && hold_rmse < 0.10;
  if (fx.base_train_wall > 0) ok = ok && fx.base_train_wall < 1800.0;
  return ok;
}

bool c7_adaptation_ordering(Fixture& fx, std::string& detail) {
  fx.ensure_base();
  fx.ensure_rdp();
  const std::vector<std::uint64_t> seeds{11, 12, 13, 14, 15};
  auto mean_rmse = [&](ControllerKind ctl) {
    double sum = 0;
    for (auto seed : seeds) {
      const EpisodeLog log = run_scenario(
          fx.scenario(ScenarioKind::CentralPayload, ctl, 0.15, seed),
          fx.bundle(ctl), fx.cfg.env);
      sum += tracking_metrics(log).rmse;
    }
    return sum / seeds.size();
  };
  const double base = mean_rmse(ControllerKind::Base);
  const double oracle = mean_rmse(ControllerKind::AdaptiveOracle);
  const double rdp = mean_rmse(ControllerKind::AdaptiveRdp);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rmse base %.3f, oracle %.3f, rdp %.3f (need oracle < base, "
                "rdp <= 1.5 oracle)", base, oracle, rdp);
  detail = buf;
  return oracle < base && rdp <= 1.5 * oracle;
}

// steady-state mean of the smoothed estimate over the final `tail_s` seconds
Wrench tail_mean_estimate(const EpisodeLog& log, double tail_s,
                          Wrench EpisodeTick::*field) {
  const double t_end = log.ticks.back().t;
  Wrench sum;
  int n = 0;
  for (const auto& tk : log.ticks) {
    if (tk.t < t_end - tail_s) continue;
    sum += tk.*field;
    ++n;
  }
  sum.force *= 1.0 / n;
  sum.torque *= 1.0 / n;
  return sum;
}

bool c8_mass_estimation(Fixture& fx, std::string& detail) {
  fx.ensure_rdp();
  ExperimentConfig cfg = fx.cfg;
  cfg.hold_s = 7.0;  // leave time for the estimator to settle
  double err_sum = 0;
  int n = 0;
  for (std::uint64_t seed : {21, 22, 23}) {
    Scenario sc = fx.scenario(ScenarioKind::CentralPayload,
                              ControllerKind::AdaptiveRdp, 0.15, seed);
    sc.hold_s = cfg.hold_s;
    const EpisodeLog log = run_scenario(sc, fx.bundle(ControllerKind::AdaptiveRdp),
                                        fx.cfg.env);
    if (log.crashed) {
      detail = "crashed during the mass-estimation run";
      return false;
    }
    const Wrench est = tail_mean_estimate(log, 2.0, &EpisodeTick::smoothed_estimate);
    const double m_hat = -est.force.z / fx.cfg.env.phys.g;
    const double m_true = 0.15 * fx.cfg.env.phys.m;
    err_sum += std::fabs(m_hat - m_true) / m_true;
    ++n;
  }
  const double rel = err_sum / n;
  char buf[96];
  std::snprintf(buf, sizeof buf, "steady-state mass error %.1f%% (need <= 10%%)",
                100 * rel);
  detail = buf;
  return rel <= 0.10;
}

bool c9_moment_isolation(Fixture& fx, std::string& detail) {
  fx.ensure_rdp();
  double on_axis_err = 0, off_axis_frac = 0;
  bool sign_ok = true;
  int n = 0;
  for (std::uint64_t seed : {31, 32, 33}) {
    Scenario sc = fx.scenario(ScenarioKind::AsymmetricPayload,
                              ControllerKind::AdaptiveRdp, 0.07, seed);
    sc.hold_s = 7.0;
    const EpisodeLog log = run_scenario(sc, fx.bundle(ControllerKind::AdaptiveRdp),
                                        fx.cfg.env);
    if (log.crashed) {
      detail = "crashed during the moment-isolation run";
      return false;
    }
    const Wrench est = tail_mean_estimate(log, 2.0, &EpisodeTick::smoothed_estimate);
    const Wrench truth = tail_mean_estimate(log, 2.0, &EpisodeTick::true_wrench);
    // payload on the +x arm: the induced moment is about body y
    sign_ok = sign_ok && (est.torque.y * truth.torque.y > 0);
    on_axis_err += std::fabs(est.torque.y - truth.torque.y) / std::fabs(truth.torque.y);
    off_axis_frac += std::fabs(est.torque.x) / std::fabs(truth.torque.y);
    ++n;
  }
  on_axis_err /= n;
  off_axis_frac /= n;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "M_y err %.1f%% (<=25%%), |M_x|/|M_y_true| %.1f%% (<25%%), sign %s",
                100 * on_axis_err, 100 * off_axis_frac, sign_ok ? "ok" : "WRONG");
  detail = buf;
  return sign_ok && on_axis_err <= 0.25 && off_axis_frac < 0.25;
}

bool c10_bridge(Fixture& fx, std::string& detail) {
  fx.ensure_rdp();
  // three hover segments at distinct payload tiers, offset injected into the
  // smoothed estimates
  const std::array<double, 6> delta{0, 0, 0.02, 0.0005, 0, 0};
  std::vector<std::pair<std::array<double, 6>, std::array<double, 6>>> samples;
  for (double tier : {0.0, 0.075, 0.15}) {
    Scenario sc = fx.scenario(ScenarioKind::CentralPayload,
                              ControllerKind::AdaptiveRdp, tier, 41);
    const EpisodeLog log = run_scenario(sc, fx.bundle(ControllerKind::AdaptiveRdp),
                                        fx.cfg.env);
    const auto raw = tail_mean_estimate(log, 2.0, &EpisodeTick::smoothed_estimate).flat();
    const auto expected = tail_mean_estimate(log, 2.0, &EpisodeTick::true_wrench).flat();
    std::array<double, 6> biased = raw;
    for (int i = 0; i < 6; ++i) biased[i] += delta[i];
    samples.push_back({biased, expected});
  }
  const LinearBridge bridge = LinearBridge::fit(samples);

  // residual offset left on the fitting samples, per synthetic channel
  double fz_resid = 0, mx_resid = 0;
  for (const auto& [raw, expected] : samples) {
    const Wrench corr = bridge.apply(Wrench::from_flat(raw));
    fz_resid += (corr.force.z - expected[2]) / samples.size();
    mx_resid += (corr.torque.x - expected[3]) / samples.size();
  }
  const double fz_removal = 1.0 - std::fabs(fz_resid) / delta[2];
  const double mx_removal = 1.0 - std::fabs(mx_resid) / delta[3];
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "offset removal f_z %.1f%%, M_x %.1f%% (>=95%%), slope f_z %.3f",
                100 * fz_removal, 100 * mx_removal, bridge.slope[2]);
  detail = buf;
  return fz_removal >= 0.95 && mx_removal >= 0.95 && bridge.slope[2] >= 0.9 &&
         bridge.slope[2] <= 1.1;
}

bool c11_alt_bias(Fixture& fx, std::string& detail) {
  fx.ensure_rdp();
  EnvConfig env = fx.cfg.env;
  env.plant_thrust_scale = 0.95;  // 5% unmodeled thrust deficit
  Scenario sc = fx.scenario(ScenarioKind::PositionHold, ControllerKind::AdaptiveRdp,
                            0.0, 51);
  sc.hold_s = 27.0;  // bias integrator needs its slow time constant
  ControllerBundle ctl = fx.bundle(ControllerKind::AdaptiveRdp);
  ctl.use_alt_bias = true;
  const EpisodeLog log = run_scenario(sc, ctl, env);
  if (log.crashed) {
    detail = "crashed under the thrust deficit";
    return false;
  }
  // altitude error over the final 2 s
  const double t_end = log.ticks.back().t;
  double err = 0;
  int n = 0;
  double max_bias = 0;
  for (const auto& tk : log.ticks) {
    // identity bridge: the bias is the corrected-minus-smoothed f_z gap
    max_bias = std::max(max_bias, std::fabs(tk.corrected_estimate.force.z -
                                            tk.smoothed_estimate.force.z));
    if (tk.t < t_end - 2.0) continue;
    err += (tk.state.p.z - tk.ref.z) / 1.0;
    ++n;
  }
  err = std::fabs(err / n);
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "steady-state altitude error %.4f m (<0.01), max |F_bias| %.3f N",
                err, max_bias);
  detail = buf;
  const AltBiasState defaults;
  return err < 0.01 && max_bias <= defaults.clamp + 1e-12;
}

bool c12_metric_oracles(Fixture&, std::string& detail) {
  // rmse vs brute force on random logs
  Rng rng(61);
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    EpisodeLog log;
    for (int i = 0; i < 200; ++i) {
      EpisodeTick tk;
      tk.t = i * 0.02;
      tk.ref = rng.normal_vec3(0.5);
      tk.state.p = rng.normal_vec3(0.5);
      tk.in_metric_window = true;
      log.ticks.push_back(tk);
    }
    double sum = 0;
    for (const auto& tk : log.ticks) sum += (tk.state.p - tk.ref).norm2();
    worst = std::max(worst, std::fabs(rmse(log) - std::sqrt(sum / log.ticks.size())));
  }

  // delay/phase pairs from the trajectory table
  auto phase_of = [](double T, double shift) {
    std::vector<double> ref, act;
    const double dt = 0.02;
    for (int i = 0; i < static_cast<int>(2 * T / dt); ++i) {
      const double t = i * dt;
      ref.push_back(0.4 * std::cos(2 * M_PI * t / T));
      act.push_back(0.4 * std::cos(2 * M_PI * (t - shift) / T));
    }
    const auto d = delay_seconds(act, ref, dt, T);
    return d ? 360.0 * *d / T : 1e9;
  };
  const double p3 = phase_of(3.0, 0.100);    // tabulated: 12.0 deg
  const double p15 = phase_of(15.0, -0.140);  // tabulated: -3.4 deg
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "rmse err %.2g, phase(T=3,+0.1s) %.2f deg, phase(T=15,-0.14s) %.2f deg",
                worst, p3, p15);
  detail = buf;
  return worst < 1e-12 && std::fabs(p3 - 12.0) < 0.1 && std::fabs(p15 + 3.36) < 0.1;
}

bool c13_trajectory_trend(Fixture& fx, std::string& detail) {
  fx.ensure_rdp();
  const std::vector<double> periods{15.0, 10.0, 5.0, 3.0};
  std::vector<double> mean_rmse;
  bool any_crash = false;
  for (double T : periods) {
    double sum = 0;
    for (std::uint64_t seed : {71, 72, 73}) {
      Scenario sc = fx.scenario(ScenarioKind::SlungFigure8,
                                ControllerKind::AdaptiveRdp, 0.0, seed);
      sc.traj.period = T;
      const EpisodeLog log = run_scenario(sc, fx.bundle(ControllerKind::AdaptiveRdp),
                                          fx.cfg.env);
      any_crash = any_crash || log.crashed;
      sum += tracking_metrics(log, T).rmse;
    }
    mean_rmse.push_back(sum / 3.0);
  }
  bool monotone = true;
  for (size_t i = 1; i < mean_rmse.size(); ++i)
    monotone = monotone && mean_rmse[i] >= mean_rmse[i - 1] - 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rmse T15 %.3f, T10 %.3f, T5 %.3f, T3 %.3f%s%s", mean_rmse[0],
                mean_rmse[1], mean_rmse[2], mean_rmse[3],
                monotone ? "" : " NOT MONOTONE", any_crash ? " CRASHED" : "");
  detail = buf;
  return monotone && !any_crash;
}

bool c14_determinism(Fixture& fx, std::string& detail) {
  threads::set_num(1);  // determinism mode
  auto run_once = [&](const std::string& dir) {
    fs::create_directories(dir);
    ExperimentConfig cfg = Fixture::make();
    cfg.ppo.num_envs = 8;
    cfg.ppo.rollout_steps = 32;
    cfg.ppo.total_env_steps = 8 * 32 * 3;
    cfg.early_stop.enabled = false;
    train_variant(TrainingVariant::Base, cfg.env, cfg.ppo, cfg.net, cfg.early_stop,
                  909, dir, false);
    // an evaluation log driven by the fresh checkpoint
    const Checkpoint ck = Checkpoint::load(dir + "/checkpoint_final.qck");
    ControllerBundle ctl;
    ctl.policy_ck = &ck;
    Scenario sc = fx.scenario(ScenarioKind::PositionHold, ControllerKind::Base, 0.0, 77);
    sc.hold_s = 1.0;
    sc.settle_s = 0.5;
    EpisodeLog log = run_scenario(sc, ctl, cfg.env);
    log.save(dir + "/episode.log");
  };
  const std::string da = fx.dir + "/det_a", db = fx.dir + "/det_b";
  fs::remove_all(da);
  fs::remove_all(db);
  run_once(da);
  run_once(db);
  threads::set_num(0);

  auto same_bytes = [](const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str() && !sa.str().empty();
  };
  const bool ck_ok = same_bytes(da + "/checkpoint_final.qck", db + "/checkpoint_final.qck");
  const bool mt_ok = same_bytes(da + "/metrics.txt", db + "/metrics.txt");
  const bool log_ok = same_bytes(da + "/episode.log", db + "/episode.log");
  detail = std::string("checkpoint ") + (ck_ok ? "identical" : "DIFFERS") +
           ", metrics " + (mt_ok ? "identical" : "DIFFERS") + ", log " +
           (log_ok ? "identical" : "DIFFERS");
  return ck_ok && mt_ok && log_ok;
}

}  // namespace

int main(int argc, char** argv) {
  Fixture fx;
  fx.cfg = Fixture::make();
  std::set<int> selected;
  bool fresh = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--artifacts" && i + 1 < argc) {
      fx.dir = argv[++i];
    } else if (arg == "--criterion" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) selected.insert(std::stoi(tok));
    } else if (arg == "--fresh") {
      fresh = true;
    } else {
      std::fprintf(stderr,
                   "usage: acceptance [--artifacts DIR] [--criterion N[,M..]] [--fresh]\n");
      return 2;
    }
  }
  if (fresh) fs::remove_all(fx.dir);

  const std::vector<Criterion> criteria{
      {1, "dynamics-hover-fixed-point", c1_hover_fixed_point},
      {2, "actuator-lag-exactness", c2_actuator},
      {3, "mixer-round-trip", c3_mixer},
      {4, "gradient-suite", c4_gradients},
      {5, "reward-gae-oracles", c5_reward_gae},
      {6, "training-smoke", c6_training_smoke},
      {7, "adaptation-ordering", c7_adaptation_ordering},
      {8, "rdp-mass-estimation", c8_mass_estimation},
      {9, "rdp-moment-isolation", c9_moment_isolation},
      {10, "calibration-bridge", c10_bridge},
      {11, "altitude-bias-integrator", c11_alt_bias},
      {12, "metric-oracles", c12_metric_oracles},
      {13, "trajectory-trend", c13_trajectory_trend},
      {14, "determinism", c14_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(fx, detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%2d] %s %-28s %s\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return 1;
}
