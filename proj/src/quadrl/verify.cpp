#include "quadrl/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "quadrl/control/mixer.hpp"
#include "quadrl/eval/metrics.hpp"
#include "quadrl/eval/trajectory.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/nn/dense.hpp"
#include "quadrl/nn/gaussian.hpp"
#include "quadrl/nn/gru.hpp"
#include "quadrl/rl/gae.hpp"
#include "quadrl/rl/reward.hpp"
#include "quadrl/sim/rigid_body.hpp"
#include "quadrl/sim/rotor.hpp"

namespace quadrl {

namespace {

char detail_buf[256];

CheckResult make(const std::string& name, bool pass, const char* fmt, double v) {
  std::snprintf(detail_buf, sizeof detail_buf, fmt, v);
  return {name, pass, detail_buf};
}

double rel_err(double a, double b, double floor = 1e-3) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

// central finite differences over selected coordinates
double max_fd_err(std::vector<double>& x, const std::vector<double>& analytic,
                  const std::function<double()>& f, int stride = 1) {
  double worst = 0.0;
  const double h = 1e-5;
  for (size_t i = 0; i < x.size(); i += stride) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f();
    x[i] = orig - h;
    const double fm = f();
    x[i] = orig;
    worst = std::max(worst, rel_err((fp - fm) / (2 * h), analytic[i]));
  }
  return worst;
}

CheckResult check_hover_fixed_point() {
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
  return make("dynamics-hover-fixed-point", drift < 1e-6, "drift %.3g m over 1 s", drift);
}

CheckResult check_actuator() {
  const double dt = 0.002, tau = 0.03, cmd = 2000.0;
  RotorState r;
  r.omega_cmd = {cmd, cmd, cmd, cmd};
  double worst = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    r = actuator_step(r, dt, tau);
    const double analytic = cmd * (1.0 - std::exp(-k * dt / tau));
    worst = std::max(worst, std::fabs(r.omega[0] - analytic) / cmd);
  }
  RotorState s;
  s.omega_cmd = {cmd, cmd, cmd, cmd};
  for (int k = 0; k < 15; ++k) s = actuator_step(s, dt, tau);
  const double frac = s.omega[0] / cmd;
  const bool rise_ok = std::fabs(frac - (1.0 - std::exp(-1.0))) < 1e-4 * 0.6321;
  return make("actuator-exact-exponential", worst < 1e-12 && rise_ok,
              "max per-step rel err %.3g", worst);
}

CheckResult check_mixer_roundtrip() {
  PhysicalParams p;
  p.x0 = 0.003;
  MotorMixer mx(p);
  Rng rng(2024);
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
      worst = std::max(worst,
                       std::fabs(w.torque[i] - tau[i]) / std::max(std::fabs(tau[i]), 1e-8));
  }
  return make("mixer-wrench-roundtrip", worst < 1e-10, "max rel err %.3g over 1e4", worst);
}

CheckResult check_quat_norm() {
  PhysicalParams p;
  RigidBodyState s;
  s.w = {1.0, -2.0, 0.5};
  const Wrench hover{{0, 0, p.m * p.g}, {0, 0, 0}, WrenchFrame::Mixed};
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    s = step_rigid_body(s, hover, p, 0.002);
    worst = std::max(worst, std::fabs(s.q.norm() - 1.0));
  }
  return make("quaternion-norm-1e6-steps", worst < 1e-9, "max |1 - |q|| = %.3g", worst);
}

CheckResult check_energy() {
  PhysicalParams p;
  p.g = 1e-300;
  RigidBodyState s;
  s.w = {1.125, 0.75, 1.5};
  auto energy = [&](const RigidBodyState& x) {
    return 0.5 * (p.ixx * x.w.x * x.w.x + p.iyy * x.w.y * x.w.y +
                  p.izz * x.w.z * x.w.z);
  };
  const double e0 = energy(s);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    s = step_rigid_body(s, {}, p, 0.002);
    worst = std::max(worst, std::fabs(energy(s) - e0) / e0);
  }
  return make("free-body-energy-drift", worst < 0.001, "max drift %.4f%%", worst * 100);
}

CheckResult check_gradients() {
  Rng rng(7);
  double worst = 0.0;

  {  // dense, full
    DenseLayer d(6, 4, rng);
    Mat x(5, 6), proj(5, 4);
    for (auto& v : x.d) v = rng.normal();
    for (auto& v : proj.d) v = rng.normal();
    auto loss = [&]() {
      DenseLayer t = d;
      const Mat y = t.forward(x);
      double s = 0;
      for (size_t i = 0; i < y.d.size(); ++i) s += y.d[i] * proj.d[i];
      return s;
    };
    d.zero_grad();
    d.forward(x);
    d.backward(proj);
    worst = std::max(worst, max_fd_err(d.w.d, d.dw.d, loss));
    worst = std::max(worst, max_fd_err(d.b.d, d.db.d, loss));
  }

  {  // two stacked GRU layers, hidden 64, 64-step window, sampled coordinates
    GruLayer g1(26, 64, rng), g2(64, 64, rng);
    const int steps = 64, batch = 2;
    std::vector<Mat> x(steps, Mat(batch, 26));
    for (auto& m : x)
      for (auto& v : m.d) v = rng.normal();
    Mat proj(batch, 64);
    for (auto& v : proj.d) v = rng.normal();
    auto loss = [&]() {
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
    std::vector<Mat> dh2(steps);
    dh2.back() = proj;
    g1.backward(g2.backward(dh2));
    for (auto* layer : {&g1, &g2})
      for (auto& pr : layer->params("g"))
        worst = std::max(worst,
                         max_fd_err(pr.value->d, pr.grad->d, loss,
                                    std::max<size_t>(1, pr.value->d.size() / 24)));
  }

  {  // gaussian head gradients
    Mat mean(3, 4), actions(3, 4);
    for (auto& v : mean.d) v = rng.normal();
    for (auto& v : actions.d) v = rng.normal();
    std::vector<double> ls{-0.5, 0.1, 0.3, -1.0};
    std::vector<double> scale{1.0, -0.7, 0.4};
    std::vector<double> dls(4, 0.0);
    const Mat dmean = diag_gaussian::dlogp_dmean(mean, ls, actions, scale, dls);
    auto loss = [&]() {
      const auto lp = diag_gaussian::log_prob(mean, ls, actions);
      return scale[0] * lp[0] + scale[1] * lp[1] + scale[2] * lp[2];
    };
    worst = std::max(worst, max_fd_err(mean.d, dmean.d, loss));
    worst = std::max(worst, max_fd_err(ls, dls, loss));
  }

  return make("gradient-suite-fd", worst < 1e-4, "max rel err %.3g", worst);
}

CheckResult check_reward_oracle() {
  RewardCoeffs c;
  RigidBodyState s;
  OuterAction a;
  bool ok = true;
  ok = ok && std::fabs(compute_reward(s, {0, 0, 0}, a, a, false, c) - 4.0) < 1e-12;
  RigidBodyState off = s;
  off.p = {0.1, 0, 0};
  ok = ok && std::fabs(compute_reward(off, {0, 0, 0}, a, a, false, c) - 3.7) < 1e-12;
  const double crash = compute_reward(s, {0, 0, 0}, a, a, true, c);
  ok = ok && std::fabs(crash - (4.0 - 100.0)) < 1e-12;
  return {"reward-eq5-oracle", ok, "hover 4.0, |p|=0.1 -> 3.7, crash -96"};
}

CheckResult check_gae_bruteforce() {
  Rng rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int T = 20;
    std::vector<double> rew(T), val(T + 1);
    std::vector<unsigned char> dn(T, 0);
    for (auto& r : rew) r = rng.normal();
    for (auto& v : val) v = rng.normal();
    if (trial % 3 == 0) dn[rng.uniform_int(T)] = 1;
    const double gamma = trial % 2 ? 0.99 : 1.0;
    const double lambda = trial % 2 ? 0.95 : 1.0;
    std::vector<double> adv, ret;
    gae(rew, val, dn, gamma, lambda, adv, ret);
    // brute force: explicit lambda-weighted sum of k-step advantages
    for (int t = 0; t < T; ++t) {
      double total = 0.0, glk = 1.0;
      for (int k = t; k < T; ++k) {
        double disc = 1.0;
        double ksum = 0.0;
        for (int j = t; j <= k; ++j) {
          ksum += disc * rew[j];
          disc *= gamma;
          if (dn[j]) break;
        }
        bool ended = false;
        for (int j = t; j <= k; ++j) ended = ended || dn[j];
        if (!ended) ksum += disc * val[k + 1];
        const double a_k = ksum - val[t];
        const double w = (k + 1 < T && !ended) ? (1.0 - lambda) : 1.0;
        total += glk * w * a_k;
        glk *= lambda;
        if (ended || k + 1 == T) break;
      }
      worst = std::max(worst, std::fabs(total - adv[t]));
    }
  }
  return make("gae-brute-force", worst < 1e-10, "max abs err %.3g", worst);
}

CheckResult check_metric_oracles() {
  bool ok = true;
  // rmse 3-4-5 and brute force
  EpisodeLog log;
  log.metric_window_start = 0.0;
  for (int i = 0; i < 100; ++i) {
    EpisodeTick tk;
    tk.t = i * 0.02;
    tk.ref = {0, 0, 0};
    tk.state.p = {0.03, 0.04, 0.0};
    tk.in_metric_window = true;
    log.ticks.push_back(tk);
  }
  ok = ok && std::fabs(rmse(log) - 0.05) < 1e-12;

  // synthetic delay recovery
  const double T = 3.0, dt = 0.02, shift = 0.100;
  std::vector<double> ref, act;
  for (int i = 0; i < static_cast<int>(2 * T / dt); ++i) {
    const double t = i * dt;
    ref.push_back(0.4 * std::cos(2 * M_PI * t / T));
    act.push_back(0.4 * std::cos(2 * M_PI * (t - shift) / T));
  }
  const auto d = delay_seconds(act, ref, dt, T);
  ok = ok && d && std::fabs(*d - shift) < 0.02;
  const double phase = d ? 360.0 * *d / T : 0.0;
  ok = ok && std::fabs(phase - 12.0) < 0.5;
  return make("metric-oracles", ok, "delay %.4f s (expect 0.100)", d ? *d : -1.0);
}

}  // namespace

std::vector<CheckResult> run_verify_suite() {
  std::vector<CheckResult> out;
  out.push_back(check_hover_fixed_point());
  out.push_back(check_actuator());
  out.push_back(check_mixer_roundtrip());
  out.push_back(check_quat_norm());
  out.push_back(check_energy());
  out.push_back(check_gradients());
  out.push_back(check_reward_oracle());
  out.push_back(check_gae_bruteforce());
  out.push_back(check_metric_oracles());
  return out;
}

bool print_results(const std::vector<CheckResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %-28s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.pass;
  }
  return all;
}

}  // namespace quadrl
