#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "quadrl/env/vec_env.hpp"
#include "quadrl/error.hpp"
#include "quadrl/rl/ppo.hpp"

using namespace quadrl;

namespace {
EnvConfig base_cfg() {
  EnvConfig cfg;
  cfg.disturbance.mode = DisturbanceMode::UniformRandom;
  return cfg;
}

OuterAction hover_action(const EnvConfig& cfg) {
  OuterAction a;
  a.thrust = cfg.phys.hover_thrust();
  return a;
}
}  // namespace

TEST_CASE("env trajectories are deterministic per seed") {
  const EnvConfig cfg = base_cfg();
  QuadEnv a(cfg, 1234), b(cfg, 1234), c(cfg, 999);
  const OuterAction act = hover_action(cfg);
  bool differs = false;
  for (int t = 0; t < 20; ++t) {
    a.step(act);
    b.step(act);
    c.step(act);
    CHECK(a.state().p.x == b.state().p.x);
    CHECK(a.state().q.w == b.state().q.w);
    CHECK(a.noisy_frame().v[0] == b.noisy_frame().v[0]);
    if (a.state().p.x != c.state().p.x) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("parallel env stepping is bitwise identical to serial") {
  const EnvConfig cfg = base_cfg();
  VecEnv vs(cfg, 8, 42), vp(cfg, 8, 42);
  std::vector<OuterAction> actions(8, hover_action(cfg));
  for (auto& a : actions) a.rates = {0.1, -0.05, 0.02};
  std::vector<QuadEnv::StepOut> outs_s, outs_p;
  Mat xs, xp;
  for (int t = 0; t < 15; ++t) {
    vs.step_all(actions, outs_s, /*parallel=*/false);
    vp.step_all(actions, outs_p, /*parallel=*/true);
    for (int e = 0; e < 8; ++e) {
      CHECK(outs_s[e].reward == outs_p[e].reward);
      if (outs_s[e].done()) {
        vs.env(e).reset();
        vp.env(e).reset();
      }
    }
    vs.obs_matrix(xs);
    vp.obs_matrix(xp);
    for (size_t i = 0; i < xs.d.size(); ++i) CHECK(xs.d[i] == xp.d[i]);
  }
}

TEST_CASE("oracle mode appends the scaled true wrench") {
  EnvConfig cfg = base_cfg();
  cfg.disturbance.mode = DisturbanceMode::PayloadCentral;
  cfg.disturbance.payload_fraction = 0.15;
  cfg.obs_mode = ObsMode::WithWrench;
  cfg.wrench_source = WrenchSource::TrueOracle;
  QuadEnv env(cfg, 7);
  CHECK(env.frame_width() == 28);
  std::vector<double> obs(env.obs_dim());
  env.obs_flat(obs.data());
  // newest frame is the last row; channel occupies its final 6 values
  const double* last = obs.data() + (kStackDepth - 1) * 28;
  const double expect_fz = -0.15 * cfg.phys.m * cfg.phys.g * cfg.wrench_scale.force;
  CHECK(last[22 + 2] == doctest::Approx(expect_fz).epsilon(1e-12));
  CHECK(last[22 + 0] == 0.0);
  CHECK(last[22 + 3] == 0.0);
}

TEST_CASE("external wrench channel gating") {
  EnvConfig cfg = base_cfg();
  cfg.disturbance.mode = DisturbanceMode::None;
  cfg.obs_mode = ObsMode::WithWrench;
  cfg.wrench_source = WrenchSource::External;
  QuadEnv env(cfg, 7);
  std::vector<double> obs(env.obs_dim());
  CHECK(env.awaiting_wrench_channel());
  CHECK_THROWS_AS(env.obs_flat(obs.data()), SimFault);
  env.set_wrench_channel(Wrench{{0, 0, -0.05}, {0, 0, 0}});
  env.obs_flat(obs.data());
  const double* last = obs.data() + (kStackDepth - 1) * 28;
  CHECK(last[24] == doctest::Approx(-0.05 * cfg.wrench_scale.force));
  env.step(hover_action(cfg));
  CHECK(env.awaiting_wrench_channel());

  // plain-mode envs reject external channels
  EnvConfig plain = base_cfg();
  QuadEnv penv(plain, 7);
  CHECK_THROWS_AS(penv.set_wrench_channel(Wrench{}), SimFault);
}

TEST_CASE("config validation") {
  EnvConfig cfg = base_cfg();
  cfg.obs_mode = ObsMode::WithWrench;
  cfg.wrench_source = WrenchSource::None;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.obs_mode = ObsMode::Plain;
  cfg.wrench_source = WrenchSource::TrueOracle;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  EnvConfig ok = base_cfg();
  CHECK(ok.max_ticks() == 250);
}

TEST_CASE("rollout buffer reconstructs the exact observation windows") {
  // Regression test: gathered update-time windows must match the stacked
  // observations the policy saw during collection, across episode resets.
  EnvConfig cfg = base_cfg();
  cfg.spawn.pos_radius = 0.02;
  const int n = 3, h = 12;
  VecEnv venv(cfg, n, 77);
  RolloutBuffer buf(n, h, cfg.frame_width(), kStackDepth);

  std::vector<double> window(venv.obs_dim());
  for (int e = 0; e < n; ++e) {
    venv.env(e).obs_flat(window.data());
    buf.set_prefix_from_window(e, window.data());
  }

  std::vector<std::vector<double>> seen;  // obs actually used, sample-major
  std::vector<OuterAction> actions(n);
  std::vector<QuadEnv::StepOut> outs(n);
  Rng arng(5);
  for (int t = 0; t < h; ++t) {
    for (int e = 0; e < n; ++e) {
      venv.env(e).obs_flat(window.data());
      seen.push_back(window);
      buf.age[buf.idx(e, t)] = venv.env(e).frames_in_window();
      // aggressive random rates so some episodes crash mid-rollout
      actions[e] = hover_action(cfg);
      actions[e].rates = {arng.uniform(-4, 4), arng.uniform(-4, 4), 0};
    }
    venv.step_all(actions, outs);
    for (int e = 0; e < n; ++e) {
      if (outs[e].done()) venv.env(e).reset();
      if (t + 1 < h) venv.env(e).latest_row(buf.frame_slot(e, kStackDepth + t));
    }
  }

  std::vector<int> idx(n * h);
  // seen[] is ordered (t, e); buffer indices are (e, t)
  std::vector<int> order;
  for (int t = 0; t < h; ++t)
    for (int e = 0; e < n; ++e) order.push_back(buf.idx(e, t));
  for (size_t k = 0; k < order.size(); ++k) idx[k] = order[k];

  Mat x;
  buf.gather_windows(idx, x);
  REQUIRE(x.rows == static_cast<int>(seen.size()));
  for (int k = 0; k < x.rows; ++k)
    for (int j = 0; j < x.cols; ++j)
      CHECK(x.at(k, j) == seen[k][j]);
}

TEST_CASE("hover near-equilibrium sanity") {
  EnvConfig cfg;
  cfg.disturbance.mode = DisturbanceMode::None;
  cfg.noise.enabled = false;
  cfg.spawn.at_rest = true;
  QuadEnv env(cfg, 1);
  const OuterAction act = hover_action(cfg);
  for (int t = 0; t < 100; ++t) {
    const auto out = env.step(act);
    CHECK_FALSE(out.crashed);
  }
  CHECK(env.state().p.norm() < 0.01);
}

TEST_CASE("plant thrust scale produces the configured deficit") {
  EnvConfig cfg;
  cfg.disturbance.mode = DisturbanceMode::None;
  cfg.noise.enabled = false;
  cfg.spawn.at_rest = true;
  cfg.plant_thrust_scale = 0.95;
  QuadEnv env(cfg, 1);
  const OuterAction act = hover_action(cfg);
  for (int t = 0; t < 25; ++t) env.step(act);
  // 5% thrust deficit: expected sag ~ 0.5 * 0.05 g t^2 at constant command
  CHECK(env.state().p.z < -0.02);
}
