#include "quadrl/env/quad_env.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

void EnvConfig::validate() const {
  phys.validate();
  disturbance.validate();
  if (dt <= 0 || decimation < 1 || episode_s <= 0)
    throw ConfigError("sim: dt, decimation and episode length must be positive");
  if (obs_mode == ObsMode::WithWrench && wrench_source == WrenchSource::None)
    throw ConfigError("sim: wrench-augmented observations need a wrench source");
  if (obs_mode == ObsMode::Plain && wrench_source != WrenchSource::None)
    throw ConfigError("sim: wrench source configured without the wrench channel");
  if (plant_thrust_scale <= 0)
    throw ConfigError("sim: plant_thrust_scale must be positive");
}

QuadEnv::QuadEnv(const EnvConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      rng_(Rng::derive(seed, 0x9e3779b9)),
      mixer_(cfg.phys),
      squash_(cfg.phys, cfg.action),
      hover_omega_(hover_speed(cfg.phys)),
      stack_(cfg.frame_width(), kStackDepth) {
  cfg_.validate();
  reset();
}

void QuadEnv::reset() {
  tick_ = 0;
  pid_.reset();
  stack_.reset();

  body_ = RigidBodyState{};
  body_.p = ref_;
  if (!cfg_.spawn.at_rest) {
    body_.p += rng_.uniform_vec3(-cfg_.spawn.pos_radius, cfg_.spawn.pos_radius);
    body_.q = Quat::from_axis_angle(rng_.normal_vec3(cfg_.spawn.tilt_sigma));
    body_.q.normalize();
    body_.v = rng_.normal_vec3(cfg_.spawn.vel_sigma);
    body_.w = rng_.normal_vec3(cfg_.spawn.angvel_sigma);
  }

  rotor_.omega = rotor_.omega_cmd = {hover_omega_, hover_omega_, hover_omega_, hover_omega_};
  pwm_ = pwm_from_command(rotor_.omega_cmd, cfg_.phys);

  dist_ = sample_episode_disturbance(cfg_.disturbance, cfg_.phys, rng_);
  dist_.base.force *= dist_scale_;
  dist_.base.torque *= dist_scale_;
  pend_wrench_ = Wrench{};
  if (cfg_.disturbance.mode == DisturbanceMode::Pendulum)
    pend_ = pendulum_init_hanging(cfg_.pendulum, body_, cfg_.phys.g);

  // Neutral previous action: hover thrust, zero rates.
  prev_action_ = OuterAction{};
  prev_action_.thrust = cfg_.phys.hover_thrust();

  build_frame();
  if (cfg_.wrench_source != WrenchSource::External) push_frame();
}

QuadEnv::StepOut QuadEnv::step(const OuterAction& a) {
  const OuterAction prev = prev_action_;
  for (int k = 0; k < cfg_.decimation; ++k) {
    const Vec3 tau_cmd = rate_pid_step(body_.w, a, cfg_.pid, pid_, cfg_.dt);
    const MotorCommand mc = mixer_.mix(a.thrust, tau_cmd);
    rotor_.omega_cmd = mc.omega_cmd;
    pwm_ = mc.pwm;
    rotor_ = actuator_step(rotor_, cfg_.dt, cfg_.phys.tau_m);

    Wrench aero = aero_wrench(rotor_.omega, cfg_.phys);
    aero.force *= cfg_.plant_thrust_scale;
    aero.torque *= cfg_.plant_thrust_scale;
    Wrench total{body_.q.rotate(aero.force), aero.torque, WrenchFrame::Mixed};

    if (cfg_.disturbance.mode == DisturbanceMode::Pendulum) {
      auto [pnext, reaction] = pendulum_step(pend_, body_, cfg_.phys.g, cfg_.dt);
      pend_ = pnext;
      pend_wrench_ = reaction;
      total += reaction;
    } else {
      total += realize_disturbance(cfg_.disturbance, dist_, body_);
    }
    body_ = step_rigid_body(body_, total, cfg_.phys, cfg_.dt);
  }
  ++tick_;

  const EpisodeOutcome outcome =
      terminal_check(body_, ref_, tick_, cfg_.max_ticks(), cfg_.reward.boundary);
  StepOut out;
  out.crashed = outcome == EpisodeOutcome::Crashed;
  out.timeout = outcome == EpisodeOutcome::Timeout;
  out.reward = compute_reward(body_, ref_, a, prev, out.crashed, cfg_.reward);
  prev_action_ = a;

  build_frame();
  if (cfg_.wrench_source != WrenchSource::External) push_frame();
  return out;
}

Wrench QuadEnv::true_disturbance() const {
  if (cfg_.disturbance.mode == DisturbanceMode::Pendulum) return pend_wrench_;
  return realize_disturbance(cfg_.disturbance, dist_, body_);
}

void QuadEnv::build_frame() {
  frame_ = build_observation(body_, ref_, prev_action_, cfg_.noise, rng_);
  frame_pushed_ = false;
  if (cfg_.wrench_source == WrenchSource::TrueOracle) channel_ = true_disturbance();
}

void QuadEnv::push_frame() {
  if (cfg_.obs_mode == ObsMode::Plain) {
    stack_.push({frame_.v.data(), static_cast<size_t>(kFrameBaseWidth)});
  } else {
    std::array<double, kFrameWrenchWidth> row;
    for (int i = 0; i < kFrameBaseWidth; ++i) row[i] = frame_.v[i];
    for (int i = 0; i < 3; ++i) {
      row[kFrameBaseWidth + i] = channel_.force[i] * cfg_.wrench_scale.force;
      row[kFrameBaseWidth + 3 + i] = channel_.torque[i] * cfg_.wrench_scale.torque;
    }
    stack_.push({row.data(), row.size()});
  }
  frame_pushed_ = true;
}

void QuadEnv::set_wrench_channel(const Wrench& w) {
  if (cfg_.wrench_source != WrenchSource::External)
    throw SimFault("wrench channel is not externally sourced in this mode");
  channel_ = w;
  push_frame();
}

void QuadEnv::obs_flat(double* out) const {
  if (!frame_pushed_)
    throw SimFault("observation read before the wrench channel was provided");
  stack_.flatten(out);
}

void QuadEnv::latest_row(double* out) const {
  if (!frame_pushed_)
    throw SimFault("frame read before the wrench channel was provided");
  stack_.newest(out);
}

}  // namespace quadrl
