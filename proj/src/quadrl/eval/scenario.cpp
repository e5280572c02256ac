#include "quadrl/eval/scenario.hpp"

#include <cmath>

#include "quadrl/error.hpp"
#include "quadrl/rl/runner.hpp"

namespace quadrl {

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::PositionHold: return "position-hold";
    case ScenarioKind::CentralPayload: return "central-payload";
    case ScenarioKind::AsymmetricPayload: return "asymmetric-payload";
    case ScenarioKind::SlungFigure8: return "slung-figure8";
  }
  return "position-hold";
}

std::string to_string(ControllerKind c) {
  switch (c) {
    case ControllerKind::Base: return "base";
    case ControllerKind::Robust: return "robust";
    case ControllerKind::AdaptiveOracle: return "adaptive-oracle";
    case ControllerKind::AdaptiveRdp: return "adaptive-rdp";
  }
  return "base";
}

ScenarioKind scenario_from_string(const std::string& s) {
  if (s == "position-hold") return ScenarioKind::PositionHold;
  if (s == "central-payload") return ScenarioKind::CentralPayload;
  if (s == "asymmetric-payload") return ScenarioKind::AsymmetricPayload;
  if (s == "slung-figure8") return ScenarioKind::SlungFigure8;
  throw ConfigError("unknown scenario '" + s + "'");
}

ControllerKind controller_from_string(const std::string& s) {
  if (s == "base") return ControllerKind::Base;
  if (s == "robust") return ControllerKind::Robust;
  if (s == "adaptive-oracle") return ControllerKind::AdaptiveOracle;
  if (s == "adaptive-rdp") return ControllerKind::AdaptiveRdp;
  throw ConfigError("unknown controller '" + s + "'");
}

void Scenario::validate() const {
  if (payload_fraction < 0) throw ConfigError("scenario: payload fraction < 0");
  if (kind == ScenarioKind::SlungFigure8) {
    if (traj.a <= 0 || traj.b <= 0) throw ConfigError("scenario: amplitudes must be positive");
    if (traj.period <= 0) throw ConfigError("scenario: period must be positive");
  }
  if (settle_s < 0 || hold_s <= 0 || n_periods <= 0)
    throw ConfigError("scenario: invalid timing");
}

EpisodeLog run_scenario(const Scenario& sc, const ControllerBundle& ctl,
                        const EnvConfig& base) {
  sc.validate();
  if (!ctl.policy_ck) throw ConfigError("run_scenario: missing policy checkpoint");
  if (sc.controller == ControllerKind::AdaptiveRdp && !ctl.rdp)
    throw ConfigError("run_scenario: adaptive-rdp requires an rdp model");

  EnvConfig env_cfg = base;
  env_cfg.spawn.at_rest = true;
  switch (sc.kind) {
    case ScenarioKind::PositionHold:
      env_cfg.disturbance.mode = DisturbanceMode::None;
      break;
    case ScenarioKind::CentralPayload:
      env_cfg.disturbance.mode = DisturbanceMode::PayloadCentral;
      env_cfg.disturbance.payload_fraction = sc.payload_fraction;
      break;
    case ScenarioKind::AsymmetricPayload:
      env_cfg.disturbance.mode = DisturbanceMode::PayloadOffset;
      env_cfg.disturbance.payload_fraction = sc.payload_fraction;
      env_cfg.disturbance.offset_point = sc.offset_point;
      break;
    case ScenarioKind::SlungFigure8:
      env_cfg.disturbance.mode = DisturbanceMode::Pendulum;
      break;
  }
  const bool adaptive = sc.controller == ControllerKind::AdaptiveOracle ||
                        sc.controller == ControllerKind::AdaptiveRdp;
  const bool rdp = sc.controller == ControllerKind::AdaptiveRdp;
  env_cfg.obs_mode = adaptive ? ObsMode::WithWrench : ObsMode::Plain;
  env_cfg.wrench_source = !adaptive ? WrenchSource::None
                          : rdp     ? WrenchSource::External
                                    : WrenchSource::TrueOracle;

  const double window_s =
      sc.kind == ScenarioKind::SlungFigure8 ? sc.n_periods * sc.traj.period : sc.hold_s;
  const double total_s = sc.settle_s + window_s;
  const double tick_dt = env_cfg.dt * env_cfg.decimation;
  const int n_ticks = static_cast<int>(std::round(total_s / tick_dt));
  env_cfg.episode_s = total_s + 1.0;  // the scenario loop owns the horizon
  env_cfg.validate();

  auto ref_at = [&](double t) -> Vec3 {
    if (sc.kind == ScenarioKind::SlungFigure8) {
      if (t <= sc.settle_s) return lissajous(0.0, sc.traj);
      return lissajous(t - sc.settle_s, sc.traj);
    }
    return {0.0, 0.0, 0.0};
  };

  QuadEnv env(env_cfg, Rng::derive(sc.seed, 0xe7a1).next_u64());
  env.set_reference(ref_at(0.0));
  env.reset();

  PolicyRunner runner(*ctl.policy_ck);
  if ((runner.obs_mode() == ObsMode::WithWrench) != adaptive)
    throw ConfigError("controller '" + to_string(sc.controller) +
                      "' does not match the checkpoint's observation contract");

  std::vector<RdpFeature> window;
  window.reserve(kRdpWindow);
  SmoothBuffer smoother(32);
  AltBiasState bias = ctl.alt_bias;

  EpisodeLog log;
  log.scenario = to_string(sc.kind);
  log.controller = to_string(sc.controller);
  log.seed = sc.seed;
  log.metric_window_start = sc.settle_s;

  Wrench raw, smoothed, corrected;
  auto estimate = [&]() {
    window.push_back(build_rdp_feature(env.noisy_frame(), env.pwm()));
    if (static_cast<int>(window.size()) > kRdpWindow)
      window.erase(window.begin());
    raw = ctl.rdp->predict(window);
    smoothed = smoother.push(raw);
    if (ctl.use_alt_bias) bias.update(env.reference().z, env.measured_alt());
    corrected = corrected_prediction(ctl.bridge, bias, smoothed);
    env.set_wrench_channel(corrected);
  };

  if (rdp) estimate();

  for (int k = 0; k < n_ticks; ++k) {
    const double t = k * tick_dt;
    const OuterAction action = runner.act(env);

    EpisodeTick tk;
    tk.t = t;
    tk.ref = env.reference();
    tk.state = env.state();
    tk.action = action;
    tk.pwm = env.pwm();
    tk.true_wrench = env.true_disturbance();
    tk.raw_estimate = raw;
    tk.smoothed_estimate = smoothed;
    tk.corrected_estimate = corrected;
    tk.in_metric_window = t >= sc.settle_s - 1e-9;
    log.ticks.push_back(tk);

    env.set_reference(ref_at((k + 1) * tick_dt));
    const auto out = env.step(action);
    if (rdp) estimate();
    if (out.crashed) {
      log.crashed = true;
      break;
    }
  }
  return log;
}

}  // namespace quadrl
