#include "quadrl/io/experiment.hpp"

#include <cstdlib>

namespace quadrl {

ExperimentConfig ExperimentConfig::from_config(Config& c) {
  ExperimentConfig x;

  PhysicalParams& p = x.env.phys;
  p.m = c.get_double("physics", "mass", p.m);
  p.ixx = c.get_double("physics", "ixx", p.ixx);
  p.iyy = c.get_double("physics", "iyy", p.iyy);
  p.izz = c.get_double("physics", "izz", p.izz);
  p.k_t = c.get_double("physics", "k_t", p.k_t);
  p.k_q = c.get_double("physics", "k_q", p.k_q);
  p.l1 = c.get_double("physics", "l1", p.l1);
  p.l2 = c.get_double("physics", "l2", p.l2);
  p.x0 = c.get_double("physics", "x0", p.x0);
  p.y0 = c.get_double("physics", "y0", p.y0);
  p.f_min = c.get_double("physics", "f_min", p.f_min);
  p.f_max = c.get_double("physics", "f_max", p.f_max);
  p.tau_m = c.get_double("physics", "tau_m", p.tau_m);
  p.g = c.get_double("physics", "g", p.g);

  x.env.dt = c.get_double("sim", "dt", x.env.dt);
  x.env.decimation = static_cast<int>(c.get_long("sim", "decimation", x.env.decimation));
  x.env.episode_s = c.get_double("sim", "episode_s", x.env.episode_s);
  x.env.plant_thrust_scale =
      c.get_double("sim", "plant_thrust_scale", x.env.plant_thrust_scale);

  NoiseConfig& n = x.env.noise;
  n.enabled = c.get_bool("noise", "enabled", n.enabled);
  n.pos = c.get_double("noise", "pos", n.pos);
  n.orient = c.get_double("noise", "orient", n.orient);
  n.vel = c.get_double("noise", "vel", n.vel);
  n.angvel = c.get_double("noise", "angvel", n.angvel);

  RatePidGains& g = x.env.pid;
  g.kp = c.get_vec3("pid", "kp", g.kp);
  g.ki = c.get_vec3("pid", "ki", g.ki);
  g.kd = c.get_vec3("pid", "kd", g.kd);
  g.i_limit = c.get_vec3("pid", "i_limit", g.i_limit);
  g.out_limit = c.get_vec3("pid", "out_limit", g.out_limit);

  SpawnConfig& sp = x.env.spawn;
  sp.pos_radius = c.get_double("spawn", "pos_radius", sp.pos_radius);
  sp.tilt_sigma = c.get_double("spawn", "tilt_sigma", sp.tilt_sigma);
  sp.vel_sigma = c.get_double("spawn", "vel_sigma", sp.vel_sigma);
  sp.angvel_sigma = c.get_double("spawn", "angvel_sigma", sp.angvel_sigma);

  x.env.action.rate_max = c.get_double("action", "rate_max", x.env.action.rate_max);
  x.env.wrench_scale.force =
      c.get_double("action", "wrench_obs_force_scale", x.env.wrench_scale.force);
  x.env.wrench_scale.torque =
      c.get_double("action", "wrench_obs_torque_scale", x.env.wrench_scale.torque);

  RewardCoeffs& r = x.env.reward;
  r.c_p = c.get_double("reward", "c_p", r.c_p);
  r.c_psi = c.get_double("reward", "c_psi", r.c_psi);
  r.c_v = c.get_double("reward", "c_v", r.c_v);
  r.c_w = c.get_double("reward", "c_w", r.c_w);
  r.c_t = c.get_double("reward", "c_t", r.c_t);
  r.c_dw = c.get_double("reward", "c_dw", r.c_dw);
  r.c_s = c.get_double("reward", "c_s", r.c_s);
  r.c_d = c.get_double("reward", "c_d", r.c_d);
  r.boundary = c.get_double("reward", "boundary", r.boundary);

  DisturbanceSpec& d = x.env.disturbance;
  d.mode = disturbance_mode_from_string(
      c.get_string("disturbance", "mode", to_string(d.mode)));
  d.force_range = c.get_double("disturbance", "force_range", d.force_range);
  d.torque_range = c.get_double("disturbance", "torque_range", d.torque_range);
  d.payload_fraction =
      c.get_double("disturbance", "payload_fraction", d.payload_fraction);
  d.offset_point = c.get_vec3("disturbance", "offset_point", d.offset_point);

  PendulumPayload& pl = x.env.pendulum;
  pl.mass = c.get_double("pendulum", "mass", pl.mass);
  pl.tether_length = c.get_double("pendulum", "tether_length", pl.tether_length);
  pl.attach_offset = c.get_vec3("pendulum", "attach_offset", pl.attach_offset);
  pl.stiffness = c.get_double("pendulum", "stiffness", pl.stiffness);
  pl.damping = c.get_double("pendulum", "damping", pl.damping);

  PpoConfig& o = x.ppo;
  o.lr = c.get_double("ppo", "lr", o.lr);
  o.gamma = c.get_double("ppo", "gamma", o.gamma);
  o.lambda = c.get_double("ppo", "lambda", o.lambda);
  o.epochs = static_cast<int>(c.get_long("ppo", "epochs", o.epochs));
  o.minibatches = static_cast<int>(c.get_long("ppo", "minibatches", o.minibatches));
  o.clip = c.get_double("ppo", "clip", o.clip);
  o.value_clip = c.get_double("ppo", "value_clip", o.value_clip);
  o.entropy_coef = c.get_double("ppo", "entropy_coef", o.entropy_coef);
  o.max_grad_norm = c.get_double("ppo", "max_grad_norm", o.max_grad_norm);
  o.kl_target = c.get_double("ppo", "kl_target", o.kl_target);
  o.advantage_norm = c.get_bool("ppo", "advantage_norm", o.advantage_norm);
  o.total_env_steps = c.get_long("ppo", "total_env_steps", o.total_env_steps);
  o.num_envs = static_cast<int>(c.get_long("ppo", "num_envs", o.num_envs));
  o.rollout_steps = static_cast<int>(c.get_long("ppo", "rollout_steps", o.rollout_steps));
  o.log_std_init = c.get_double("ppo", "log_std_init", o.log_std_init);
  o.dr_warmup_iters =
      static_cast<int>(c.get_long("ppo", "dr_warmup_iters", o.dr_warmup_iters));

  x.net.arch = net_arch_from_string(c.get_string("net", "arch", to_string(x.net.arch)));
  x.net.hidden = static_cast<int>(c.get_long("net", "hidden", x.net.hidden));
  x.net.layers = static_cast<int>(c.get_long("net", "layers", x.net.layers));

  EarlyStopConfig& e = x.early_stop;
  e.enabled = c.get_bool("early_stop", "enabled", e.enabled);
  e.survival = c.get_double("early_stop", "survival", e.survival);
  e.mean_return = c.get_double("early_stop", "mean_return", e.mean_return);
  e.patience = static_cast<int>(c.get_long("early_stop", "patience", e.patience));

  RdpTrainConfig& rd = x.rdp;
  rd.hidden = static_cast<int>(c.get_long("rdp", "hidden", rd.hidden));
  rd.train_steps = c.get_long("rdp", "train_steps", rd.train_steps);
  rd.batch = static_cast<int>(c.get_long("rdp", "batch", rd.batch));
  rd.lr = c.get_double("rdp", "lr", rd.lr);
  rd.val_fraction = c.get_double("rdp", "val_fraction", rd.val_fraction);
  rd.eval_every = static_cast<int>(c.get_long("rdp", "eval_every", rd.eval_every));
  rd.include_crashed = c.get_bool("rdp", "include_crashed", rd.include_crashed);
  x.rdp_episodes = static_cast<int>(c.get_long("rdp", "episodes", x.rdp_episodes));
  x.rdp_family.mode = DisturbanceMode::UniformRandom;
  x.rdp_family.force_range =
      c.get_double("rdp", "family_force_range", x.env.disturbance.force_range);
  x.rdp_family.torque_range =
      c.get_double("rdp", "family_torque_range", x.env.disturbance.torque_range);

  x.settle_s = c.get_double("eval", "settle_s", x.settle_s);
  x.hold_s = c.get_double("eval", "hold_s", x.hold_s);
  x.n_periods = c.get_double("eval", "n_periods", x.n_periods);
  x.traj.a = c.get_double("eval", "traj_a", x.traj.a);
  x.traj.b = c.get_double("eval", "traj_b", x.traj.b);
  x.traj.period = c.get_double("eval", "traj_period", x.traj.period);
  x.traj.z_ref = c.get_double("eval", "traj_z_ref", x.traj.z_ref);

  x.out_root = c.get_string("run", "out_root", x.out_root);
  x.deterministic = c.get_bool("run", "deterministic", x.deterministic);
  x.threads = static_cast<int>(c.get_long("run", "threads", x.threads));

  return x;
}

ExperimentConfig ExperimentConfig::load(const std::string& path, Config* echo_out) {
  Config c = path.empty() ? Config() : Config::parse_file(path);
  ExperimentConfig x = from_config(c);
  c.finish();
  if (echo_out) *echo_out = c;
  return x;
}

void apply_runtime_settings(ExperimentConfig& cfg) {
  if (const char* t = std::getenv("QUADRL_THREADS")) cfg.threads = std::atoi(t);
  if (const char* o = std::getenv("QUADRL_OUT_ROOT")) cfg.out_root = o;
  if (cfg.deterministic)
    threads::set_num(1);
  else if (cfg.threads > 0)
    threads::set_num(cfg.threads);
}

}  // namespace quadrl
