#pragma once

#include <array>
#include <cstdint>

#include "quadrl/control/action.hpp"
#include "quadrl/control/mixer.hpp"
#include "quadrl/control/observation.hpp"
#include "quadrl/control/rate_pid.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/rl/reward.hpp"
#include "quadrl/sim/disturbance.hpp"
#include "quadrl/sim/pendulum.hpp"
#include "quadrl/sim/rigid_body.hpp"
#include "quadrl/sim/rotor.hpp"

namespace quadrl {

enum class ObsMode { Plain, WithWrench };            // frame width 22 or 28
enum class WrenchSource { None, TrueOracle, External };

struct SpawnConfig {
  double pos_radius = 0.1;      // m, uniform box around the reference
  double tilt_sigma = 0.05;     // rad
  double vel_sigma = 0.1;       // m/s
  double angvel_sigma = 0.2;    // rad/s
  bool at_rest = false;         // evaluation: exact reference, zero rates
};

// Fixed scaling applied to the wrench observation channel so force and
// moment values land near unit scale for the network (the DR training
// ranges +-0.1 N / +-0.001 N*m map to +-1).
struct WrenchObsScale {
  double force = 10.0;
  double torque = 1000.0;
};

struct EnvConfig {
  PhysicalParams phys;
  DisturbanceSpec disturbance;
  PendulumPayload pendulum;     // active when disturbance.mode == Pendulum
  NoiseConfig noise;
  RatePidGains pid;
  RewardCoeffs reward;
  SpawnConfig spawn;
  ActionConfig action;
  WrenchObsScale wrench_scale;
  ObsMode obs_mode = ObsMode::Plain;
  WrenchSource wrench_source = WrenchSource::None;
  double dt = 0.002;            // physics step
  int decimation = 10;          // physics steps per control tick (50 Hz control)
  double episode_s = 5.0;
  double plant_thrust_scale = 1.0;  // unmodeled actuator effectiveness

  int frame_width() const {
    return obs_mode == ObsMode::Plain ? kFrameBaseWidth : kFrameWrenchWidth;
  }
  int max_ticks() const {
    return static_cast<int>(episode_s / (dt * decimation) + 0.5);
  }
  void validate() const;
};

// One simulated vehicle with its cascaded control plumbing: 500 Hz physics
// (rate PID -> mixer -> actuator lag -> rigid body), 50 Hz outer-loop
// interface, observation stacking, reward and termination. Each instance
// owns a private rng stream; a vector of instances can be stepped in
// parallel with no shared state.
class QuadEnv {
 public:
  QuadEnv(const EnvConfig& cfg, std::uint64_t seed);

  void reset();

  struct StepOut {
    double reward = 0.0;
    bool crashed = false;
    bool timeout = false;
    bool done() const { return crashed || timeout; }
  };
  StepOut step(const OuterAction& a);

  // Stacked observation window, oldest frame first. In External mode the
  // wrench channel must be provided via set_wrench_channel() after every
  // reset()/step() before the observation can be read.
  void obs_flat(double* out) const;
  void latest_row(double* out) const;  // newest pushed frame (frame_width values)
  void set_wrench_channel(const Wrench& w);
  bool awaiting_wrench_channel() const { return !frame_pushed_; }

  int frame_width() const { return cfg_.frame_width(); }
  int obs_dim() const { return cfg_.frame_width() * kStackDepth; }
  int frames_in_window() const { return stack_.count(); }

  const ObservationFrame& noisy_frame() const { return frame_; }
  const std::array<double, 4>& pwm() const { return pwm_; }
  const OuterAction& prev_action() const { return prev_action_; }
  const RigidBodyState& state() const { return body_; }
  const PendulumPayload& payload() const { return pend_; }
  Wrench true_disturbance() const;   // instantaneous, Mixed frame
  double measured_alt() const { return frame_.v[2] + ref_.z; }

  const Vec3& reference() const { return ref_; }
  void set_reference(const Vec3& r) { ref_ = r; }

  // Scales the sampled episode disturbance (training curricula ramp this
  // from 0 to 1; evaluation always runs at 1). Takes effect at reset.
  void set_disturbance_scale(double s) { dist_scale_ = s; }

  int tick() const { return tick_; }
  double time() const { return tick_ * cfg_.dt * cfg_.decimation; }
  const EnvConfig& config() const { return cfg_; }
  const ActionSquash& squash() const { return squash_; }

 private:
  void build_frame();
  void push_frame();

  EnvConfig cfg_;
  Rng rng_;
  MotorMixer mixer_;
  ActionSquash squash_;
  double hover_omega_;

  RigidBodyState body_;
  RotorState rotor_;
  RatePidState pid_;
  PendulumPayload pend_;
  Wrench pend_wrench_;
  DisturbanceRealization dist_;
  OuterAction prev_action_;
  Vec3 ref_;
  int tick_ = 0;

  FrameStack stack_;
  ObservationFrame frame_;
  std::array<double, 4> pwm_{};
  Wrench channel_;
  bool frame_pushed_ = false;
  double dist_scale_ = 1.0;
};

}  // namespace quadrl
