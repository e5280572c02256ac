#include "quadrl/sim/disturbance.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

std::string to_string(DisturbanceMode m) {
  switch (m) {
    case DisturbanceMode::None: return "none";
    case DisturbanceMode::ConstantWrench: return "constant_wrench";
    case DisturbanceMode::UniformRandom: return "uniform_random";
    case DisturbanceMode::PayloadCentral: return "payload_central";
    case DisturbanceMode::PayloadOffset: return "payload_offset";
    case DisturbanceMode::Pendulum: return "pendulum";
  }
  return "none";
}

DisturbanceMode disturbance_mode_from_string(const std::string& s) {
  if (s == "none") return DisturbanceMode::None;
  if (s == "constant_wrench") return DisturbanceMode::ConstantWrench;
  if (s == "uniform_random") return DisturbanceMode::UniformRandom;
  if (s == "payload_central") return DisturbanceMode::PayloadCentral;
  if (s == "payload_offset") return DisturbanceMode::PayloadOffset;
  if (s == "pendulum") return DisturbanceMode::Pendulum;
  throw ConfigError("unknown disturbance mode '" + s + "'");
}

void DisturbanceSpec::validate() const {
  if (force_range < 0 || torque_range < 0)
    throw ConfigError("disturbance ranges must be non-negative");
  if (payload_fraction < 0)
    throw ConfigError("payload_fraction must be non-negative");
  if (!constant.finite()) throw ConfigError("constant wrench must be finite");
}

DisturbanceRealization sample_episode_disturbance(const DisturbanceSpec& spec,
                                                  const PhysicalParams& p, Rng& rng) {
  DisturbanceRealization out;
  switch (spec.mode) {
    case DisturbanceMode::None:
    case DisturbanceMode::Pendulum:
      break;  // pendulum wrench comes from the tether model, not from here
    case DisturbanceMode::ConstantWrench:
      out.base = spec.constant;
      break;
    case DisturbanceMode::UniformRandom:
      out.base.force = rng.uniform_vec3(-spec.force_range, spec.force_range);
      out.base.torque = rng.uniform_vec3(-spec.torque_range, spec.torque_range);
      break;
    case DisturbanceMode::PayloadCentral:
    case DisturbanceMode::PayloadOffset:
      out.base.force = {0.0, 0.0, -spec.payload_fraction * p.m * p.g};
      break;
  }
  return out;
}

Wrench realize_disturbance(const DisturbanceSpec& spec,
                           const DisturbanceRealization& real,
                           const RigidBodyState& state) {
  Wrench w = real.base;
  if (spec.mode == DisturbanceMode::PayloadOffset) {
    // Weight acts at a body-fixed point: tau = r x f with f in body axes.
    const Vec3 f_body = state.q.rotate_inv(w.force);
    w.torque = spec.offset_point.cross(f_body);
  }
  return w;
}

Wrench disturbance_wrench(const DisturbanceSpec& spec, const PhysicalParams& p,
                          Rng& rng, const RigidBodyState& state) {
  return realize_disturbance(spec, sample_episode_disturbance(spec, p, rng), state);
}

}  // namespace quadrl
