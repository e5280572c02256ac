#include "quadrl/control/observation.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

ObservationFrame build_observation(const RigidBodyState& state, const Vec3& ref_pos,
                                   const OuterAction& prev_action,
                                   const NoiseConfig& noise, Rng& rng) {
  ObservationFrame f;
  Vec3 pos_err = state.p - ref_pos;
  Quat q = state.q;
  Vec3 vel = state.v;
  Vec3 angvel = state.w;

  if (noise.enabled) {
    pos_err += rng.normal_vec3(noise.pos);
    q = q * Quat::from_axis_angle(rng.normal_vec3(noise.orient));
    q.normalize();
    vel += rng.normal_vec3(noise.vel);
    angvel += rng.normal_vec3(noise.angvel);
  }

  f.v[0] = pos_err.x; f.v[1] = pos_err.y; f.v[2] = pos_err.z;
  const Mat3 r = q.to_rot();
  for (int i = 0; i < 9; ++i) f.v[3 + i] = r.m[i];
  f.v[12] = vel.x; f.v[13] = vel.y; f.v[14] = vel.z;
  f.v[15] = angvel.x; f.v[16] = angvel.y; f.v[17] = angvel.z;
  const auto a = prev_action.flat();
  for (int i = 0; i < 4; ++i) f.v[18 + i] = a[i];
  return f;
}

FrameStack::FrameStack(int width, int depth)
    : width_(width), depth_(depth),
      buf_(static_cast<size_t>(width) * depth, 0.0) {}

void FrameStack::reset() {
  count_ = 0;
  head_ = 0;
  std::fill(buf_.begin(), buf_.end(), 0.0);
}

void FrameStack::push(std::span<const double> frame) {
  if (static_cast<int>(frame.size()) != width_)
    throw ShapeError("frame width mismatch in stack push");
  std::memcpy(buf_.data() + static_cast<size_t>(head_) * width_, frame.data(),
              sizeof(double) * width_);
  head_ = (head_ + 1) % depth_;
  if (count_ < depth_) ++count_;
}

void FrameStack::newest(double* out) const {
  if (count_ == 0) {
    std::memset(out, 0, sizeof(double) * width_);
    return;
  }
  const int slot = (head_ + depth_ - 1) % depth_;
  std::memcpy(out, buf_.data() + static_cast<size_t>(slot) * width_,
              sizeof(double) * width_);
}

void FrameStack::flatten(double* out) const {
  const int pad = depth_ - count_;
  std::memset(out, 0, sizeof(double) * static_cast<size_t>(pad) * width_);
  // Oldest stored frame sits at the slot `head_` points at once full.
  for (int i = 0; i < count_; ++i) {
    const int slot = (head_ + depth_ - count_ + i) % depth_;
    std::memcpy(out + static_cast<size_t>(pad + i) * width_,
                buf_.data() + static_cast<size_t>(slot) * width_,
                sizeof(double) * width_);
  }
}

}  // namespace quadrl
