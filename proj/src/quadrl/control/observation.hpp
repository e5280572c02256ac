#pragma once

#include <array>
#include <cstring>
#include <span>
#include <vector>

#include "quadrl/control/action.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/sim/rigid_body.hpp"

namespace quadrl {

inline constexpr int kFrameBaseWidth = 22;   // pos_err 3 | rot 9 | v 3 | w 3 | prev action 4
inline constexpr int kFrameWrenchWidth = 28; // base + 6-value wrench channel
inline constexpr int kStackDepth = 32;

struct NoiseConfig {
  bool enabled = true;
  double pos = 0.001;      // m
  double orient = 0.0003;  // rad, small-angle rotation composed with attitude
  double vel = 0.003;      // m/s
  double angvel = 0.002;   // rad/s
};

// One 22-value observation frame. Layout:
//   [0..2]   position error (p - ref), world
//   [3..11]  rotation matrix body->world, row-major
//   [12..14] linear velocity, world
//   [15..17] angular velocity, body
//   [18..21] previous outer action (thrust, rates)
struct ObservationFrame {
  std::array<double, kFrameBaseWidth> v{};

  Vec3 pos_err() const { return {v[0], v[1], v[2]}; }
  Vec3 vel() const { return {v[12], v[13], v[14]}; }
  Vec3 angvel() const { return {v[15], v[16], v[17]}; }
};

ObservationFrame build_observation(const RigidBodyState& state, const Vec3& ref_pos,
                                   const OuterAction& prev_action,
                                   const NoiseConfig& noise, Rng& rng);

// FIFO window of the most recent `depth` frames, oldest first, zero-padded
// until `depth` frames exist. Frame width is fixed per instance (22 or 28).
class FrameStack {
 public:
  FrameStack(int width, int depth = kStackDepth);

  void reset();
  void push(std::span<const double> frame);  // throws ShapeError on width mismatch
  void flatten(double* out) const;           // depth*width values
  void newest(double* out) const;            // most recent frame (width values)

  int width() const { return width_; }
  int depth() const { return depth_; }
  int count() const { return count_; }       // real (non-padding) frames

 private:
  int width_, depth_;
  int count_ = 0;
  int head_ = 0;  // index of the slot the next push writes
  std::vector<double> buf_;
};

}  // namespace quadrl
