#pragma once

#include <string>
#include <vector>

#include "quadrl/env/quad_env.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/rdp/feature.hpp"
#include "quadrl/rl/policy.hpp"

namespace quadrl {

struct RdpEpisode {
  std::uint64_t seed = 0;
  std::string mode;           // disturbance mode label
  bool crashed = false;
  std::vector<RdpFeature> features;                      // one per control tick
  std::vector<std::array<double, kRdpTargetDim>> targets;  // true wrench, Mixed
};

struct RdpDataset {
  std::vector<RdpEpisode> episodes;

  long total_ticks() const;
  void save(const std::string& path) const;   // self-describing columnar text
  static RdpDataset load(const std::string& path);
};

// Roll out the oracle policy (deterministic mean actions) under per-episode
// randomized disturbances and record (feature, true wrench) pairs at 50 Hz.
// Crashed episodes are kept and flagged. Episodes are independent and
// collected in parallel; episode i is always driven by stream (seed, i).
RdpDataset collect_rdp_dataset(const Checkpoint& oracle_ck, const EnvConfig& env_base,
                               int n_episodes, const DisturbanceSpec& family,
                               std::uint64_t seed, bool parallel = true);

}  // namespace quadrl
