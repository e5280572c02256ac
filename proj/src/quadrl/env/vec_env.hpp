#pragma once

#include <memory>
#include <vector>

#include "quadrl/env/quad_env.hpp"
#include "quadrl/math/mat.hpp"

namespace quadrl {

// A batch of independent environments. Stepping is data-parallel: each env
// owns its state and rng stream, so the OpenMP path is bitwise identical to
// the serial reference for any thread count.
class VecEnv {
 public:
  VecEnv(const EnvConfig& cfg, int n, std::uint64_t seed);

  void reset_all();
  void step_all(const std::vector<OuterAction>& actions,
                std::vector<QuadEnv::StepOut>& outs, bool parallel = true);
  void step_all_serial(const std::vector<OuterAction>& actions,
                       std::vector<QuadEnv::StepOut>& outs);

  // Stacked observations, one row per env.
  void obs_matrix(Mat& x) const;

  QuadEnv& env(int i) { return *envs_[i]; }
  const QuadEnv& env(int i) const { return *envs_[i]; }
  int size() const { return static_cast<int>(envs_.size()); }
  int obs_dim() const { return envs_[0]->obs_dim(); }

 private:
  std::vector<std::unique_ptr<QuadEnv>> envs_;
};

}  // namespace quadrl
