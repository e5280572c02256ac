#include "quadrl/env/vec_env.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

VecEnv::VecEnv(const EnvConfig& cfg, int n, std::uint64_t seed) {
  envs_.reserve(n);
  for (int i = 0; i < n; ++i)
    envs_.push_back(std::make_unique<QuadEnv>(cfg, Rng::derive(seed, i).next_u64()));
}

void VecEnv::reset_all() {
  for (auto& e : envs_) e->reset();
}

void VecEnv::step_all(const std::vector<OuterAction>& actions,
                      std::vector<QuadEnv::StepOut>& outs, bool parallel) {
  if (static_cast<int>(actions.size()) != size())
    throw ShapeError("vec_env: action count mismatch");
  outs.resize(actions.size());
  if (!parallel || threads::num() <= 1) {
    step_all_serial(actions, outs);
    return;
  }
  const int n = size();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) outs[i] = envs_[i]->step(actions[i]);
}

void VecEnv::step_all_serial(const std::vector<OuterAction>& actions,
                             std::vector<QuadEnv::StepOut>& outs) {
  outs.resize(actions.size());
  for (int i = 0; i < size(); ++i) outs[i] = envs_[i]->step(actions[i]);
}

void VecEnv::obs_matrix(Mat& x) const {
  const int n = size(), d = obs_dim();
  if (x.rows != n || x.cols != d) x = Mat(n, d);
  for (int i = 0; i < n; ++i) envs_[i]->obs_flat(x.row(i));
}

}  // namespace quadrl
