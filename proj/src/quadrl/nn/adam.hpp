#pragma once

#include <vector>

#include "quadrl/nn/dense.hpp"

namespace quadrl {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over a fixed set of registered tensors.
// Deterministic: identical inputs and step counts give identical updates.
class AdamOpt {
 public:
  explicit AdamOpt(AdamConfig cfg = {}) : cfg_(cfg) {}

  void add_params(const std::vector<ParamRef>& refs);
  void step();
  void zero_grad();

  // Global L2 norm of all registered gradients; scales them down to
  // `max_norm` when exceeded. Returns the pre-clip norm.
  double clip_grad_norm(double max_norm);

  long step_count() const { return t_; }
  AdamConfig& config() { return cfg_; }

 private:
  struct Slot {
    Mat* p;
    Mat* g;
    std::vector<double> m, v;
  };
  AdamConfig cfg_;
  std::vector<Slot> slots_;
  long t_ = 0;
};

}  // namespace quadrl
