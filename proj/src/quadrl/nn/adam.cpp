#include "quadrl/nn/adam.hpp"

#include <cmath>

namespace quadrl {

void AdamOpt::add_params(const std::vector<ParamRef>& refs) {
  for (const auto& r : refs) {
    Slot s;
    s.p = r.value;
    s.g = r.grad;
    s.m.assign(r.value->size(), 0.0);
    s.v.assign(r.value->size(), 0.0);
    slots_.push_back(std::move(s));
  }
}

void AdamOpt::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (auto& s : slots_) {
    double* p = s.p->d.data();
    const double* g = s.g->d.data();
    for (size_t i = 0; i < s.m.size(); ++i) {
      s.m[i] = cfg_.beta1 * s.m[i] + (1.0 - cfg_.beta1) * g[i];
      s.v[i] = cfg_.beta2 * s.v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
      const double mhat = s.m[i] / bc1;
      const double vhat = s.v[i] / bc2;
      p[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
}

void AdamOpt::zero_grad() {
  for (auto& s : slots_) s.g->zero();
}

double AdamOpt::clip_grad_norm(double max_norm) {
  double sq = 0.0;
  for (auto& s : slots_)
    for (double g : s.g->d) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double f = max_norm / norm;
    for (auto& s : slots_)
      for (double& g : s.g->d) g *= f;
  }
  return norm;
}

}  // namespace quadrl
