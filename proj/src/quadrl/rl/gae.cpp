#include "quadrl/rl/gae.hpp"

#include "quadrl/error.hpp"

namespace quadrl {

void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<unsigned char>& dones,
         const std::vector<unsigned char>& truncs,
         const std::vector<double>& boot_values, double gamma, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns) {
  const size_t T = rewards.size();
  if (values.size() != T + 1 || dones.size() != T)
    throw ShapeError("gae: sequence lengths inconsistent");
  advantages.assign(T, 0.0);
  returns.assign(T, 0.0);

  double carry = 0.0;
  for (size_t i = T; i-- > 0;) {
    double next_value;
    if (!dones[i]) {
      next_value = values[i + 1];
    } else if (!truncs.empty() && truncs[i]) {
      next_value = boot_values.empty() ? values[i + 1] : boot_values[i];
    } else {
      next_value = 0.0;  // terminal
    }
    const double delta = rewards[i] + gamma * next_value - values[i];
    carry = delta + gamma * lambda * (dones[i] ? 0.0 : carry);
    advantages[i] = carry;
    returns[i] = advantages[i] + values[i];
  }
}

void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<unsigned char>& dones, double gamma, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns) {
  gae(rewards, values, dones, {}, {}, gamma, lambda, advantages, returns);
}

}  // namespace quadrl
