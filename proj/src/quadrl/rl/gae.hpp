#pragma once

#include <vector>

namespace quadrl {

// Generalized advantage estimation over one trajectory.
//   rewards[t], t = 0..T-1
//   values[t],  t = 0..T   (values[T] bootstraps the final step)
//   dones[t]    episode ends after step t (no value flows across)
//   truncs[t]   episode was cut but not terminal: bootstrap with
//               boot_values[t] instead of values[t+1]
// Crashes are plain dones; timeouts are dones with truncs set.
void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<unsigned char>& dones,
         const std::vector<unsigned char>& truncs,
         const std::vector<double>& boot_values, double gamma, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns);

// Simple form: no truncation handling (spec signature).
void gae(const std::vector<double>& rewards, const std::vector<double>& values,
         const std::vector<unsigned char>& dones, double gamma, double lambda,
         std::vector<double>& advantages, std::vector<double>& returns);

}  // namespace quadrl
