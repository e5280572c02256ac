#include "quadrl/sim/params.hpp"

#include <string>

#include "quadrl/error.hpp"

namespace quadrl {

void PhysicalParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("physics: " + what); };
  if (!(m > 0)) fail("mass must be positive");
  if (!(ixx > 0 && iyy > 0 && izz > 0)) fail("inertias must be positive");
  if (!(k_t > 0)) fail("k_t must be positive");
  if (!(k_q > 0)) fail("k_q must be positive");
  if (!(f_min >= 0 && f_min < f_max)) fail("need 0 <= f_min < f_max");
  if (!(tau_m > 0)) fail("tau_m must be positive");
  if (!(l1 > 0 && l2 > 0)) fail("moment arms must be positive");
  if (!(std::fabs(x0) < l1)) fail("|x0| must be smaller than l1");
  if (!(g > 0)) fail("g must be positive");
}

}  // namespace quadrl
