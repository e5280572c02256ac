#include "quadrl/bridge/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "quadrl/error.hpp"

namespace quadrl {

LinearBridge LinearBridge::fit(
    const std::vector<std::pair<std::array<double, 6>, std::array<double, 6>>>&
        samples) {
  LinearBridge b;
  const size_t n = samples.size();
  if (n == 0) return b;  // identity

  for (int c = 0; c < 6; ++c) {
    double mx = 0, my = 0;
    for (const auto& [raw, expected] : samples) {
      mx += raw[c];
      my += expected[c];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [raw, expected] : samples) {
      sxx += (raw[c] - mx) * (raw[c] - mx);
      sxy += (raw[c] - mx) * (expected[c] - my);
    }
    // degenerate spread: unit slope, offset-only correction
    if (n < 2 || sxx < 1e-12 * n) {
      b.slope[c] = 1.0;
      b.offset[c] = my - mx;
    } else {
      b.slope[c] = sxy / sxx;
      b.offset[c] = my - b.slope[c] * mx;
    }
  }
  return b;
}

Wrench LinearBridge::apply(const Wrench& raw) const {
  Wrench out = raw;
  for (int c = 0; c < 6; ++c) out.set(c, slope[c] * raw[c] + offset[c]);
  return out;
}

void LinearBridge::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write bridge '" + path + "'");
  out << "# quadrl-bridge v1\n";
  char buf[32];
  for (int c = 0; c < 6; ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", slope[c]);
    out << buf << (c < 5 ? ' ' : '\n');
  }
  for (int c = 0; c < 6; ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", offset[c]);
    out << buf << (c < 5 ? ' ' : '\n');
  }
}

LinearBridge LinearBridge::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bridge '" + path + "'");
  std::string header;
  if (!std::getline(in, header) || header != "# quadrl-bridge v1")
    throw IoError("'" + path + "' is not a v1 bridge record");
  LinearBridge b;
  for (int c = 0; c < 6; ++c)
    if (!(in >> b.slope[c])) throw IoError("bridge record truncated");
  for (int c = 0; c < 6; ++c)
    if (!(in >> b.offset[c])) throw IoError("bridge record truncated");
  return b;
}

void AltBiasState::update(double z_des, double z) {
  f_bias = std::clamp(f_bias + eta * (z_des - z), -clamp, clamp);
}

Wrench corrected_prediction(const LinearBridge& bridge, const AltBiasState& bias,
                            const Wrench& smoothed_raw) {
  Wrench out = bridge.apply(smoothed_raw);
  out.force.z += bias.f_bias;
  return out;
}

}  // namespace quadrl
