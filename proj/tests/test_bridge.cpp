#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "quadrl/bridge/bridge.hpp"
#include "quadrl/math/rng.hpp"

using namespace quadrl;

namespace {
using Sample = std::pair<std::array<double, 6>, std::array<double, 6>>;
}

TEST_CASE("bridge fitting") {
  SUBCASE("raw equals expected: identity fit") {
    std::vector<Sample> samples;
    Rng rng(1);
    for (int i = 0; i < 3; ++i) {
      std::array<double, 6> v;
      for (auto& x : v) x = rng.normal() * 0.05;
      samples.push_back({v, v});
    }
    const LinearBridge b = LinearBridge::fit(samples);
    for (int c = 0; c < 6; ++c) {
      CHECK(b.slope[c] == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::fabs(b.offset[c]) < 1e-12);
    }
  }

  SUBCASE("constant offset on f_z is absorbed exactly") {
    std::vector<Sample> samples;
    Rng rng(2);
    for (int i = 0; i < 3; ++i) {
      std::array<double, 6> expected{};
      expected[2] = -0.02 * (i + 1);  // spread on the f_z channel
      std::array<double, 6> raw = expected;
      raw[2] += 0.02;
      samples.push_back({raw, expected});
    }
    const LinearBridge b = LinearBridge::fit(samples);
    CHECK(b.slope[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.offset[2] == doctest::Approx(-0.02).epsilon(1e-10));
    for (const auto& [raw, expected] : samples) {
      const Wrench corrected = b.apply(Wrench::from_flat(raw));
      CHECK(std::fabs(corrected.force.z - expected[2]) < 1e-12);
    }
  }

  SUBCASE("noisy regression recovers slope within [0.9, 1.1]") {
    Rng rng(3);
    std::vector<Sample> samples;
    for (int i = 0; i < 50; ++i) {
      std::array<double, 6> expected{};
      std::array<double, 6> raw{};
      for (int c = 0; c < 6; ++c) {
        const double range = c < 3 ? 0.1 : 0.001;
        expected[c] = rng.uniform(-range, range);
        raw[c] = expected[c] + rng.normal() * 0.05 * range;  // 5% of range noise
      }
      samples.push_back({raw, expected});
    }
    const LinearBridge b = LinearBridge::fit(samples);
    for (int c = 0; c < 6; ++c) {
      CHECK(b.slope[c] > 0.9);
      CHECK(b.slope[c] < 1.1);
    }
  }

  SUBCASE("degenerate spread falls back to unit slope, offset only") {
    std::vector<Sample> samples;
    for (int i = 0; i < 3; ++i) {
      std::array<double, 6> raw{};
      raw[0] = 0.05;  // identical raw on every sample
      std::array<double, 6> expected{};
      expected[0] = 0.03;
      samples.push_back({raw, expected});
    }
    const LinearBridge b = LinearBridge::fit(samples);
    CHECK(b.slope[0] == 1.0);
    CHECK(b.offset[0] == doctest::Approx(-0.02).epsilon(1e-12));
  }

  SUBCASE("single sample: offset-only; none: identity") {
    std::array<double, 6> raw{};
    raw[1] = 0.01;
    std::array<double, 6> expected{};
    expected[1] = 0.015;
    const LinearBridge one = LinearBridge::fit({{raw, expected}});
    CHECK(one.slope[1] == 1.0);
    CHECK(one.offset[1] == doctest::Approx(0.005).epsilon(1e-12));
    const LinearBridge none = LinearBridge::fit({});
    CHECK(none.slope[3] == 1.0);
    CHECK(none.offset[3] == 0.0);
  }
}

TEST_CASE("bridge application") {
  SUBCASE("identity bridge passes through") {
    LinearBridge b;
    const Wrench w{{0.1, 0.2, -0.3}, {1e-3, -2e-3, 0}};
    const Wrench out = b.apply(w);
    for (int i = 0; i < 6; ++i) CHECK(out[i] == w[i]);
  }

  SUBCASE("affine property per channel") {
    LinearBridge b;
    Rng rng(9);
    for (int c = 0; c < 6; ++c) {
      b.slope[c] = 0.8 + 0.4 * rng.uniform();
      b.offset[c] = rng.normal() * 0.01;
    }
    Wrench x{{0.03, -0.07, 0.12}, {5e-4, -2e-4, 8e-4}};
    const double a = 2.5;
    Wrench ax = x;
    ax.force *= a;
    ax.torque *= a;
    const Wrench fx = b.apply(x);
    const Wrench fax = b.apply(ax);
    const Wrench f0 = b.apply(Wrench{});
    for (int i = 0; i < 6; ++i)
      CHECK(fax[i] - f0[i] == doctest::Approx(a * (fx[i] - f0[i])).epsilon(1e-12));
  }
}

TEST_CASE("bridge persistence round trip") {
  LinearBridge b;
  Rng rng(4);
  for (int c = 0; c < 6; ++c) {
    b.slope[c] = 0.9 + 0.2 * rng.uniform();
    b.offset[c] = rng.normal() * 0.005;
  }
  b.save("bridge_rt.txt");
  const LinearBridge back = LinearBridge::load("bridge_rt.txt");
  for (int c = 0; c < 6; ++c) {
    CHECK(back.slope[c] == b.slope[c]);
    CHECK(back.offset[c] == b.offset[c]);
  }
  std::remove("bridge_rt.txt");
}

TEST_CASE("altitude bias integrator") {
  SUBCASE("zero error leaves the bias unchanged") {
    AltBiasState s;
    s.f_bias = 0.01;
    s.update(0.5, 0.5);
    CHECK(s.f_bias == 0.01);
  }

  SUBCASE("ten ticks of 0.05 m error accumulate eta-scaled bias") {
    AltBiasState s;
    s.eta = 0.002;  // spec arithmetic example uses the positive gain
    for (int i = 0; i < 10; ++i) s.update(0.55, 0.5);
    CHECK(s.f_bias == doctest::Approx(0.001).epsilon(1e-12));
  }

  SUBCASE("default gain is negative so sag pushes the estimate down") {
    AltBiasState s;
    for (int i = 0; i < 10; ++i) s.update(0.55, 0.5);  // flying low
    CHECK(s.f_bias < 0.0);
  }

  SUBCASE("clamp saturates exactly under persistent error") {
    AltBiasState s;
    s.eta = -0.002;
    s.clamp = 0.05;
    for (int i = 0; i < 10000; ++i) s.update(1.0, 0.0);
    CHECK(s.f_bias == -0.05);
  }
}

TEST_CASE("corrected prediction composition") {
  SUBCASE("identity bridge and zero bias pass through") {
    LinearBridge b;
    AltBiasState bias;
    const Wrench w{{0.01, 0.02, -0.05}, {1e-4, 2e-4, -3e-4}};
    const Wrench out = corrected_prediction(b, bias, w);
    for (int i = 0; i < 6; ++i) CHECK(out[i] == w[i]);
  }

  SUBCASE("bias touches only the vertical force channel") {
    LinearBridge b;
    AltBiasState bias;
    bias.f_bias = -0.013;
    const Wrench w{{0.01, 0.02, -0.05}, {1e-4, 2e-4, -3e-4}};
    const Wrench out = corrected_prediction(b, bias, w);
    CHECK(out.force.x == w.force.x);
    CHECK(out.force.y == w.force.y);
    CHECK(out.force.z == doctest::Approx(w.force.z - 0.013).epsilon(1e-12));
    for (int i = 3; i < 6; ++i) CHECK(out[i] == w[i]);
  }
}
