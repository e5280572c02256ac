#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "quadrl/error.hpp"
#include "quadrl/nn/adam.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/nn/dense.hpp"
#include "quadrl/nn/gaussian.hpp"
#include "quadrl/nn/gru.hpp"
#include "support/test_util.hpp"

using namespace quadrl;
using testutil::fd_gradient;
using testutil::max_rel_err;

namespace {

Mat random_mat(int r, int c, Rng& rng, double scale = 1.0) {
  Mat m(r, c);
  for (auto& v : m.d) v = rng.normal() * scale;
  return m;
}

double weighted_sum(const Mat& y, const Mat& p) {
  double s = 0;
  for (size_t i = 0; i < y.d.size(); ++i) s += y.d[i] * p.d[i];
  return s;
}

}  // namespace

TEST_CASE("dense layer forward") {
  Rng rng(1);

  SUBCASE("identity weights pass the input through") {
    DenseLayer d(3, 3, rng);
    d.w.zero();
    for (int i = 0; i < 3; ++i) d.w.at(i, i) = 1.0;
    d.b.zero();
    Mat x = random_mat(5, 3, rng);
    const Mat y = d.forward(x);
    for (size_t i = 0; i < x.d.size(); ++i) CHECK(y.d[i] == x.d[i]);
  }

  SUBCASE("zero upstream gradient leaves zero parameter grads") {
    DenseLayer d(4, 2, rng);
    Mat x = random_mat(3, 4, rng);
    d.forward(x);
    Mat dy(3, 2);
    d.backward(dy);
    for (double g : d.dw.d) CHECK(g == 0.0);
    for (double g : d.db.d) CHECK(g == 0.0);
  }

  SUBCASE("shape mismatch rejected") {
    DenseLayer d(4, 2, rng);
    Mat x = random_mat(3, 5, rng);
    CHECK_THROWS_AS(d.forward(x), ShapeError);
  }
}

TEST_CASE("dense layer gradients match finite differences") {
  Rng rng(7);
  DenseLayer d(6, 4, rng);
  Mat x = random_mat(5, 6, rng);
  const Mat proj = random_mat(5, 4, rng);

  auto loss = [&]() {
    DenseLayer tmp = d;
    return weighted_sum(tmp.forward(x), proj);
  };

  d.zero_grad();
  d.forward(x);
  const Mat dx = d.backward(proj);

  const auto fd_w = fd_gradient(d.w.d, loss);
  CHECK(max_rel_err(d.dw.d, fd_w) < 1e-6);
  const auto fd_b = fd_gradient(d.b.d, loss);
  CHECK(max_rel_err(d.db.d, fd_b) < 1e-6);
  auto loss_x = [&]() {
    DenseLayer tmp = d;
    return weighted_sum(tmp.forward(x), proj);
  };
  const auto fd_x = fd_gradient(x.d, loss_x);
  CHECK(max_rel_err(dx.d, fd_x) < 1e-6);
}

TEST_CASE("gru basics") {
  Rng rng(3);

  SUBCASE("zero input, zero biases give zero hidden states") {
    GruLayer g(3, 5, rng);
    for (Mat* b : {&g.bzi, &g.bri, &g.bni, &g.bzh, &g.brh, &g.bnh}) b->zero();
    std::vector<Mat> x(4, Mat(2, 3));
    const auto& h = g.forward(x);
    for (const auto& ht : h)
      for (double v : ht.d) CHECK(v == 0.0);
  }

  SUBCASE("length-1 sequence equals a single cell application") {
    GruLayer g(3, 4, rng);
    std::vector<Mat> x1{random_mat(2, 3, rng)};
    const Mat h1 = g.forward(x1)[0];
    // manual single cell with h0 = 0
    for (int b = 0; b < 2; ++b)
      for (int j = 0; j < 4; ++j) {
        double az = g.bzi.d[j] + g.bzh.d[j];
        double ar = g.bri.d[j] + g.brh.d[j];
        double an = g.bni.d[j];
        for (int i = 0; i < 3; ++i) {
          az += x1[0].at(b, i) * g.wz.at(j, i);
          ar += x1[0].at(b, i) * g.wr.at(j, i);
          an += x1[0].at(b, i) * g.wn.at(j, i);
        }
        const double z = 1.0 / (1.0 + std::exp(-az));
        const double r = 1.0 / (1.0 + std::exp(-ar));
        const double n = std::tanh(an + r * g.bnh.d[j]);
        const double h = (1.0 - z) * n;
        CHECK(h1.at(b, j) == doctest::Approx(h).epsilon(1e-12));
      }
  }

  SUBCASE("hidden states stay inside (-1, 1)") {
    GruLayer g(4, 6, rng);
    std::vector<Mat> x;
    for (int t = 0; t < 50; ++t) x.push_back(random_mat(3, 4, rng, 5.0));
    const auto& h = g.forward(x);
    for (const auto& ht : h)
      for (double v : ht.d) {
        CHECK(v > -1.0);
        CHECK(v < 1.0);
      }
  }

  SUBCASE("empty sequence rejected") {
    GruLayer g(3, 4, rng);
    std::vector<Mat> x;
    CHECK_THROWS_AS(g.forward(x), ShapeError);
  }
}

TEST_CASE("gru BPTT gradients match finite differences (hidden 4, 8 steps)") {
  Rng rng(11);
  GruLayer g(3, 4, rng);
  const int steps = 8, batch = 2;
  std::vector<Mat> x;
  for (int t = 0; t < steps; ++t) x.push_back(random_mat(batch, 3, rng));
  // gradient flows in at every step to cover the whole recursion
  std::vector<Mat> proj;
  for (int t = 0; t < steps; ++t) proj.push_back(random_mat(batch, 4, rng));

  auto loss = [&]() {
    GruLayer tmp = g;
    const auto& h = tmp.forward(x);
    double s = 0;
    for (int t = 0; t < steps; ++t) s += weighted_sum(h[t], proj[t]);
    return s;
  };

  g.zero_grad();
  g.forward(x);
  const auto dx = g.backward(proj);

  auto prefs = g.params("g");
  for (auto& pr : prefs) {
    const auto fd = fd_gradient(pr.value->d, loss);
    CHECK_MESSAGE(max_rel_err(pr.grad->d, fd) < 1e-5, pr.name);
  }
  for (int t = 0; t < steps; ++t) {
    auto loss_x = [&]() {
      GruLayer tmp = g;
      const auto& h = tmp.forward(x);
      double s = 0;
      for (int u = 0; u < steps; ++u) s += weighted_sum(h[u], proj[u]);
      return s;
    };
    const auto fd = fd_gradient(x[t].d, loss_x);
    CHECK(max_rel_err(dx[t].d, fd) < 1e-5);
  }
}

TEST_CASE("gru BPTT last-step-only gradient (two stacked layers)") {
  Rng rng(13);
  GruLayer g1(3, 4, rng), g2(4, 4, rng);
  const int steps = 6, batch = 2;
  std::vector<Mat> x;
  for (int t = 0; t < steps; ++t) x.push_back(random_mat(batch, 3, rng));
  const Mat proj = random_mat(batch, 4, rng);

  auto loss = [&]() {
    GruLayer t1 = g1, t2 = g2;
    const auto h1 = t1.forward(x);
    const auto& h2 = t2.forward(h1);
    return weighted_sum(h2.back(), proj);
  };

  g1.zero_grad();
  g2.zero_grad();
  const auto h1 = g1.forward(x);
  g2.forward(h1);
  std::vector<Mat> dh2(steps);
  dh2.back() = proj;
  const auto dh1 = g2.backward(dh2);
  g1.backward(dh1);

  for (auto layer : {&g1, &g2})
    for (auto& pr : layer->params("l")) {
      const auto fd = fd_gradient(pr.value->d, loss);
      CHECK_MESSAGE(max_rel_err(pr.grad->d, fd) < 1e-5, pr.name);
    }
}

TEST_CASE("diagonal gaussian head") {
  std::vector<double> log_std{0.0, 0.0, 0.0, 0.0};

  SUBCASE("log prob at the mean") {
    Mat mean(1, 4);
    for (int i = 0; i < 4; ++i) mean.at(0, i) = 0.5 * i;
    const auto lp = diag_gaussian::log_prob(mean, log_std, mean);
    const double expect = -4.0 * std::log(std::sqrt(2.0 * 3.141592653589793));
    CHECK(lp[0] == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("entropy with unit std") {
    const double expect = 4.0 * 0.5 * std::log(2.0 * 3.141592653589793 * std::exp(1.0));
    CHECK(diag_gaussian::entropy(log_std) == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("sampling moments within 2% at 1e5 draws") {
    Rng rng(21);
    Mat mean(1, 4);
    mean.at(0, 0) = 1.0;
    mean.at(0, 1) = -2.0;
    std::vector<double> ls{std::log(0.5), std::log(2.0), 0.0, 0.0};
    const int n = 100000;
    double s0 = 0, s0sq = 0, s1 = 0, s1sq = 0;
    for (int i = 0; i < n; ++i) {
      const Mat a = diag_gaussian::sample(mean, ls, rng);
      s0 += a.at(0, 0);
      s0sq += a.at(0, 0) * a.at(0, 0);
      s1 += a.at(0, 1);
      s1sq += a.at(0, 1) * a.at(0, 1);
    }
    const double m0 = s0 / n, sd0 = std::sqrt(s0sq / n - m0 * m0);
    const double m1 = s1 / n, sd1 = std::sqrt(s1sq / n - m1 * m1);
    CHECK(std::fabs(m0 - 1.0) < 0.02);
    CHECK(std::fabs(sd0 - 0.5) / 0.5 < 0.02);
    CHECK(std::fabs(m1 + 2.0) < 0.04);
    CHECK(std::fabs(sd1 - 2.0) / 2.0 < 0.02);
  }

  SUBCASE("analytic gradients match finite differences") {
    Rng rng(31);
    Mat mean(3, 4);
    for (auto& v : mean.d) v = rng.normal();
    Mat actions(3, 4);
    for (auto& v : actions.d) v = rng.normal();
    std::vector<double> ls{-0.5, 0.1, 0.3, -1.0};
    std::vector<double> scale{1.0, -0.7, 0.4};

    std::vector<double> dls(4, 0.0);
    const Mat dmean = diag_gaussian::dlogp_dmean(mean, ls, actions, scale, dls);

    auto loss = [&]() {
      const auto lp = diag_gaussian::log_prob(mean, ls, actions);
      double s = 0;
      for (int i = 0; i < 3; ++i) s += scale[i] * lp[i];
      return s;
    };
    const auto fd_mean = fd_gradient(mean.d, loss);
    CHECK(max_rel_err(dmean.d, fd_mean) < 1e-6);
    const auto fd_ls = fd_gradient(ls, loss);
    CHECK(max_rel_err(dls, fd_ls) < 1e-6);
  }
}

TEST_CASE("adam optimizer") {
  SUBCASE("zero gradient leaves parameters unchanged, advances the step") {
    Rng rng(5);
    Mat p = random_mat(2, 3, rng);
    Mat g(2, 3);
    const Mat orig = p;
    AdamOpt opt;
    opt.add_params({{"p", &p, &g}});
    opt.step();
    CHECK(opt.step_count() == 1);
    for (size_t i = 0; i < p.d.size(); ++i) CHECK(p.d[i] == orig.d[i]);
  }

  SUBCASE("first step from zero moments is lr-scaled sign of the gradient") {
    Mat p(1, 2);
    Mat g(1, 2);
    g.d = {0.5, -0.03};
    AdamOpt opt;
    opt.config().lr = 0.01;
    opt.add_params({{"p", &p, &g}});
    opt.step();
    CHECK(p.d[0] == doctest::Approx(-0.01).epsilon(1e-4));
    CHECK(p.d[1] == doctest::Approx(0.01).epsilon(1e-4));
  }

  SUBCASE("converges on a quadratic bowl") {
    Mat p(1, 4);
    p.d = {1.0, 1.0, 1.0, 1.0};
    Mat g(1, 4);
    AdamOpt opt;
    opt.config().lr = 0.01;
    opt.add_params({{"p", &p, &g}});
    for (int it = 0; it < 500; ++it) {
      for (int i = 0; i < 4; ++i) g.d[i] = 2.0 * p.d[i];
      opt.step();
    }
    double n2 = 0;
    for (double v : p.d) n2 += v * v;
    CHECK(std::sqrt(n2) < 1e-3);
  }

  SUBCASE("deterministic given identical inputs") {
    auto run = [] {
      Rng rng(9);
      Mat p = random_mat(3, 3, rng);
      Mat g(3, 3);
      AdamOpt opt;
      opt.add_params({{"p", &p, &g}});
      for (int it = 0; it < 20; ++it) {
        for (size_t i = 0; i < g.d.size(); ++i) g.d[i] = std::sin(double(it) + i);
        opt.step();
      }
      return p;
    };
    const Mat a = run(), b = run();
    for (size_t i = 0; i < a.d.size(); ++i) CHECK(a.d[i] == b.d[i]);
  }
}

TEST_CASE("checkpoint container") {
  Rng rng(77);
  Checkpoint ck;
  ck.meta["kind"] = "test";
  ck.meta["width"] = "22";
  Mat a = random_mat(4, 7, rng);
  Mat b = random_mat(1, 5, rng);
  ck.add("layer.w", a);
  ck.add("layer.b", b);
  const char* path = "ck_test.qck";
  ck.save(path);

  SUBCASE("round trip is bit exact") {
    const Checkpoint lk = Checkpoint::load(path);
    CHECK(lk.meta_at("kind") == "test");
    CHECK(lk.meta_long("width") == 22);
    Mat a2, b2;
    lk.to_mat("layer.w", a2);
    lk.to_mat("layer.b", b2);
    REQUIRE(a2.same_shape(a));
    for (size_t i = 0; i < a.d.size(); ++i) CHECK(a2.d[i] == a.d[i]);
    for (size_t i = 0; i < b.d.size(); ++i) CHECK(b2.d[i] == b.d[i]);
  }

  SUBCASE("missing tensor is an error") {
    const Checkpoint lk = Checkpoint::load(path);
    Mat out;
    CHECK_THROWS_AS(lk.to_mat("nope", out), IoError);
  }

  SUBCASE("corrupt byte fails the checksum") {
    std::FILE* f = std::fopen(path, "rb+");
    REQUIRE(f);
    std::fseek(f, 40, SEEK_SET);
    const unsigned char junk = 0xAB;
    std::fwrite(&junk, 1, 1, f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(Checkpoint::load(path),
                         doctest::Contains("checksum"), IoError);
  }

  SUBCASE("truncated file rejected") {
    ck.save(path);
    std::FILE* f = std::fopen(path, "rb");
    std::fseek(f, 0, SEEK_END);
    const long size = std::ftell(f);
    std::fclose(f);
    std::vector<unsigned char> buf(size - 10);
    f = std::fopen(path, "rb");
    REQUIRE(std::fread(buf.data(), 1, buf.size(), f) == buf.size());
    std::fclose(f);
    f = std::fopen(path, "wb");
    std::fwrite(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    CHECK_THROWS_AS(Checkpoint::load(path), IoError);
  }

  SUBCASE("version bump rejects the current loader") {
    ck.save(path);
    std::FILE* f = std::fopen(path, "rb");
    std::fseek(f, 0, SEEK_END);
    const long size = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    std::vector<unsigned char> buf(size);
    REQUIRE(std::fread(buf.data(), 1, buf.size(), f) == buf.size());
    std::fclose(f);
    buf[8] = 99;  // version field follows the 8-byte magic
    // re-stamp the checksum so only the version check can fire
    std::uint64_t h = 14695981039346656037ULL;
    for (size_t i = 8; i < buf.size() - 8; ++i) {
      h ^= buf[i];
      h *= 1099511628211ULL;
    }
    std::memcpy(buf.data() + buf.size() - 8, &h, 8);
    f = std::fopen(path, "wb");
    std::fwrite(buf.data(), 1, buf.size(), f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(Checkpoint::load(path),
                         doctest::Contains("version"), IoError);
  }

  std::remove(path);
}
