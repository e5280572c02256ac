#include "quadrl/nn/dense.hpp"

#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {

void init_uniform(Mat& m, Rng& rng, double bound) {
  for (auto& v : m.d) v = rng.uniform(-bound, bound);
}

void init_xavier(Mat& m, Rng& rng, double gain) {
  const double bound = gain * std::sqrt(6.0 / (m.rows + m.cols));
  init_uniform(m, rng, bound);
}

DenseLayer::DenseLayer(int in, int out, Rng& rng, double gain)
    : w(out, in), b(1, out), dw(out, in), db(1, out) {
  init_xavier(w, rng, gain);
}

Mat DenseLayer::forward(const Mat& x, bool cache) {
  if (x.cols != w.cols) throw ShapeError("dense: input width mismatch");
  Mat y(x.rows, w.rows);
  gemm_nt(x, w, y);
  for (int i = 0; i < y.rows; ++i) {
    double* r = y.row(i);
    for (int j = 0; j < y.cols; ++j) r[j] += b.d[j];
  }
  if (cache) x_ = x;
  return y;
}

Mat DenseLayer::backward(const Mat& dy) {
  if (dy.cols != w.rows || dy.rows != x_.rows)
    throw ShapeError("dense: gradient shape mismatch");
  gemm_tn(dy, x_, dw, /*accumulate=*/true);
  for (int i = 0; i < dy.rows; ++i) {
    const double* r = dy.row(i);
    for (int j = 0; j < dy.cols; ++j) db.d[j] += r[j];
  }
  Mat dx(dy.rows, w.cols);
  gemm_nn(dy, w, dx);
  return dx;
}

void DenseLayer::zero_grad() {
  dw.zero();
  db.zero();
}

std::vector<ParamRef> DenseLayer::params(const std::string& prefix) {
  return {{prefix + ".w", &w, &dw}, {prefix + ".b", &b, &db}};
}

}  // namespace quadrl
