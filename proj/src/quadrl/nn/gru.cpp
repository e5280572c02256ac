#include "quadrl/nn/gru.hpp"

#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {

namespace {

void add_row_bias(Mat& y, const Mat& b) {
  for (int i = 0; i < y.rows; ++i) {
    double* r = y.row(i);
    for (int j = 0; j < y.cols; ++j) r[j] += b.d[j];
  }
}

void sigmoid_inplace(Mat& m) {
  for (auto& v : m.d) v = 1.0 / (1.0 + std::exp(-v));
}

void colsum_into(const Mat& m, Mat& acc) {
  for (int i = 0; i < m.rows; ++i) {
    const double* r = m.row(i);
    for (int j = 0; j < m.cols; ++j) acc.d[j] += r[j];
  }
}

}  // namespace

GruLayer::GruLayer(int in, int hidden, Rng& rng)
    : wz(hidden, in), wr(hidden, in), wn(hidden, in),
      uz(hidden, hidden), ur(hidden, hidden), un(hidden, hidden),
      bzi(1, hidden), bri(1, hidden), bni(1, hidden),
      bzh(1, hidden), brh(1, hidden), bnh(1, hidden),
      dwz(hidden, in), dwr(hidden, in), dwn(hidden, in),
      duz(hidden, hidden), dur(hidden, hidden), dun(hidden, hidden),
      dbzi(1, hidden), dbri(1, hidden), dbni(1, hidden),
      dbzh(1, hidden), dbrh(1, hidden), dbnh(1, hidden) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (Mat* m : {&wz, &wr, &wn, &uz, &ur, &un, &bzi, &bri, &bni, &bzh, &brh, &bnh})
    init_uniform(*m, rng, bound);
}

const std::vector<Mat>& GruLayer::forward(const std::vector<Mat>& x, bool cache) {
  if (x.empty()) throw ShapeError("gru: empty sequence");
  const int steps = static_cast<int>(x.size());
  const int batch = x[0].rows;
  const int hid = hidden_dim();

  h_.assign(steps, Mat());
  if (cache) {
    x_ = x;
    z_.assign(steps, Mat());
    r_.assign(steps, Mat());
    n_.assign(steps, Mat());
    g_.assign(steps, Mat());
  }

  Mat hprev(batch, hid);  // h0 = 0
  Mat z(batch, hid), r(batch, hid), n(batch, hid), g(batch, hid), tmp(batch, hid);
  for (int t = 0; t < steps; ++t) {
    if (x[t].cols != in_dim() || x[t].rows != batch)
      throw ShapeError("gru: input shape mismatch");

    gemm_nt(x[t], wz, z);
    add_row_bias(z, bzi);
    gemm_nt(hprev, uz, tmp);
    for (size_t i = 0; i < z.d.size(); ++i) z.d[i] += tmp.d[i];
    add_row_bias(z, bzh);
    sigmoid_inplace(z);

    gemm_nt(x[t], wr, r);
    add_row_bias(r, bri);
    gemm_nt(hprev, ur, tmp);
    for (size_t i = 0; i < r.d.size(); ++i) r.d[i] += tmp.d[i];
    add_row_bias(r, brh);
    sigmoid_inplace(r);

    gemm_nt(hprev, un, g);
    add_row_bias(g, bnh);

    gemm_nt(x[t], wn, n);
    add_row_bias(n, bni);
    for (size_t i = 0; i < n.d.size(); ++i) n.d[i] = std::tanh(n.d[i] + r.d[i] * g.d[i]);

    Mat h(batch, hid);
    for (size_t i = 0; i < h.d.size(); ++i)
      h.d[i] = (1.0 - z.d[i]) * n.d[i] + z.d[i] * hprev.d[i];

    if (cache) {
      z_[t] = z;
      r_[t] = r;
      n_[t] = n;
      g_[t] = g;
    }
    h_[t] = h;
    hprev = std::move(h);
  }
  return h_;
}

std::vector<Mat> GruLayer::backward(const std::vector<Mat>& dh_ext) {
  const int steps = static_cast<int>(x_.size());
  if (static_cast<int>(dh_ext.size()) != steps)
    throw ShapeError("gru: backward length mismatch");
  const int batch = x_[0].rows;
  const int hid = hidden_dim();

  std::vector<Mat> dx(steps);
  Mat dh(batch, hid);  // gradient flowing into h_t (recurrent part)
  Mat dz(batch, hid), dn(batch, hid), dg(batch, hid), dr(batch, hid);
  Mat dhprev(batch, hid);

  for (int t = steps - 1; t >= 0; --t) {
    if (dh_ext[t].rows > 0)
      for (size_t i = 0; i < dh.d.size(); ++i) dh.d[i] += dh_ext[t].d[i];

    const Mat& z = z_[t];
    const Mat& r = r_[t];
    const Mat& n = n_[t];
    const Mat& g = g_[t];
    // h_{t-1}: zero matrix at t == 0 (h0)
    static const Mat kEmpty;
    const Mat* hprev = (t > 0) ? &h_[t - 1] : nullptr;

    for (size_t i = 0; i < dh.d.size(); ++i) {
      const double hp = hprev ? hprev->d[i] : 0.0;
      const double a = dh.d[i];
      dz.d[i] = a * (hp - n.d[i]);
      dn.d[i] = a * (1.0 - z.d[i]);
      dhprev.d[i] = a * z.d[i];
      // through tanh
      const double dn_pre = dn.d[i] * (1.0 - n.d[i] * n.d[i]);
      dn.d[i] = dn_pre;
      dr.d[i] = dn_pre * g.d[i];
      dg.d[i] = dn_pre * r.d[i];
      // through the sigmoids
      dz.d[i] *= z.d[i] * (1.0 - z.d[i]);
      dr.d[i] *= r.d[i] * (1.0 - r.d[i]);
    }

    // candidate input path: pre-activation grad is dn
    gemm_tn(dn, x_[t], dwn, true);
    colsum_into(dn, dbni);
    dx[t] = Mat(batch, in_dim());
    gemm_nn(dn, wn, dx[t]);

    // candidate hidden path
    colsum_into(dg, dbnh);
    if (hprev) {
      gemm_tn(dg, *hprev, dun, true);
      gemm_nn(dg, un, dhprev, true);
    }

    // update gate
    gemm_tn(dz, x_[t], dwz, true);
    colsum_into(dz, dbzi);
    colsum_into(dz, dbzh);
    gemm_nn(dz, wz, dx[t], true);
    if (hprev) {
      gemm_tn(dz, *hprev, duz, true);
      gemm_nn(dz, uz, dhprev, true);
    }

    // reset gate
    gemm_tn(dr, x_[t], dwr, true);
    colsum_into(dr, dbri);
    colsum_into(dr, dbrh);
    gemm_nn(dr, wr, dx[t], true);
    if (hprev) {
      gemm_tn(dr, *hprev, dur, true);
      gemm_nn(dr, ur, dhprev, true);
    }

    std::swap(dh, dhprev);
    dhprev.zero();
    (void)kEmpty;
  }
  return dx;
}

void GruLayer::zero_grad() {
  for (Mat* m : {&dwz, &dwr, &dwn, &duz, &dur, &dun, &dbzi, &dbri, &dbni, &dbzh,
                 &dbrh, &dbnh})
    m->zero();
}

std::vector<ParamRef> GruLayer::params(const std::string& p) {
  return {{p + ".wz", &wz, &dwz}, {p + ".wr", &wr, &dwr}, {p + ".wn", &wn, &dwn},
          {p + ".uz", &uz, &duz}, {p + ".ur", &ur, &dur}, {p + ".un", &un, &dun},
          {p + ".bzi", &bzi, &dbzi}, {p + ".bri", &bri, &dbri},
          {p + ".bni", &bni, &dbni}, {p + ".bzh", &bzh, &dbzh},
          {p + ".brh", &brh, &dbrh}, {p + ".bnh", &bnh, &dbnh}};
}

}  // namespace quadrl
