#include "quadrl/rl/policy.hpp"

#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {

NetArch net_arch_from_string(const std::string& s) {
  if (s == "mlp") return NetArch::Mlp;
  if (s == "gru") return NetArch::Gru;
  throw ConfigError("unknown network architecture '" + s + "'");
}

std::string to_string(NetArch a) { return a == NetArch::Mlp ? "mlp" : "gru"; }

WindowNet::WindowNet(const NetConfig& cfg, Rng& rng) : cfg_(cfg) {
  if (cfg.arch == NetArch::Mlp) {
    int in = cfg.input_dim();
    for (int l = 0; l < cfg.layers; ++l) {
      dense_.emplace_back(in, cfg.hidden, rng);
      in = cfg.hidden;
    }
  } else {
    int in = cfg.frame_width;
    for (int l = 0; l < cfg.layers; ++l) {
      gru_.emplace_back(in, cfg.hidden, rng);
      in = cfg.hidden;
    }
  }
}

Mat WindowNet::forward(const Mat& x, bool cache) {
  if (x.cols != cfg_.input_dim()) throw ShapeError("window net: input width mismatch");
  if (cfg_.arch == NetArch::Mlp) {
    if (cache) act_.assign(dense_.size(), Mat());
    Mat h = x;
    for (size_t l = 0; l < dense_.size(); ++l) {
      h = dense_[l].forward(h, cache);
      for (auto& v : h.d) v = std::tanh(v);
      if (cache) act_[l] = h;
    }
    return h;
  }
  // unpack the window into a sequence of frames
  steps_ = cfg_.stack;
  std::vector<Mat> seq(steps_, Mat(x.rows, cfg_.frame_width));
  for (int i = 0; i < x.rows; ++i) {
    const double* src = x.row(i);
    for (int t = 0; t < steps_; ++t)
      std::copy(src + t * cfg_.frame_width, src + (t + 1) * cfg_.frame_width,
                seq[t].row(i));
  }
  if (cache) gru_in_.assign(gru_.size(), std::vector<Mat>());
  for (size_t l = 0; l < gru_.size(); ++l) {
    if (cache) gru_in_[l] = seq;
    seq = gru_[l].forward(seq, cache);
  }
  return seq.back();
}

void WindowNet::backward(const Mat& dfeat) {
  if (cfg_.arch == NetArch::Mlp) {
    Mat d = dfeat;
    for (int l = static_cast<int>(dense_.size()) - 1; l >= 0; --l) {
      // through tanh
      const Mat& a = act_[l];
      for (size_t i = 0; i < d.d.size(); ++i) d.d[i] *= (1.0 - a.d[i] * a.d[i]);
      d = dense_[l].backward(d);
    }
    return;
  }
  std::vector<Mat> dh(steps_);
  dh.back() = dfeat;
  for (int l = static_cast<int>(gru_.size()) - 1; l >= 0; --l)
    dh = gru_[l].backward(dh);
}

void WindowNet::zero_grad() {
  for (auto& d : dense_) d.zero_grad();
  for (auto& g : gru_) g.zero_grad();
}

std::vector<ParamRef> WindowNet::params(const std::string& prefix) {
  std::vector<ParamRef> out;
  for (size_t l = 0; l < dense_.size(); ++l) {
    auto p = dense_[l].params(prefix + ".d" + std::to_string(l));
    out.insert(out.end(), p.begin(), p.end());
  }
  for (size_t l = 0; l < gru_.size(); ++l) {
    auto p = gru_[l].params(prefix + ".g" + std::to_string(l));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

GaussianPolicy::GaussianPolicy(const NetConfig& cfg, int act_dim,
                               double log_std_init, Rng& rng,
                               const std::vector<double>& head_bias)
    : trunk_(cfg, rng),
      head_(cfg.hidden, act_dim, rng, 0.01),  // small head: near-zero initial mean
      log_std_(1, act_dim), dlog_std_(1, act_dim) {
  for (auto& v : log_std_.d) v = log_std_init;
  // head bias seeds the initial mean action (e.g. raw thrust at exact hover)
  for (size_t i = 0; i < head_bias.size() && i < head_.b.d.size(); ++i)
    head_.b.d[i] = head_bias[i];
}

Mat GaussianPolicy::mean(const Mat& obs, bool cache) {
  return head_.forward(trunk_.forward(obs, cache), cache);
}

void GaussianPolicy::backward(const Mat& dmean) {
  trunk_.backward(head_.backward(dmean));
}

std::vector<double> GaussianPolicy::log_std() const {
  std::vector<double> out(log_std_.d.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = std::clamp(log_std_.d[i], kLogStdMin, kLogStdMax);
  return out;
}

void GaussianPolicy::add_log_std_grad(const std::vector<double>& g) {
  for (size_t i = 0; i < g.size(); ++i) {
    // no gradient through a saturated clamp
    if (log_std_.d[i] > kLogStdMin && log_std_.d[i] < kLogStdMax)
      dlog_std_.d[i] += g[i];
  }
}

void GaussianPolicy::zero_grad() {
  trunk_.zero_grad();
  head_.zero_grad();
  dlog_std_.zero();
}

std::vector<ParamRef> GaussianPolicy::params() {
  auto out = trunk_.params("policy.trunk");
  auto h = head_.params("policy.head");
  out.insert(out.end(), h.begin(), h.end());
  out.push_back({"policy.log_std", &log_std_, &dlog_std_});
  return out;
}

ValueNet::ValueNet(const NetConfig& cfg, Rng& rng)
    : trunk_(cfg, rng), head_(cfg.hidden, 1, rng, 1.0) {}

std::vector<double> ValueNet::forward(const Mat& obs, bool cache) {
  const Mat v = head_.forward(trunk_.forward(obs, cache), cache);
  std::vector<double> out(v.rows);
  for (int i = 0; i < v.rows; ++i) out[i] = v.at(i, 0);
  return out;
}

void ValueNet::backward(const std::vector<double>& dv) {
  Mat d(static_cast<int>(dv.size()), 1);
  for (size_t i = 0; i < dv.size(); ++i) d.at(static_cast<int>(i), 0) = dv[i];
  trunk_.backward(head_.backward(d));
}

void ValueNet::zero_grad() {
  trunk_.zero_grad();
  head_.zero_grad();
}

std::vector<ParamRef> ValueNet::params() {
  auto out = trunk_.params("value.trunk");
  auto h = head_.params("value.head");
  out.insert(out.end(), h.begin(), h.end());
  return out;
}

// ---- serialization ----

struct NetSerde {
  static void save_cfg(Checkpoint& ck, const std::string& prefix, const NetConfig& c) {
    ck.meta[prefix + ".arch"] = to_string(c.arch);
    ck.meta[prefix + ".frame_width"] = std::to_string(c.frame_width);
    ck.meta[prefix + ".stack"] = std::to_string(c.stack);
    ck.meta[prefix + ".hidden"] = std::to_string(c.hidden);
    ck.meta[prefix + ".layers"] = std::to_string(c.layers);
  }
  static NetConfig load_cfg(const Checkpoint& ck, const std::string& prefix) {
    NetConfig c;
    c.arch = net_arch_from_string(ck.meta_at(prefix + ".arch"));
    c.frame_width = static_cast<int>(ck.meta_long(prefix + ".frame_width"));
    c.stack = static_cast<int>(ck.meta_long(prefix + ".stack"));
    c.hidden = static_cast<int>(ck.meta_long(prefix + ".hidden"));
    c.layers = static_cast<int>(ck.meta_long(prefix + ".layers"));
    return c;
  }
  static void save_params(Checkpoint& ck, std::vector<ParamRef> refs) {
    for (auto& r : refs) ck.add(r.name, *r.value);
  }
  static void load_params(const Checkpoint& ck, std::vector<ParamRef> refs) {
    for (auto& r : refs) {
      Mat m;
      ck.to_mat(r.name, m);
      if (!m.same_shape(*r.value))
        throw IoError("checkpoint tensor '" + r.name + "' has unexpected shape");
      *r.value = m;
    }
  }
};

void GaussianPolicy::save(Checkpoint& ck, const std::string& prefix) const {
  NetSerde::save_cfg(ck, prefix, trunk_.config());
  ck.meta[prefix + ".act_dim"] = std::to_string(head_.out_dim());
  auto self = const_cast<GaussianPolicy*>(this);
  NetSerde::save_params(ck, self->params());
}

GaussianPolicy GaussianPolicy::load(const Checkpoint& ck, const std::string& prefix) {
  const NetConfig cfg = NetSerde::load_cfg(ck, prefix);
  const int act_dim = static_cast<int>(ck.meta_long(prefix + ".act_dim"));
  Rng dummy(0);
  GaussianPolicy p(cfg, act_dim, 0.0, dummy);
  NetSerde::load_params(ck, p.params());
  return p;
}

void ValueNet::save(Checkpoint& ck, const std::string& prefix) const {
  NetSerde::save_cfg(ck, prefix, trunk_.config());
  auto self = const_cast<ValueNet*>(this);
  NetSerde::save_params(ck, self->params());
}

ValueNet ValueNet::load(const Checkpoint& ck, const std::string& prefix) {
  const NetConfig cfg = NetSerde::load_cfg(ck, prefix);
  Rng dummy(0);
  ValueNet v(cfg, dummy);
  NetSerde::load_params(ck, v.params());
  return v;
}

}  // namespace quadrl
