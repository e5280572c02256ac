#include "quadrl/rdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "quadrl/error.hpp"

namespace quadrl {

RdpModel::RdpModel(int hidden, Rng& rng)
    : gru1_(kRdpFeatureDim, hidden, rng),
      gru2_(hidden, hidden, rng),
      head_(hidden, kRdpTargetDim, rng, /*gain=*/0.0) {}
// zero-initialized readout: predictions start at the standardized target mean

Mat RdpModel::forward_standardized(const std::vector<Mat>& x, bool cache) {
  const auto& h1 = gru1_.forward(x, cache);
  const auto& h2 = gru2_.forward(h1, cache);
  return head_.forward(h2.back(), cache);
}

void RdpModel::backward(const Mat& dout) {
  const Mat dh_last = head_.backward(dout);
  std::vector<Mat> dh2(kRdpWindow);
  dh2.back() = dh_last;
  const auto dh1 = gru2_.backward(dh2);
  gru1_.backward(dh1);
}

void RdpModel::zero_grad() {
  gru1_.zero_grad();
  gru2_.zero_grad();
  head_.zero_grad();
}

std::vector<ParamRef> RdpModel::params() {
  auto out = gru1_.params("rdp.g1");
  auto p2 = gru2_.params("rdp.g2");
  auto ph = head_.params("rdp.head");
  out.insert(out.end(), p2.begin(), p2.end());
  out.insert(out.end(), ph.begin(), ph.end());
  return out;
}

Wrench RdpModel::predict(const std::vector<RdpFeature>& window) const {
  if (window.size() > kRdpWindow)
    throw ShapeError("rdp: window longer than " + std::to_string(kRdpWindow));
  std::vector<Mat> seq(kRdpWindow, Mat(1, kRdpFeatureDim));
  const int pad = kRdpWindow - static_cast<int>(window.size());
  for (size_t k = 0; k < window.size(); ++k)
    norm_.standardize_feature(window[k], seq[pad + k].row(0));
  const auto& h1 = gru1_.forward(seq, /*cache=*/false);
  const auto& h2 = gru2_.forward(h1, /*cache=*/false);
  const Mat out = head_.forward(h2.back(), /*cache=*/false);
  const auto t = norm_.destandardize_target(out.row(0));
  return Wrench::from_flat(t, WrenchFrame::Mixed);
}

Checkpoint RdpModel::to_checkpoint() const {
  Checkpoint ck;
  ck.meta["kind"] = "rdp";
  ck.meta["window"] = std::to_string(kRdpWindow);
  ck.meta["feature_dim"] = std::to_string(kRdpFeatureDim);
  ck.meta["target_dim"] = std::to_string(kRdpTargetDim);
  ck.meta["hidden"] = std::to_string(hidden());
  auto self = const_cast<RdpModel*>(this);
  for (auto& r : self->params()) ck.add(r.name, *r.value);
  Mat stats(4, std::max(kRdpFeatureDim, kRdpTargetDim));
  for (int i = 0; i < kRdpFeatureDim; ++i) {
    stats.at(0, i) = norm_.f_mean[i];
    stats.at(1, i) = norm_.f_std[i];
  }
  for (int i = 0; i < kRdpTargetDim; ++i) {
    stats.at(2, i) = norm_.t_mean[i];
    stats.at(3, i) = norm_.t_std[i];
  }
  ck.add("rdp.norm", stats);
  return ck;
}

void RdpModel::save(const std::string& path) const { to_checkpoint().save(path); }

RdpModel RdpModel::from_checkpoint(const Checkpoint& ck) {
  if (ck.meta_at("kind") != "rdp") throw IoError("checkpoint is not an rdp model");
  Rng dummy(0);
  RdpModel m(static_cast<int>(ck.meta_long("hidden")), dummy);
  for (auto& r : m.params()) {
    Mat t;
    ck.to_mat(r.name, t);
    if (!t.same_shape(*r.value)) throw IoError("rdp tensor shape mismatch: " + r.name);
    *r.value = t;
  }
  Mat stats;
  ck.to_mat("rdp.norm", stats);
  for (int i = 0; i < kRdpFeatureDim; ++i) {
    m.norm_.f_mean[i] = stats.at(0, i);
    m.norm_.f_std[i] = stats.at(1, i);
  }
  for (int i = 0; i < kRdpTargetDim; ++i) {
    m.norm_.t_mean[i] = stats.at(2, i);
    m.norm_.t_std[i] = stats.at(3, i);
  }
  return m;
}

RdpModel RdpModel::load(const std::string& path) {
  return from_checkpoint(Checkpoint::load(path));
}

namespace {

struct WindowRef {
  int episode;
  int end;  // inclusive end tick of the window
};

// Gather a batch of standardized windows ending at the given ticks.
void gather(const RdpDataset& ds, const NormStats& norm,
            const std::vector<WindowRef>& refs, std::vector<Mat>& x, Mat& y) {
  const int b = static_cast<int>(refs.size());
  if (static_cast<int>(x.size()) != kRdpWindow) x.assign(kRdpWindow, Mat());
  for (auto& m : x)
    if (m.rows != b || m.cols != kRdpFeatureDim) m = Mat(b, kRdpFeatureDim);
  if (y.rows != b || y.cols != kRdpTargetDim) y = Mat(b, kRdpTargetDim);

  for (int k = 0; k < b; ++k) {
    const RdpEpisode& ep = ds.episodes[refs[k].episode];
    const int end = refs[k].end;
    for (int t = 0; t < kRdpWindow; ++t) {
      const int src = end - (kRdpWindow - 1 - t);
      double* row = x[t].row(k);
      if (src < 0) {
        std::fill(row, row + kRdpFeatureDim, 0.0);  // standardized-space padding
      } else {
        norm.standardize_feature(ep.features[src], row);
      }
    }
    norm.standardize_target(ep.targets[end], y.row(k));
  }
}

double mse(const Mat& pred, const Mat& target) {
  double s = 0.0;
  for (size_t i = 0; i < pred.d.size(); ++i) {
    const double d = pred.d[i] - target.d[i];
    s += d * d;
  }
  return s / pred.d.size();
}

}  // namespace

RdpTrainResult train_rdp(const RdpDataset& dataset, const RdpTrainConfig& cfg,
                         std::uint64_t seed) {
  // usable episodes
  std::vector<int> usable;
  for (size_t i = 0; i < dataset.episodes.size(); ++i) {
    const auto& ep = dataset.episodes[i];
    if (!cfg.include_crashed && ep.crashed) continue;
    if (ep.features.empty()) continue;
    usable.push_back(static_cast<int>(i));
  }
  if (usable.empty()) throw ConfigError("rdp training: empty dataset");

  Rng rng = Rng::derive(seed, 11);
  // split: deterministic shuffle, hold out the tail for validation
  for (int i = static_cast<int>(usable.size()) - 1; i > 0; --i)
    std::swap(usable[i], usable[rng.uniform_int(i + 1)]);
  const int n_val =
      std::min(static_cast<int>(usable.size()) - 1,
               static_cast<int>(std::round(cfg.val_fraction * usable.size())));
  std::vector<int> val_eps(usable.end() - n_val, usable.end());
  std::vector<int> train_eps(usable.begin(), usable.end() - n_val);

  RdpTrainResult result;
  result.model = RdpModel(cfg.hidden, rng);
  NormStats& norm = result.model.norm();

  // fit standardization on the training split
  {
    std::array<double, kRdpFeatureDim> fs{}, fs2{};
    std::array<double, kRdpTargetDim> ts{}, ts2{};
    long n = 0;
    for (int e : train_eps) {
      const auto& ep = dataset.episodes[e];
      for (size_t t = 0; t < ep.features.size(); ++t) {
        for (int i = 0; i < kRdpFeatureDim; ++i) {
          fs[i] += ep.features[t][i];
          fs2[i] += ep.features[t][i] * ep.features[t][i];
        }
        for (int i = 0; i < kRdpTargetDim; ++i) {
          ts[i] += ep.targets[t][i];
          ts2[i] += ep.targets[t][i] * ep.targets[t][i];
        }
        ++n;
      }
    }
    for (int i = 0; i < kRdpFeatureDim; ++i) {
      norm.f_mean[i] = fs[i] / n;
      norm.f_std[i] = std::max(
          std::sqrt(std::max(fs2[i] / n - norm.f_mean[i] * norm.f_mean[i], 0.0)),
          NormStats::kStdFloor);
    }
    for (int i = 0; i < kRdpTargetDim; ++i) {
      norm.t_mean[i] = ts[i] / n;
      norm.t_std[i] = std::max(
          std::sqrt(std::max(ts2[i] / n - norm.t_mean[i] * norm.t_mean[i], 0.0)),
          NormStats::kStdFloor);
    }
  }

  AdamOpt opt({cfg.lr, 0.9, 0.99});  // quicker second-moment decay suits
  opt.add_params(result.model.params());  // the shrinking-gradient regression

  auto sample_refs = [&](const std::vector<int>& eps, int count, Rng& r) {
    std::vector<WindowRef> refs(count);
    for (int k = 0; k < count; ++k) {
      const int e = eps[r.uniform_int(static_cast<int>(eps.size()))];
      const int len = static_cast<int>(dataset.episodes[e].features.size());
      refs[k] = {e, r.uniform_int(len)};
    }
    return refs;
  };

  // fixed validation batch
  Rng val_rng = Rng::derive(seed, 12);
  const auto val_refs = sample_refs(val_eps.empty() ? train_eps : val_eps,
                                    std::min(256L, std::max(16L, cfg.batch * 2L)),
                                    val_rng);

  std::vector<Mat> x;
  Mat y, vx_y;
  std::vector<Mat> vx;
  gather(dataset, norm, val_refs, vx, vx_y);

  double running = 0.0;
  long running_n = 0;
  for (long step = 1; step <= cfg.train_steps; ++step) {
    const double frac = static_cast<double>(step - 1) / std::max(1L, cfg.train_steps - 1);
    opt.config().lr = cfg.lr + (cfg.lr_final - cfg.lr) * frac;
    const auto refs = sample_refs(train_eps, cfg.batch, rng);
    gather(dataset, norm, refs, x, y);

    const Mat pred = result.model.forward_standardized(x, /*cache=*/true);
    const double loss = mse(pred, y);
    running += loss;
    ++running_n;

    Mat dout(pred.rows, pred.cols);
    const double scale = 2.0 / pred.d.size();
    for (size_t i = 0; i < pred.d.size(); ++i)
      dout.d[i] = scale * (pred.d[i] - y.d[i]);
    result.model.zero_grad();
    result.model.backward(dout);
    opt.step();

    if (step % cfg.eval_every == 0 || step == cfg.train_steps) {
      Mat vp = result.model.forward_standardized(vx, /*cache=*/false);
      const double vl = mse(vp, vx_y);
      result.train_loss.push_back(running / running_n);
      result.val_loss.push_back(vl);
      running = 0.0;
      running_n = 0;
      if (cfg.verbose) {
        std::printf("[rdp] step %5ld train %.5f val %.5f\n", step,
                    result.train_loss.back(), vl);
        std::fflush(stdout);
      }
    }
  }
  result.final_val_loss = result.val_loss.empty() ? 0.0 : result.val_loss.back();
  return result;
}

Wrench SmoothBuffer::push(const Wrench& raw) {
  buf_.push_back(raw);
  if (static_cast<int>(buf_.size()) > capacity_) buf_.pop_front();
  return mean();
}

Wrench SmoothBuffer::mean() const {
  Wrench m;
  if (buf_.empty()) return m;
  for (const auto& w : buf_) {
    m.force += w.force;
    m.torque += w.torque;
  }
  const double inv = 1.0 / buf_.size();
  m.force *= inv;
  m.torque *= inv;
  return m;
}

}  // namespace quadrl
