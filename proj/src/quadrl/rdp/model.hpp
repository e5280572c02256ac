#pragma once

#include <deque>
#include <string>
#include <vector>

#include "quadrl/nn/adam.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/nn/gru.hpp"
#include "quadrl/rdp/dataset.hpp"
#include "quadrl/rdp/feature.hpp"
#include "quadrl/sim/wrench.hpp"

namespace quadrl {

// Residual dynamics predictor: two GRU layers over a 64-step standardized
// feature window, linear readout of the 6D wrench at the final step.
class RdpModel {
 public:
  RdpModel() = default;
  RdpModel(int hidden, Rng& rng);

  // Window of up to kRdpWindow most-recent features, oldest first. Shorter
  // windows are left-padded with zeros in standardized space. More than
  // kRdpWindow entries is an error.
  Wrench predict(const std::vector<RdpFeature>& window) const;

  // Batched training forward on pre-standardized sequences x[t]: B x 26.
  Mat forward_standardized(const std::vector<Mat>& x, bool cache);
  void backward(const Mat& dout);
  void zero_grad();
  std::vector<ParamRef> params();

  NormStats& norm() { return norm_; }
  const NormStats& norm() const { return norm_; }
  int hidden() const { return gru1_.hidden_dim(); }

  void save(const std::string& path) const;
  Checkpoint to_checkpoint() const;
  static RdpModel load(const std::string& path);
  static RdpModel from_checkpoint(const Checkpoint& ck);

 private:
  mutable GruLayer gru1_, gru2_;  // mutable: inference forward reuses the
  mutable DenseLayer head_;       // cache-free path of the training layers
  NormStats norm_;
};

struct RdpTrainConfig {
  int hidden = 64;
  long train_steps = 1200;   // minibatch gradient steps
  int batch = 64;
  double lr = 1e-3;
  double lr_final = 1e-5;    // linear decay target over train_steps
  double val_fraction = 0.1;  // episodes held out for validation
  int eval_every = 100;
  bool include_crashed = true;
  bool verbose = false;
};

struct RdpTrainResult {
  RdpModel model;
  std::vector<double> train_loss;       // per eval_every window, standardized MSE
  std::vector<double> val_loss;
  double final_val_loss = 0.0;
};

// Sequence-to-vector regression of the wrench from uniformly sampled
// windows; NormStats are fit on the training split only.
RdpTrainResult train_rdp(const RdpDataset& dataset, const RdpTrainConfig& cfg,
                         std::uint64_t seed);

// Rolling mean over the last `capacity` raw predictions.
class SmoothBuffer {
 public:
  explicit SmoothBuffer(int capacity = 32) : capacity_(capacity) {}

  Wrench push(const Wrench& raw);  // returns the smoothed value
  Wrench mean() const;
  int size() const { return static_cast<int>(buf_.size()); }
  void reset() { buf_.clear(); }

 private:
  int capacity_;
  std::deque<Wrench> buf_;
};

}  // namespace quadrl
