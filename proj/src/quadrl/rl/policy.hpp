#pragma once

#include <string>
#include <vector>

#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/nn/checkpoint.hpp"
#include "quadrl/nn/dense.hpp"
#include "quadrl/nn/gru.hpp"

namespace quadrl {

enum class NetArch { Mlp, Gru };

NetArch net_arch_from_string(const std::string& s);
std::string to_string(NetArch a);

struct NetConfig {
  NetArch arch = NetArch::Gru;  // recurrent trunk by default; mlp is the
                                // cheap option over the stacked window
  int frame_width = 22;
  int stack = 32;
  int hidden = 64;
  int layers = 2;

  int input_dim() const { return frame_width * stack; }
};

// Trunk mapping a flattened stacked window [B x stack*width] to a feature
// vector [B x hidden]. The GRU variant runs over the window frames from a
// zero initial hidden state every call (no hidden carry across windows).
class WindowNet {
 public:
  WindowNet() = default;
  WindowNet(const NetConfig& cfg, Rng& rng);

  Mat forward(const Mat& x, bool cache);
  void backward(const Mat& dfeat);
  void zero_grad();
  std::vector<ParamRef> params(const std::string& prefix);
  const NetConfig& config() const { return cfg_; }

 private:
  NetConfig cfg_;
  std::vector<DenseLayer> dense_;
  std::vector<Mat> act_;        // cached tanh outputs
  std::vector<GruLayer> gru_;
  std::vector<std::vector<Mat>> gru_in_;  // cached per-layer input sequences
  int steps_ = 0;
};

// Diagonal-Gaussian policy head on the trunk features; log-std is a free
// parameter, state independent, clamped to a configured range.
class GaussianPolicy {
 public:
  GaussianPolicy() = default;
  GaussianPolicy(const NetConfig& cfg, int act_dim, double log_std_init, Rng& rng,
                 const std::vector<double>& head_bias = {});

  Mat mean(const Mat& obs, bool cache);
  void backward(const Mat& dmean);
  std::vector<double> log_std() const;  // clamped values
  void add_log_std_grad(const std::vector<double>& g);

  void zero_grad();
  std::vector<ParamRef> params();
  int act_dim() const { return head_.out_dim(); }
  const NetConfig& net_config() const { return trunk_.config(); }

  void save(Checkpoint& ck, const std::string& prefix = "policy") const;
  static GaussianPolicy load(const Checkpoint& ck, const std::string& prefix = "policy");

  static constexpr double kLogStdMin = -4.0;
  static constexpr double kLogStdMax = 1.0;

 private:
  WindowNet trunk_;
  DenseLayer head_;
  Mat log_std_, dlog_std_;
  friend struct NetSerde;
};

class ValueNet {
 public:
  ValueNet() = default;
  ValueNet(const NetConfig& cfg, Rng& rng);

  std::vector<double> forward(const Mat& obs, bool cache);
  void backward(const std::vector<double>& dv);

  void zero_grad();
  std::vector<ParamRef> params();
  DenseLayer& head() { return head_; }

  void save(Checkpoint& ck, const std::string& prefix = "value") const;
  static ValueNet load(const Checkpoint& ck, const std::string& prefix = "value");

 private:
  WindowNet trunk_;
  DenseLayer head_;
  friend struct NetSerde;
};

}  // namespace quadrl
