#pragma once

#include <string>
#include <vector>

#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"
#include "quadrl/nn/dense.hpp"

namespace quadrl {

// Gated recurrent unit over batched sequences, with full backpropagation
// through time. Gate equations (sigmoid gates, tanh candidate, reset gate
// applied to the hidden path inside the candidate):
//   z_t = sigm(x_t Wz^T + bzi + h_{t-1} Uz^T + bzh)
//   r_t = sigm(x_t Wr^T + bri + h_{t-1} Ur^T + brh)
//   n_t = tanh(x_t Wn^T + bni + r_t o (h_{t-1} Un^T + bnh))
//   h_t = (1 - z_t) o n_t + z_t o h_{t-1}
class GruLayer {
 public:
  GruLayer() = default;
  GruLayer(int in, int hidden, Rng& rng);

  // x[t]: B x in, shared B across steps; h0 is zero. Returns h[t]: B x hidden.
  const std::vector<Mat>& forward(const std::vector<Mat>& x, bool cache = true);

  // dh_ext[t] is the loss gradient arriving at h_t from outside the layer
  // (empty Mat = zero). Accumulates parameter grads, returns dL/dx[t].
  std::vector<Mat> backward(const std::vector<Mat>& dh_ext);

  void zero_grad();
  std::vector<ParamRef> params(const std::string& prefix);

  int in_dim() const { return wz.cols; }
  int hidden_dim() const { return wz.rows; }

  Mat wz, wr, wn;               // hidden x in
  Mat uz, ur, un;               // hidden x hidden
  Mat bzi, bri, bni;            // 1 x hidden, input-path biases
  Mat bzh, brh, bnh;            // 1 x hidden, hidden-path biases
  Mat dwz, dwr, dwn, duz, dur, dun;
  Mat dbzi, dbri, dbni, dbzh, dbrh, dbnh;

 private:
  std::vector<Mat> h_;                       // outputs
  std::vector<Mat> x_, z_, r_, n_, g_;       // caches (g = hidden path preact)
};

}  // namespace quadrl
