#pragma once

#include <string>
#include <vector>

#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"

namespace quadrl {

// Named reference to one parameter tensor and its gradient accumulator.
struct ParamRef {
  std::string name;
  Mat* value;
  Mat* grad;
};

void init_uniform(Mat& m, Rng& rng, double bound);
// Xavier-uniform scaled by `gain` (small gains shrink untrained outputs).
void init_xavier(Mat& m, Rng& rng, double gain = 1.0);

// Fully connected layer y = x W^T + b operating on batches (x: B x in).
class DenseLayer {
 public:
  DenseLayer() = default;
  DenseLayer(int in, int out, Rng& rng, double gain = 1.0);

  // `cache` must be true when a backward pass will follow.
  Mat forward(const Mat& x, bool cache = true);
  // Accumulates dW/db, returns dL/dx.
  Mat backward(const Mat& dy);

  void zero_grad();
  std::vector<ParamRef> params(const std::string& prefix);

  int in_dim() const { return w.cols; }
  int out_dim() const { return w.rows; }

  Mat w, b;    // w: out x in, b: 1 x out
  Mat dw, db;

 private:
  Mat x_;      // cached input
};

}  // namespace quadrl
