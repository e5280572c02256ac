#include "quadrl/nn/gaussian.hpp"

#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {
namespace diag_gaussian {

std::vector<double> log_prob(const Mat& mean, const std::vector<double>& log_std,
                             const Mat& actions) {
  if (!mean.same_shape(actions) || mean.cols != static_cast<int>(log_std.size()))
    throw ShapeError("gaussian: shape mismatch");
  std::vector<double> out(mean.rows);
  for (int i = 0; i < mean.rows; ++i) {
    double lp = 0.0;
    const double* mu = mean.row(i);
    const double* a = actions.row(i);
    for (int j = 0; j < mean.cols; ++j) {
      const double sd = std::exp(log_std[j]);
      const double z = (a[j] - mu[j]) / sd;
      lp += -0.5 * z * z - log_std[j] - 0.5 * kLog2Pi;
    }
    out[i] = lp;
  }
  return out;
}

double entropy(const std::vector<double>& log_std) {
  double h = 0.0;
  for (double ls : log_std) h += 0.5 * (1.0 + kLog2Pi) + ls;
  return h;
}

Mat sample(const Mat& mean, const std::vector<double>& log_std, Rng& rng) {
  Mat out(mean.rows, mean.cols);
  for (int i = 0; i < mean.rows; ++i)
    for (int j = 0; j < mean.cols; ++j)
      out.at(i, j) = mean.at(i, j) + std::exp(log_std[j]) * rng.normal();
  return out;
}

Mat dlogp_dmean(const Mat& mean, const std::vector<double>& log_std,
                const Mat& actions, const std::vector<double>& scale,
                std::vector<double>& dlog_std) {
  Mat dmean(mean.rows, mean.cols);
  for (int i = 0; i < mean.rows; ++i) {
    const double s = scale[i];
    const double* mu = mean.row(i);
    const double* a = actions.row(i);
    double* dm = dmean.row(i);
    for (int j = 0; j < mean.cols; ++j) {
      const double var = std::exp(2.0 * log_std[j]);
      const double diff = a[j] - mu[j];
      dm[j] = s * diff / var;                      // d lp / d mu
      dlog_std[j] += s * (diff * diff / var - 1.0);  // d lp / d log_std
    }
  }
  return dmean;
}

}  // namespace diag_gaussian
}  // namespace quadrl
