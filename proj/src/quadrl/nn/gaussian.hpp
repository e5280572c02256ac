#pragma once

#include <vector>

#include "quadrl/math/mat.hpp"
#include "quadrl/math/rng.hpp"

namespace quadrl {

// Diagonal Gaussian with state-dependent mean and state-independent log-std.
// All functions operate on batches (mean: B x dim, actions: B x dim).
namespace diag_gaussian {

inline constexpr double kLog2Pi = 1.8378770664093454836;

// log N(a | mean, exp(log_std)) summed over dims, one value per row.
std::vector<double> log_prob(const Mat& mean, const std::vector<double>& log_std,
                             const Mat& actions);

// Entropy of the distribution (state-independent std => scalar).
double entropy(const std::vector<double>& log_std);

// Reparameterized draw: mean + std * eps.
Mat sample(const Mat& mean, const std::vector<double>& log_std, Rng& rng);

// d log_prob / d mean for each sample, scaled per row by `scale`.
// Also accumulates d log_prob / d log_std into dlog_std.
Mat dlogp_dmean(const Mat& mean, const std::vector<double>& log_std,
                const Mat& actions, const std::vector<double>& scale,
                std::vector<double>& dlog_std);

}  // namespace diag_gaussian

}  // namespace quadrl
