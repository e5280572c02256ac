#pragma once

#include <optional>
#include <vector>

#include "quadrl/io/episode_log.hpp"

namespace quadrl {

struct TrackingMetrics {
  double rmse = 0.0;     // m
  double max_err = 0.0;  // m
  double std_err = 0.0;  // m, std of the error magnitude
  std::optional<double> delay;  // s, positive = actual lags the reference
  std::optional<double> phase;  // deg, 360 * delay / period
  bool crashed = false;
  int samples = 0;
};

// Root mean square Euclidean position error over the metric window.
// Throws ConfigError on an empty log.
double rmse(const EpisodeLog& log);

// Delay via normalized cross-correlation between actual and reference x(t),
// lags restricted to [-T/4, T/4], parabolic sub-sample peak refinement.
// Returns nullopt for degenerate (constant) signals.
std::optional<double> delay_seconds(const std::vector<double>& actual,
                                    const std::vector<double>& reference,
                                    double dt, double period);

// All tracking metrics of a log; delay/phase only when `period` > 0.
TrackingMetrics tracking_metrics(const EpisodeLog& log, double period = 0.0);

}  // namespace quadrl
