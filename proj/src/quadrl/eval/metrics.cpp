#include "quadrl/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "quadrl/error.hpp"

namespace quadrl {

double rmse(const EpisodeLog& log) {
  const auto ticks = log.metric_ticks();
  if (ticks.empty()) throw ConfigError("rmse: empty metric window");
  double s = 0.0;
  for (const auto& tk : ticks) s += (tk.state.p - tk.ref).norm2();
  return std::sqrt(s / ticks.size());
}

namespace {

// Pearson correlation of actual[t] vs reference[t - k] over the overlap.
std::optional<double> lag_correlation(const std::vector<double>& a,
                                      const std::vector<double>& r, int k) {
  const int n = static_cast<int>(a.size());
  const int lo = std::max(0, k);
  const int hi = n + std::min(0, k);  // exclusive
  const int m = hi - lo;
  if (m < 8) return std::nullopt;
  double ma = 0, mr = 0;
  for (int t = lo; t < hi; ++t) {
    ma += a[t];
    mr += r[t - k];
  }
  ma /= m;
  mr /= m;
  double saa = 0, srr = 0, sar = 0;
  for (int t = lo; t < hi; ++t) {
    const double da = a[t] - ma;
    const double dr = r[t - k] - mr;
    saa += da * da;
    srr += dr * dr;
    sar += da * dr;
  }
  if (saa < 1e-12 || srr < 1e-12) return std::nullopt;
  return sar / std::sqrt(saa * srr);
}

}  // namespace

std::optional<double> delay_seconds(const std::vector<double>& actual,
                                    const std::vector<double>& reference,
                                    double dt, double period) {
  if (actual.size() != reference.size() || actual.size() < 16) return std::nullopt;
  const int max_lag = static_cast<int>(std::round(period / 4.0 / dt));
  if (max_lag < 1) return std::nullopt;

  std::vector<double> corr(2 * max_lag + 1);
  bool any = false;
  for (int k = -max_lag; k <= max_lag; ++k) {
    const auto c = lag_correlation(actual, reference, k);
    if (!c) return std::nullopt;  // degenerate overlap somewhere in range
    corr[k + max_lag] = *c;
    any = true;
  }
  if (!any) return std::nullopt;

  int best = 0;
  for (int i = 1; i < static_cast<int>(corr.size()); ++i)
    if (corr[i] > corr[best]) best = i;

  double refined = static_cast<double>(best);
  if (best > 0 && best + 1 < static_cast<int>(corr.size())) {
    const double c0 = corr[best - 1], c1 = corr[best], c2 = corr[best + 1];
    const double denom = c0 - 2.0 * c1 + c2;
    if (std::fabs(denom) > 1e-12) {
      const double d = 0.5 * (c0 - c2) / denom;
      refined += std::clamp(d, -0.5, 0.5);
    }
  }
  return (refined - max_lag) * dt;
}

TrackingMetrics tracking_metrics(const EpisodeLog& log, double period) {
  TrackingMetrics m;
  m.crashed = log.crashed;
  const auto ticks = log.metric_ticks();
  m.samples = static_cast<int>(ticks.size());
  if (ticks.empty()) return m;

  double sum_sq = 0.0, sum = 0.0;
  std::vector<double> mag(ticks.size());
  for (size_t i = 0; i < ticks.size(); ++i) {
    const double e = (ticks[i].state.p - ticks[i].ref).norm();
    mag[i] = e;
    sum += e;
    sum_sq += e * e;
    m.max_err = std::max(m.max_err, e);
  }
  m.rmse = std::sqrt(sum_sq / ticks.size());
  const double mean = sum / ticks.size();
  double var = 0.0;
  for (double e : mag) var += (e - mean) * (e - mean);
  m.std_err = std::sqrt(var / ticks.size());

  if (period > 0.0) {
    std::vector<double> ax(ticks.size()), rx(ticks.size());
    for (size_t i = 0; i < ticks.size(); ++i) {
      ax[i] = ticks[i].state.p.x;
      rx[i] = ticks[i].ref.x;
    }
    const double dt = ticks.size() > 1 ? ticks[1].t - ticks[0].t : 0.0;
    if (dt > 0.0) {
      m.delay = delay_seconds(ax, rx, dt, period);
      if (m.delay) m.phase = 360.0 * (*m.delay) / period;
    }
  }
  return m;
}

}  // namespace quadrl
