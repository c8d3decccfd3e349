#ifndef WAVEBOUND_BENCH_HPP
#define WAVEBOUND_BENCH_HPP

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wavebound/fixtures.hpp"

// Throughput and convergence-order measurement on the reference cases.

namespace wavebound::bench {

struct ThroughputResult {
  std::string case_id;
  long long repetitions = 0;
  double seconds = 0.0;
  double calls_per_second = 0.0;
  double checksum = 0.0;  // folded results, keeps the loop from being elided
};

/// Wall-clock timing of `repetitions` estimator calls on one reference case.
inline ThroughputResult throughput(const std::string& case_id, long long repetitions) {
  if (repetitions < 1) throw std::invalid_argument("throughput: repetitions must be >= 1");
  const FixtureCase& c = find_fixture(case_id);
  EstimatorConfig cfg;
  cfg.eps = c.eps;
  ThroughputResult res;
  res.case_id = case_id;
  res.repetitions = repetitions;
  double sink = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (long long i = 0; i < repetitions; ++i) {
    const SpeedEstimate est = estimate_lambda_max(c.left, c.right, c.gas, cfg);
    sink += est.lambda_max_upper + est.bracket.p1;
  }
  const auto t1 = std::chrono::steady_clock::now();
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  res.checksum = sink;
  res.calls_per_second = repetitions / std::max(res.seconds, 1e-12);
  return res;
}

struct ConvergenceFit {
  bool determinate = false;
  double order = 0.0;
  std::vector<double> widths;
};

/// Least-squares slope of log w_{k+1} against log w_k over the widths above
/// the resolution floor. Cubic convergence shows up as a slope near 3,
/// bisection as a slope near 1.
inline ConvergenceFit fit_width_order(const std::vector<double>& widths, double floor) {
  ConvergenceFit fit;
  fit.widths = widths;
  std::vector<double> usable;
  for (double w : widths) {
    if (!(w > floor)) break;  // stop at the first resolved/collapsed width
    usable.push_back(std::log(w));
  }
  if (usable.size() < 3) return fit;  // need two consecutive ratios
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t n = usable.size() - 1;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = usable[j], y = usable[j + 1];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.determinate = true;
  fit.order = (n * sxy - sx * sy) / denom;
  return fit;
}

/// Bracket-width convergence order on one reference case, with the Newton
/// initialization disabled and the stopping test effectively off so the
/// iteration runs until the roundoff guard fires. Cases that stop at k = 0
/// report indeterminate.
inline ConvergenceFit convergence_order(const std::string& case_id) {
  const FixtureCase& c = find_fixture(case_id);
  EstimatorConfig cfg;
  cfg.eps = std::numeric_limits<double>::denorm_min();
  cfg.skip_newton_init = true;
  IterationTrace trace;
  const SpeedEstimate est = estimate_lambda_max(c.left, c.right, c.gas, cfg, &trace);
  std::vector<double> widths;
  widths.reserve(trace.brackets.size());
  for (const PressureBracket& b : trace.brackets) widths.push_back(b.p2 - b.p1);
  const double floor = 1e-12 * std::max(1.0, est.bracket.p2);
  return fit_width_order(widths, floor);
}

}  // namespace wavebound::bench

#endif  // WAVEBOUND_BENCH_HPP
