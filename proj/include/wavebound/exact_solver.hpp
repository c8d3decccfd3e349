#ifndef WAVEBOUND_EXACT_SOLVER_HPP
#define WAVEBOUND_EXACT_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavebound/eos.hpp"

/*
 * Slow, high-precision ground truth for the Riemann problem: exact star
 * pressure, intermediate states and extreme wave speeds. Root finding here is
 * bisection-safeguarded Newton on phi, deliberately a different scheme from
 * the estimator's quadratic interpolation so the two cannot share a bug.
 */

namespace wavebound {

enum class WaveKind { Shock, Rarefaction };

inline const char* to_string(WaveKind w) {
  return w == WaveKind::Shock ? "shock" : "rarefaction";
}

struct ExactSolution {
  double p_star = 0.0;
  double u_star = 0.0;  // contact speed lambda_2
  double lambda_1_minus = 0.0, lambda_1_plus = 0.0;
  double lambda_3_minus = 0.0, lambda_3_plus = 0.0;
  double rho_star_left = 0.0, rho_star_right = 0.0;
  WaveKind left_wave = WaveKind::Rarefaction;
  WaveKind right_wave = WaveKind::Rarefaction;
  double lambda_max = 0.0;  // max((lambda_1^-)_-, (lambda_3^+)_+)
};

namespace detail {

inline void require_nonvacuum_pair(const PrimitiveState& left, const PrimitiveState& right,
                                   const GasParams& gas) {
  validate_gas(gas);
  validate_state(left, gas);
  validate_state(right, gas);
  if (left.is_vacuum() || right.is_vacuum())
    throw std::invalid_argument("exact solver requires non-vacuum states");
}

}  // namespace detail

/*
 * Exact star pressure: the root of phi, or 0 when the data opens a vacuum.
 * Bisection-safeguarded Newton, iterated until the bracket is a few ulps
 * wide relative to the root, so the result is as sharp as the double
 * evaluation of phi allows. (|phi| at the returned root then sits at the
 * evaluation noise floor, far below 1e-14 (a_L + a_R) in the tame regime.)
 *
 * Two regimes need care. While the lower end is still 0 the step is a
 * log-space descent (hi / 2^16), because gamma near 1 makes phi nearly
 * logarithmic and the root can sit hundreds of decades below the data
 * pressures. If the descent reaches 1e-280 the root is not representable as
 * a normal double; the certified upper endpoint is returned and callers
 * treat the star region as resolved only up to that floor.
 */
inline double p_star_exact(const PrimitiveState& left, const PrimitiveState& right,
                           const GasParams& gas) {
  detail::require_nonvacuum_pair(left, right, gas);
  if (vacuum_forms(left, right, gas)) return 0.0;

  const auto eval = [&](double p) { return phi(p, left, right, gas); };

  double lo = 0.0;
  double hi = std::max(std::max(left.p, right.p), 1.0);
  // Use the data pressures to narrow the initial bracket before expanding.
  const double p_min = std::min(left.p, right.p);
  const double p_max = std::max(left.p, right.p);
  if (eval(p_min) >= 0.0) {
    hi = p_min;
  } else if (eval(p_max) >= 0.0) {
    lo = p_min;
    hi = p_max;
  } else {
    lo = p_max;
    int doublings = 0;
    while (eval(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 200)
        throw std::runtime_error("p_star_exact: bracket expansion failed");
    }
  }
  double f_lo = eval(lo);
  if (f_lo > 0.0) return lo;  // p_min was the root to rounding

  constexpr double rel_width = 4e-16;  // ~2 ulps
  constexpr double p_floor = 1e-280;

  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= rel_width * hi) return 0.5 * (lo + hi);
    if (hi <= p_floor) return hi;

    double x = (lo == 0.0) ? hi * 0x1.0p-16 : 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    if (!(x > lo && x < hi)) return hi;  // no representable point in between
    const double fx = eval(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }

    // Newton from the lower end; concavity keeps the step below the root, so
    // it can only sharpen lo.
    if (lo > 0.0 && hi - lo > rel_width * hi) {
      const double df = phi_prime(lo, left, right, gas);
      if (std::isfinite(df) && df > 0.0) {
        const double xn = lo - f_lo / df;
        if (xn > lo && xn < hi) {
          const double fxn = eval(xn);
          if (fxn == 0.0) return xn;
          if (fxn < 0.0) {
            lo = xn;
            f_lo = fxn;
          } else {
            hi = xn;
          }
        }
      }
    }
  }
  throw std::runtime_error("p_star_exact: no convergence after 200 iterations");
}

namespace detail {

// Density behind a shock of strength beta = p*/p_Z (Rankine-Hugoniot with the
// co-volume EOS). The p_Z = 0 case is the beta -> infinity limit.
inline double shock_density(const PrimitiveState& s, double p_star, const GasParams& gas) {
  const double g = gas.gamma;
  const double y = gas.b * s.rho;
  if (s.p == 0.0) return s.rho * (g + 1.0) / (g - 1.0 + 2.0 * y);
  const double beta = p_star / s.p;
  return s.rho * (beta + (g - 1.0) / (g + 1.0)) /
         ((g - 1.0 + 2.0 * y) / (g + 1.0) * beta + (g + 1.0 - 2.0 * y) / (g + 1.0));
}

// Density at pressure p along the isentrope through state s:
// (1/rho - b) = (1/rho_Z - b)(p_Z / p)^{1/gamma}.
inline double rarefaction_density(const PrimitiveState& s, double p, const GasParams& gas) {
  const double v = gas.b + (1.0 / s.rho - gas.b) * std::pow(s.p / p, 1.0 / gas.gamma);
  return 1.0 / v;
}

inline double exact_speed_offset(double p_star, const PrimitiveState& s, const GasParams& gas) {
  const double rc = s.rho * (1.0 - gas.b * s.rho);
  const double excess = p_star > s.p ? p_star - s.p : 0.0;
  return std::sqrt(gas.gamma * s.p / rc + (gas.gamma + 1.0) / (2.0 * rc) * excess);
}

}  // namespace detail

/// Full wave structure of the exact solution: p*, u*, intermediate densities
/// and all six wave speeds.
inline ExactSolution solve_exact(const PrimitiveState& left, const PrimitiveState& right,
                                 const GasParams& gas) {
  detail::require_nonvacuum_pair(left, right, gas);
  ExactSolution sol;
  sol.p_star = p_star_exact(left, right, gas);
  const double a_l = sound_speed(left, gas);
  const double a_r = sound_speed(right, gas);

  if (sol.p_star == 0.0) {
    // Two rarefactions around a vacuum region. The fans end at the vacuum
    // fronts; there is no single contact speed, so u* is reported as the
    // midpoint of the two fronts.
    const double covol_l = 1.0 - gas.b * left.rho;
    const double covol_r = 1.0 - gas.b * right.rho;
    sol.left_wave = sol.right_wave = WaveKind::Rarefaction;
    sol.lambda_1_minus = left.u - a_l;
    sol.lambda_1_plus = left.u + 2.0 * a_l * covol_l / (gas.gamma - 1.0);
    sol.lambda_3_minus = right.u - 2.0 * a_r * covol_r / (gas.gamma - 1.0);
    sol.lambda_3_plus = right.u + a_r;
    sol.u_star = 0.5 * (sol.lambda_1_plus + sol.lambda_3_minus);
    sol.rho_star_left = sol.rho_star_right = 0.0;
    sol.lambda_max = std::max(std::max(-sol.lambda_1_minus, 0.0),
                              std::max(sol.lambda_3_plus, 0.0));
    return sol;
  }

  sol.u_star = left.u - f_wave(sol.p_star, left, gas);

  if (sol.p_star >= left.p) {
    sol.left_wave = WaveKind::Shock;
    sol.rho_star_left = detail::shock_density(left, sol.p_star, gas);
    sol.lambda_1_minus = left.u - detail::exact_speed_offset(sol.p_star, left, gas);
    sol.lambda_1_plus = sol.lambda_1_minus;
  } else {
    sol.left_wave = WaveKind::Rarefaction;
    sol.rho_star_left = detail::rarefaction_density(left, sol.p_star, gas);
    sol.lambda_1_minus = left.u - a_l;
    const PrimitiveState star_l{sol.rho_star_left, sol.u_star, sol.p_star};
    sol.lambda_1_plus = sol.u_star - sound_speed(star_l, gas);
  }

  if (sol.p_star >= right.p) {
    sol.right_wave = WaveKind::Shock;
    sol.rho_star_right = detail::shock_density(right, sol.p_star, gas);
    sol.lambda_3_plus = right.u + detail::exact_speed_offset(sol.p_star, right, gas);
    sol.lambda_3_minus = sol.lambda_3_plus;
  } else {
    sol.right_wave = WaveKind::Rarefaction;
    sol.rho_star_right = detail::rarefaction_density(right, sol.p_star, gas);
    sol.lambda_3_plus = right.u + a_r;
    const PrimitiveState star_r{sol.rho_star_right, sol.u_star, sol.p_star};
    sol.lambda_3_minus = sol.u_star + sound_speed(star_r, gas);
  }

  sol.lambda_max =
      std::max(std::max(-sol.lambda_1_minus, 0.0), std::max(sol.lambda_3_plus, 0.0));
  return sol;
}

/// The traditional estimate max(|u_L|+a_L, |u_R|+a_R). Neither an upper nor a
/// lower bound on lambda_max; kept as the comparison baseline.
inline double naive_estimate(const PrimitiveState& left, const PrimitiveState& right,
                             const GasParams& gas) {
  detail::require_nonvacuum_pair(left, right, gas);
  return std::max(std::abs(left.u) + sound_speed(left, gas),
                  std::abs(right.u) + sound_speed(right, gas));
}

/// Verifies 0 < 1 - b*rho <= 1 at both star densities and across `samples`
/// interior points of each rarefaction fan. worst_margin is the smallest
/// 1 - b*rho seen (the distance from the admissibility violation at 0).
struct AdmissibilityReport {
  bool pass = true;
  double worst_margin = 1.0;
};

inline AdmissibilityReport check_admissibility(const ExactSolution& sol,
                                               const PrimitiveState& left,
                                               const PrimitiveState& right,
                                               const GasParams& gas, int samples = 32) {
  AdmissibilityReport rep;
  const auto probe = [&](double rho) {
    const double covol = 1.0 - gas.b * rho;
    rep.worst_margin = std::min(rep.worst_margin, covol);
    if (!(covol > 0.0 && covol <= 1.0 + 1e-12)) rep.pass = false;
  };
  probe(sol.rho_star_left);
  probe(sol.rho_star_right);
  // The fans are monotone in p, but sample the interiors anyway.
  const auto sample_fan = [&](const PrimitiveState& s) {
    const double p_lo = std::max(sol.p_star, s.p * 1e-12);
    if (s.p <= 0.0 || p_lo >= s.p) return;
    for (int i = 1; i < samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      const double p = s.p * std::pow(p_lo / s.p, t);  // geometric in p
      probe(detail::rarefaction_density(s, p, gas));
    }
  };
  if (sol.left_wave == WaveKind::Rarefaction) sample_fan(left);
  if (sol.right_wave == WaveKind::Rarefaction) sample_fan(right);
  return rep;
}

/// c(gamma) of the gap condition lambda_3^+ - lambda_1^- >= c(gamma)(a_L+a_R).
inline double gap_lower_bound(const GasParams& gas) {
  validate_gas(gas);
  if (gas.gamma <= 3.0)
    return 2.0 * std::sqrt(2.0 * (gas.gamma - 1.0)) / (gas.gamma + 1.0);
  return 1.0;
}

}  // namespace wavebound

#endif  // WAVEBOUND_EXACT_SOLVER_HPP
