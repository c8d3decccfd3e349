#ifndef WAVEBOUND_ESTIMATOR_HPP
#define WAVEBOUND_ESTIMATOR_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wavebound/eos.hpp"

/*
 * Guaranteed upper bound on the maximum wave speed of the 1D Riemann problem
 * for co-volume Euler, to a prescribed relative accuracy eps.
 *
 * The scheme brackets the star pressure p* in [p1, p2], initialized from the
 * two-rarefaction pressure (a certified upper bound for gamma <= 5/3) plus
 * one Newton improvement of p1, then tightens the bracket with the zeros of
 * the two quadratic interpolants of phi on (p1, p1, p2) and (p1, p2, p2).
 * Convergence is cubic; every iterate keeps p1 <= p* <= p2, so the derived
 * speed bounds are valid at any iteration, not just at convergence.
 */

namespace wavebound {

/// Certified enclosure [p1, p2] of the star pressure after k updates.
struct PressureBracket {
  double p1 = 0.0;
  double p2 = 0.0;
  int k = 0;
};

enum class Termination {
  TwoRarefactionFastPath,  // phi(p_min) >= 0: extreme speeds known exactly
  ExactRootHit,            // phi(p_max) == 0: p* = p_max
  InitAccurate,            // accuracy test passed at k = 0
  Converged,               // accuracy test passed after k >= 1 updates
  RoundoffExit,            // phi sign flipped on an endpoint: p* resolved to roundoff
  IterationCap,            // bound still certified, requested accuracy not reached
  VacuumData,              // one (or both) input states were vacuum
  VacuumFormation,         // phi(0) >= 0: two rarefactions around a vacuum, p* = 0
};

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::TwoRarefactionFastPath: return "two-rarefaction-fast-path";
    case Termination::ExactRootHit: return "exact-root-hit";
    case Termination::InitAccurate: return "init-accurate";
    case Termination::Converged: return "converged";
    case Termination::RoundoffExit: return "roundoff-exit";
    case Termination::IterationCap: return "iteration-cap";
    case Termination::VacuumData: return "vacuum-data";
    case Termination::VacuumFormation: return "vacuum-formation";
  }
  return "unknown";
}

/// Certified wave-speed bounds plus iteration diagnostics.
/// v11 <= lambda_1^- <= v12 and v31 <= lambda_3^+ <= v32 always hold, hence
/// lambda_min <= true lambda_max <= lambda_max_upper.
struct SpeedEstimate {
  double v11 = 0.0, v12 = 0.0, v31 = 0.0, v32 = 0.0;
  double lambda_min = 0.0;        // certified lower bound, may be 0
  double lambda_max_upper = 0.0;  // certified upper bound
  PressureBracket bracket;
  int iterations = 0;
  Termination termination = Termination::Converged;
  bool used_expansion_bracket = false;  // p2^0 came from doubling, not p~*
};

enum class UpdateScheme { Jacobi, Seidel };

struct EstimatorConfig {
  double eps = 1e-10;
  int iteration_cap = 64;
  UpdateScheme update_scheme = UpdateScheme::Jacobi;
  bool skip_newton_init = false;
  bool require_guaranteed_gamma = false;

  void validate() const {
    if (!(std::isfinite(eps) && eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (iteration_cap < 1) throw std::invalid_argument("iteration_cap must be >= 1");
  }
};

/// Optional per-iteration record of the bracket sequence, for diagnostics.
struct IterationTrace {
  std::vector<PressureBracket> brackets;
};

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }
inline double neg_part(double x) { return x < 0.0 ? -x : 0.0; }

namespace detail {

// a_Z * sqrt(1 + (gamma+1)/(2 gamma) * ((p - p_Z)/p_Z)_+), written without
// the division by p_Z so that p_Z = 0 states stay finite.
inline double extreme_speed_offset(double p, const PrimitiveState& s, const GasParams& gas) {
  const double rc = s.rho * (1.0 - gas.b * s.rho);
  return std::sqrt(gas.gamma * s.p / rc +
                   (gas.gamma + 1.0) / (2.0 * rc) * pos_part(p - s.p));
}

struct Bounds {
  double v11, v12, v31, v32, lmin, lmax;
};

inline Bounds bounds_for(double p1, double p2, const PrimitiveState& left,
                         const PrimitiveState& right, const GasParams& gas) {
  Bounds b;
  b.v11 = left.u - extreme_speed_offset(p2, left, gas);
  b.v12 = left.u - extreme_speed_offset(p1, left, gas);
  b.v31 = right.u + extreme_speed_offset(p1, right, gas);
  b.v32 = right.u + extreme_speed_offset(p2, right, gas);
  b.lmax = std::max(pos_part(b.v32), neg_part(b.v11));
  b.lmin = pos_part(std::max(pos_part(b.v31), neg_part(b.v12)));
  return b;
}

inline SpeedEstimate make_estimate(const Bounds& b, double p1, double p2, int k,
                                   Termination term, bool expanded) {
  SpeedEstimate e;
  e.v11 = b.v11;
  e.v12 = b.v12;
  e.v31 = b.v31;
  e.v32 = b.v32;
  e.lambda_min = b.lmin;
  e.lambda_max_upper = b.lmax;
  e.bracket = {p1, p2, k};
  e.iterations = k;
  e.termination = term;
  e.used_expansion_bracket = expanded;
  return e;
}

// Zero of the quadratic interpolating phi at (p1, p1, p2); lands in [p1, p*].
inline double quad_lower(double p1, double p2, double f1, double fp1, double f2) {
  if (p2 == p1 || f1 == 0.0) return p1;
  const double dd = (f2 - f1) / (p2 - p1);
  const double d2 = (dd - fp1) / (p2 - p1);
  const double disc = std::max(fp1 * fp1 - 4.0 * f1 * d2, 0.0);
  const double r = p1 - 2.0 * f1 / (fp1 + std::sqrt(disc));
  if (!std::isfinite(r)) return p1;
  return std::clamp(r, p1, p2);
}

// Zero of the quadratic interpolating phi at (p1, p2, p2); lands in [p*, p2].
// When the root sits in the lower half of a bracket spanning many decades,
// subtracting the step from p2 cancels catastrophically; the same quadratic
// is then re-anchored at p1 (where it interpolates phi(p1) exactly), which
// evaluates the identical root stably.
inline double quad_upper(double p1, double p2, double f1, double f2, double fp2) {
  if (p2 == p1 || f2 == 0.0) return p2;
  const double dd = (f2 - f1) / (p2 - p1);
  const double d2 = (fp2 - dd) / (p2 - p1);
  const double disc = std::max(fp2 * fp2 - 4.0 * f2 * d2, 0.0);
  const double step = 2.0 * f2 / (fp2 + std::sqrt(disc));
  double r;
  if (step <= 0.5 * (p2 - p1)) {
    r = p2 - step;
  } else {
    const double slope_at_p1 = 2.0 * dd - fp2;  // P_u'(p1), positive for a valid bracket
    const double disc1 = std::max(slope_at_p1 * slope_at_p1 - 4.0 * f1 * d2, 0.0);
    r = p1 - 2.0 * f1 / (slope_at_p1 + std::sqrt(disc1));
  }
  if (!std::isfinite(r)) return p2;
  return std::clamp(r, p1, p2);
}

// Grow p geometrically until phi(p) >= 0. Used when p~* is not certified
// (gamma > 5/3) or its certificate fails numerically.
struct PositivePoint {
  double p;
  double f;  // phi(p) >= 0
};

inline PositivePoint expand_upper(const PrimitiveState& left, const PrimitiveState& right,
                                  const GasParams& gas) {
  double p = std::max(std::max(left.p, right.p), 1.0);
  for (int i = 0; i < 200; ++i) {
    const double f = phi(p, left, right, gas);
    if (f >= 0.0) return {p, f};
    p *= 2.0;
  }
  throw std::runtime_error("upper-bracket expansion failed after 200 doublings");
}

// Zero of the chord through (a, fa <= 0) and (b, fb >= 0). The chord lies
// below a concave phi, so its zero is a certified upper bound on p*.
inline double chord_upper(double a, double fa, double b, double fb) {
  if (!(fb > fa)) return b;
  const double z = a + (-fa) * (b - a) / (fb - fa);
  if (!std::isfinite(z) || !(z > a && z <= b)) return b;
  return z;
}

enum class StoppingRule { LambdaMaxRatio, ExtremeSpeedGaps };

inline bool accurate(const Bounds& b, double eps, StoppingRule rule) {
  if (!(b.lmin > 0.0)) return false;
  if (rule == StoppingRule::LambdaMaxRatio) return b.lmax / b.lmin - 1.0 <= eps;
  return (b.v12 - b.v11) / b.lmin <= eps && (b.v32 - b.v31) / b.lmin <= eps;
}

}  // namespace detail

/// Exact extreme speeds when exactly one side is vacuum. The solution is a
/// rarefaction on the non-vacuum side plus a contact bounding the vacuum;
/// both speeds are closed-form, so the result is exact (v11 = v12, v31 = v32).
enum class VacuumSide { Left, Right };

inline SpeedEstimate vacuum_side_speeds(const PrimitiveState& nonvacuum, VacuumSide vacuum_on,
                                        const GasParams& gas) {
  validate_gas(gas);
  validate_state(nonvacuum, gas);
  if (nonvacuum.is_vacuum())
    throw std::invalid_argument("vacuum_side_speeds requires a non-vacuum state");
  const WaveCurveCoeffs c = wave_coeffs(nonvacuum, gas);
  const double front = 2.0 * c.a * c.covol / (gas.gamma - 1.0);
  detail::Bounds b;
  if (vacuum_on == VacuumSide::Right) {
    b.v11 = b.v12 = nonvacuum.u - c.a;        // lambda_1^-
    b.v31 = b.v32 = nonvacuum.u + front;      // lambda_2, vacuum front
  } else {
    b.v11 = b.v12 = nonvacuum.u - front;      // lambda_2, vacuum front
    b.v31 = b.v32 = nonvacuum.u + c.a;        // lambda_3^+
  }
  b.lmax = std::max(pos_part(b.v32), neg_part(b.v11));
  b.lmin = pos_part(std::max(pos_part(b.v31), neg_part(b.v12)));
  return detail::make_estimate(b, 0.0, 0.0, 0, Termination::VacuumData, false);
}

/// Speed bounds implied by a certified bracket p1 <= p* <= p2.
inline SpeedEstimate lambda_bounds(const PressureBracket& bracket, const PrimitiveState& left,
                                   const PrimitiveState& right, const GasParams& gas) {
  const detail::Bounds b = detail::bounds_for(bracket.p1, bracket.p2, left, right, gas);
  return detail::make_estimate(b, bracket.p1, bracket.p2, bracket.k, Termination::Converged,
                               false);
}

/// Lower interpolation root p_d(p1, p2); satisfies p1 <= p_d <= p*.
/// Requires phi(p1) <= 0 <= phi(p2).
inline double quad_root_lower(const PressureBracket& bracket, const PrimitiveState& left,
                              const PrimitiveState& right, const GasParams& gas) {
  if (bracket.p1 == bracket.p2) return bracket.p1;
  const double f1 = phi(bracket.p1, left, right, gas);
  const double f2 = phi(bracket.p2, left, right, gas);
  const double fp1 = phi_prime(bracket.p1, left, right, gas);
  return detail::quad_lower(bracket.p1, bracket.p2, f1, fp1, f2);
}

/// Upper interpolation root p_u(p1, p2); satisfies p* <= p_u <= p2.
inline double quad_root_upper(const PressureBracket& bracket, const PrimitiveState& left,
                              const PrimitiveState& right, const GasParams& gas) {
  if (bracket.p1 == bracket.p2) return bracket.p2;
  const double f1 = phi(bracket.p1, left, right, gas);
  const double f2 = phi(bracket.p2, left, right, gas);
  const double fp2 = phi_prime(bracket.p2, left, right, gas);
  return detail::quad_upper(bracket.p1, bracket.p2, f1, f2, fp2);
}

/// Result of the initialization step: either a finished estimate (fast paths
/// and accurate-at-k=0 data) or a certified starting bracket.
struct InitResult {
  bool short_circuit = false;
  SpeedEstimate estimate;
  PressureBracket bracket;
};

namespace detail {

inline InitResult initialize_impl(const PrimitiveState& left, const PrimitiveState& right,
                                  const GasParams& gas, const EstimatorConfig& cfg,
                                  StoppingRule rule) {
  InitResult res;
  const double p_min = std::min(left.p, right.p);
  const double p_max = std::max(left.p, right.p);
  const double phi_min = phi(p_min, left, right, gas);

  // Two extreme rarefactions (possibly around a vacuum): the positive parts
  // in the speed formulas vanish for any p* <= p_min, so the bracket
  // [0, p_min] already yields the exact extreme speeds.
  if (phi_min >= 0.0) {
    const Bounds b = bounds_for(0.0, p_min, left, right, gas);
    const Termination term = vacuum_forms(left, right, gas)
                                 ? Termination::VacuumFormation
                                 : Termination::TwoRarefactionFastPath;
    res.short_circuit = true;
    res.estimate = make_estimate(b, 0.0, p_min, 0, term, false);
    return res;
  }

  const double phi_max = phi(p_max, left, right, gas);
  if (phi_max == 0.0) {
    const Bounds b = bounds_for(p_max, p_max, left, right, gas);
    res.short_circuit = true;
    res.estimate = make_estimate(b, p_max, p_max, 0, Termination::ExactRootHit, false);
    return res;
  }

  bool expanded = false;
  double p1, p2;
  double tilde = std::numeric_limits<double>::infinity();
  if (gas.guaranteed_gamma()) {
    // phi(p_min) < 0 rules out vacuum up to rounding; the explicit check
    // covers the one-ulp disagreement between the two evaluations.
    if (!vacuum_forms(left, right, gas)) tilde = p_star_two_rarefaction(left, right, gas);
  } else if (cfg.require_guaranteed_gamma) {
    throw std::invalid_argument("gamma > 5/3: two-rarefaction bound not certified");
  }
  // The closed form for p~* loses accuracy as gamma -> 1 (its exponent
  // 2 gamma/(gamma-1) blows up) and can even land below p*, so the
  // certificate is re-checked on the evaluated sign of phi. A p~* that fails
  // the check is still a certified *lower* bound, and the chord to a known
  // positive point repairs the upper bound without losing tightness.
  const double f_tilde =
      std::isfinite(tilde) ? phi(tilde, left, right, gas) : 0.0;
  if (phi_max < 0.0) {
    p1 = p_max;
    double f1 = phi_max;
    if (std::isfinite(tilde) && tilde > p_max && f_tilde >= 0.0) {
      p2 = tilde;
    } else {
      if (std::isfinite(tilde) && f_tilde < 0.0 && tilde > p1) {
        p1 = tilde;
        f1 = f_tilde;
      }
      const PositivePoint up = expand_upper(left, right, gas);
      expanded = true;
      p2 = chord_upper(p1, f1, up.p, up.f);
    }
  } else {
    // phi(p_max) > 0 certifies p_max; p~* is used only when verifiably above p*
    p1 = p_min;
    if (std::isfinite(tilde) && tilde < p_max && f_tilde >= 0.0) {
      p2 = tilde;
    } else if (std::isfinite(tilde) && f_tilde < 0.0 && tilde > p_min && tilde < p_max) {
      p1 = tilde;
      p2 = chord_upper(tilde, f_tilde, p_max, phi_max);
    } else {
      p2 = p_max;
    }
  }

  // One Newton step from above sharpens p1; concavity of phi keeps it <= p*.
  // Applied before the k = 0 accuracy test, so the bracket reported by a
  // k = 0 exit already carries the improvement.
  if (!cfg.skip_newton_init) {
    const double f2 = phi(p2, left, right, gas);
    const double fp2 = phi_prime(p2, left, right, gas);
    const double newton = p2 - f2 / fp2;
    if (std::isfinite(newton)) p1 = std::clamp(std::max(p1, newton), p1, p2);
  }

  const Bounds b = bounds_for(p1, p2, left, right, gas);
  if (accurate(b, cfg.eps, rule)) {
    res.short_circuit = true;
    res.estimate = make_estimate(b, p1, p2, 0, Termination::InitAccurate, expanded);
    return res;
  }
  res.short_circuit = false;
  res.estimate = make_estimate(b, p1, p2, 0, Termination::InitAccurate, expanded);
  res.bracket = {p1, p2, 0};
  return res;
}

inline SpeedEstimate run_bracketing(const PrimitiveState& left, const PrimitiveState& right,
                                    const GasParams& gas, const EstimatorConfig& cfg,
                                    StoppingRule rule, IterationTrace* trace) {
  validate_gas(gas);
  cfg.validate();
  validate_state(left, gas);
  validate_state(right, gas);

  if (left.is_vacuum() && right.is_vacuum()) {
    // No waves: lambda_max = 0.
    SpeedEstimate e;
    e.termination = Termination::VacuumData;
    return e;
  }
  if (right.is_vacuum()) return vacuum_side_speeds(left, VacuumSide::Right, gas);
  if (left.is_vacuum()) return vacuum_side_speeds(right, VacuumSide::Left, gas);

  InitResult init = initialize_impl(left, right, gas, cfg, rule);
  if (trace) trace->brackets.push_back({init.estimate.bracket.p1, init.estimate.bracket.p2, 0});
  if (init.short_circuit) return init.estimate;

  double p1 = init.bracket.p1;
  double p2 = init.bracket.p2;
  const bool expanded = init.estimate.used_expansion_bracket;
  int k = 0;
  while (true) {
    double f1 = phi(p1, left, right, gas);
    double f2 = phi(p2, left, right, gas);
    // Roundoff guard: a flipped sign means p* equals that endpoint to within
    // rounding, and the interpolation discriminant is no longer trustworthy.
    if (f1 > 0.0 || f2 < 0.0) {
      const double p_star = (f1 > 0.0) ? p1 : p2;
      const Bounds b = bounds_for(p_star, p_star, left, right, gas);
      if (trace) trace->brackets.push_back({p_star, p_star, k});
      return make_estimate(b, p_star, p_star, k, Termination::RoundoffExit, expanded);
    }
    if (k >= cfg.iteration_cap) {
      const Bounds b = bounds_for(p1, p2, left, right, gas);
      return make_estimate(b, p1, p2, k, Termination::IterationCap, expanded);
    }
    const double fp1 = phi_prime(p1, left, right, gas);
    const double fp2 = phi_prime(p2, left, right, gas);
    const double next_p1 = quad_lower(p1, p2, f1, fp1, f2);
    double next_p2;
    if (cfg.update_scheme == UpdateScheme::Seidel) {
      const double nf1 = phi(next_p1, left, right, gas);
      next_p2 = (nf1 > 0.0) ? next_p1 : quad_upper(next_p1, p2, nf1, f2, fp2);
    } else {
      next_p2 = quad_upper(p1, p2, f1, f2, fp2);
    }
    p1 = next_p1;
    p2 = std::max(next_p2, p1);
    ++k;
    if (trace) trace->brackets.push_back({p1, p2, k});
    const Bounds b = bounds_for(p1, p2, left, right, gas);
    if (accurate(b, cfg.eps, rule))
      return make_estimate(b, p1, p2, k, Termination::Converged, expanded);
  }
}

}  // namespace detail

/// Algorithm-1 initialization: fast paths, certified bracket, Newton
/// improvement of p1 and the k = 0 accuracy test.
inline InitResult initialize(const PrimitiveState& left, const PrimitiveState& right,
                             const GasParams& gas, const EstimatorConfig& cfg) {
  validate_gas(gas);
  cfg.validate();
  validate_state(left, gas);
  validate_state(right, gas);
  if (left.is_vacuum() || right.is_vacuum())
    throw std::invalid_argument("initialize requires non-vacuum states");
  return detail::initialize_impl(left, right, gas, cfg, detail::StoppingRule::LambdaMaxRatio);
}

/// Guaranteed upper bound on lambda_max, relative error <= eps on normal
/// convergence. Vacuum on either side is routed to the closed-form branch.
inline SpeedEstimate estimate_lambda_max(const PrimitiveState& left, const PrimitiveState& right,
                                         const GasParams& gas,
                                         const EstimatorConfig& cfg = {},
                                         IterationTrace* trace = nullptr) {
  return detail::run_bracketing(left, right, gas, cfg, detail::StoppingRule::LambdaMaxRatio,
                                trace);
}

/// Guaranteed upper bound from the initialization bracket alone, without the
/// Newton step or any iteration: max((v11^0)_-, (v32^0)_+) >= lambda_max.
inline double noniterative_upper_bound(const PrimitiveState& left, const PrimitiveState& right,
                                       const GasParams& gas) {
  validate_gas(gas);
  validate_state(left, gas);
  validate_state(right, gas);
  if (left.is_vacuum() || right.is_vacuum())
    throw std::invalid_argument("noniterative_upper_bound requires non-vacuum states");
  EstimatorConfig cfg;
  cfg.skip_newton_init = true;
  const InitResult init =
      detail::initialize_impl(left, right, gas, cfg, detail::StoppingRule::LambdaMaxRatio);
  return init.estimate.lambda_max_upper;
}

/// Certified lower bound on lambda_1^- and upper bound on lambda_3^+, each
/// within eps*lambda_max of the exact speed on normal convergence. The cone
/// v11*t <= x <= v32*t contains the Riemann fan at every iteration.
struct ExtremeSpeeds {
  double lambda1_lower = 0.0;  // v11^k <= lambda_1^-
  double lambda3_upper = 0.0;  // v32^k >= lambda_3^+
  SpeedEstimate estimate;
};

inline ExtremeSpeeds estimate_extreme_speeds(const PrimitiveState& left,
                                             const PrimitiveState& right, const GasParams& gas,
                                             const EstimatorConfig& cfg = {},
                                             IterationTrace* trace = nullptr) {
  ExtremeSpeeds out;
  out.estimate = detail::run_bracketing(left, right, gas, cfg,
                                        detail::StoppingRule::ExtremeSpeedGaps, trace);
  out.lambda1_lower = out.estimate.v11;
  out.lambda3_upper = out.estimate.v32;
  return out;
}

}  // namespace wavebound

#endif  // WAVEBOUND_ESTIMATOR_HPP
