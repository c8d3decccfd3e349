#ifndef WAVEBOUND_EOS_HPP
#define WAVEBOUND_EOS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

// Closed-form thermodynamics and wave-curve functions for a co-volume
// (Noble-Abel) gas, p(1 - b*rho) = (gamma - 1)*e*rho. b = 0 is the ideal gas.
// Everything here is a pure function of its arguments.

namespace wavebound {

struct GasParams {
  double gamma = 1.4;  // heat-capacity ratio, > 1
  double b = 0.0;      // co-volume (volume per unit mass), >= 0

  /// True when gamma lies in (1, 5/3], the range where the two-rarefaction
  /// pressure is a certified upper bound on p*.
  bool guaranteed_gamma() const { return gamma <= 5.0 / 3.0; }
};

/// One side of a Riemann problem in primitive variables.
struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;

  bool is_vacuum() const { return rho == 0.0 && p == 0.0; }
};

/// Sound speed, A_Z, B_Z and 1 - b*rho for one non-vacuum state.
struct WaveCurveCoeffs {
  double a;      // sound speed
  double cap_a;  // A_Z = 2(1-b rho) / ((gamma+1) rho)
  double cap_b;  // B_Z = (gamma-1)/(gamma+1) * p
  double covol;  // 1 - b*rho
};

inline void validate_gas(const GasParams& gas) {
  if (!(std::isfinite(gas.gamma) && gas.gamma > 1.0))
    throw std::invalid_argument("gamma must be finite and > 1");
  if (!(std::isfinite(gas.b) && gas.b >= 0.0))
    throw std::invalid_argument("co-volume b must be finite and >= 0");
}

/// Rejects NaN/Inf fields, negative rho or p, rho = 0 with p > 0 (a state is
/// either vacuum or fully non-vacuum) and inadmissible 1 - b*rho <= 0.
inline void validate_state(const PrimitiveState& s, const GasParams& gas) {
  if (!(std::isfinite(s.rho) && std::isfinite(s.u) && std::isfinite(s.p)))
    throw std::invalid_argument("state fields must be finite");
  if (s.rho < 0.0) throw std::invalid_argument("rho must be >= 0");
  if (s.p < 0.0) throw std::invalid_argument("p must be >= 0");
  if (s.rho == 0.0 && s.p > 0.0)
    throw std::invalid_argument("rho = 0 requires p = 0 (vacuum state)");
  if (s.rho > 0.0 && 1.0 - gas.b * s.rho <= 0.0)
    throw std::invalid_argument("inadmissible state: 1 - b*rho <= 0");
}

inline double sound_speed(const PrimitiveState& s, const GasParams& gas) {
  return std::sqrt(gas.gamma * s.p / (s.rho * (1.0 - gas.b * s.rho)));
}

inline WaveCurveCoeffs wave_coeffs(const PrimitiveState& s, const GasParams& gas) {
  if (s.rho <= 0.0)
    throw std::invalid_argument("wave_coeffs requires rho > 0 (vacuum data has its own branch)");
  const double covol = 1.0 - gas.b * s.rho;
  if (covol <= 0.0) throw std::invalid_argument("inadmissible state: 1 - b*rho <= 0");
  WaveCurveCoeffs c;
  c.covol = covol;
  c.a = std::sqrt(gas.gamma * s.p / (s.rho * covol));
  c.cap_a = 2.0 * covol / ((gas.gamma + 1.0) * s.rho);
  c.cap_b = (gas.gamma - 1.0) / (gas.gamma + 1.0) * s.p;
  return c;
}

namespace detail {

// (2 a_Z covol_Z/(gamma-1)) ((p/p_Z)^{(gamma-1)/2gamma} - 1), via expm1 so
// the subtraction stays accurate as gamma -> 1.
inline double rarefaction_branch(double p, const WaveCurveCoeffs& c, double p_z,
                                 const GasParams& gas) {
  if (p == p_z) return 0.0;
  const double e = (gas.gamma - 1.0) / (2.0 * gas.gamma);
  return 2.0 * c.a * c.covol / (gas.gamma - 1.0) * std::expm1(e * std::log(p / p_z));
}

}  // namespace detail

/*
 * f(p, Z): velocity change across the wave adjacent to state Z when the star
 * pressure is p. Shock branch for p >= p_Z, rarefaction branch for p < p_Z.
 * Strictly increasing and concave in p, f(p_Z, Z) = 0.
 *
 * A state with p_Z = 0 but rho_Z > 0 is legal (e = 0); every p >= 0 then
 * takes the shock branch, so the rarefaction branch never sees p_Z = 0.
 */
inline double f_wave(double p, const PrimitiveState& side, const GasParams& gas) {
  const WaveCurveCoeffs c = wave_coeffs(side, gas);
  if (p == side.p) return 0.0;
  if (p > side.p) return (p - side.p) * std::sqrt(c.cap_a / (p + c.cap_b));
  return detail::rarefaction_branch(p, c, side.p, gas);
}

/// df/dp of f_wave. Requires p > 0 on the rarefaction branch.
inline double f_wave_prime(double p, const PrimitiveState& side, const GasParams& gas) {
  const WaveCurveCoeffs c = wave_coeffs(side, gas);
  if (p >= side.p) {
    const double s = std::sqrt(c.cap_a / (p + c.cap_b));
    return s * (1.0 - 0.5 * (p - side.p) / (p + c.cap_b));
  }
  return c.a * c.covol / (gas.gamma * side.p) *
         std::pow(p / side.p, -(gas.gamma + 1.0) / (2.0 * gas.gamma));
}

/// phi(p) = f(p,L) + f(p,R) + u_R - u_L. Its unique root (when phi(0) < 0) is
/// the star pressure p*. Each side is evaluated independently, then summed;
/// the velocity jump is taken first so that near the root, where the three
/// small terms cancel, nothing is absorbed into a large |u| beforehand.
inline double phi(double p, const PrimitiveState& left, const PrimitiveState& right,
                  const GasParams& gas) {
  return f_wave(p, left, gas) + f_wave(p, right, gas) + (right.u - left.u);
}

inline double phi_prime(double p, const PrimitiveState& left, const PrimitiveState& right,
                        const GasParams& gas) {
  return f_wave_prime(p, left, gas) + f_wave_prime(p, right, gas);
}

/// phi with the rarefaction branch used on both sides regardless of p.
/// Equals phi for p <= min(p_L, p_R); below phi elsewhere when gamma <= 5/3.
/// Requires p_L, p_R > 0.
inline double phi_two_rarefaction(double p, const PrimitiveState& left,
                                  const PrimitiveState& right, const GasParams& gas) {
  const WaveCurveCoeffs cl = wave_coeffs(left, gas);
  const WaveCurveCoeffs cr = wave_coeffs(right, gas);
  return detail::rarefaction_branch(p, cl, left.p, gas) +
         detail::rarefaction_branch(p, cr, right.p, gas) + (right.u - left.u);
}

/// True when the data would open a vacuum region, i.e. phi(0) >= 0. The star
/// pressure is then 0 by convention.
inline bool vacuum_forms(const PrimitiveState& left, const PrimitiveState& right,
                         const GasParams& gas) {
  const WaveCurveCoeffs cl = wave_coeffs(left, gas);
  const WaveCurveCoeffs cr = wave_coeffs(right, gas);
  // phi(0) = u_R - u_L - 2 a_L covol_L/(gamma-1) - 2 a_R covol_R/(gamma-1)
  return right.u - left.u >=
         2.0 / (gas.gamma - 1.0) * (cl.a * cl.covol + cr.a * cr.covol);
}

/*
 * Closed-form root of phi_two_rarefaction (the classical two-rarefaction
 * approximation of p*). For gamma in (1, 5/3] it is a certified upper bound:
 * p* < p~*. Throws when the non-vacuum condition fails (caller then uses the
 * p* = 0 convention).
 *
 * A side with p_Z = 0 contributes nothing to either sum: its a_Z*covol term
 * is 0 and the a_Z^0*p_Z^{-(gamma-1)/2gamma} term tends to 0 as p_Z -> 0.
 * With both sides at p = 0 the result is +inf; callers fall back to a
 * geometric expansion bracket.
 */
inline double p_star_two_rarefaction(const PrimitiveState& left, const PrimitiveState& right,
                                     const GasParams& gas) {
  if (vacuum_forms(left, right, gas))
    throw std::domain_error("vacuum formation: phi(0) >= 0, p* = 0 by convention");
  const WaveCurveCoeffs cl = wave_coeffs(left, gas);
  const WaveCurveCoeffs cr = wave_coeffs(right, gas);
  const double e = (gas.gamma - 1.0) / (2.0 * gas.gamma);
  // a_Z^0 sqrt(1-b rho_Z) = a_Z (1-b rho_Z)
  const double wl = cl.a * cl.covol;
  const double wr = cr.a * cr.covol;
  const double num = wl + wr - 0.5 * (gas.gamma - 1.0) * (right.u - left.u);
  const double den = (left.p > 0.0 ? wl * std::pow(left.p, -e) : 0.0) +
                     (right.p > 0.0 ? wr * std::pow(right.p, -e) : 0.0);
  return std::pow(num / den, 1.0 / e);
}

}  // namespace wavebound

#endif  // WAVEBOUND_EOS_HPP
