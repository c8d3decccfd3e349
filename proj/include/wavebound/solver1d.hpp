#ifndef WAVEBOUND_SOLVER1D_HPP
#define WAVEBOUND_SOLVER1D_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavebound/estimator.hpp"

// Desk-scale 1D finite-volume shock-tube driver: first-order local
// Lax-Friedrichs fluxes whose dissipation coefficient is the certified
// lambda_max bound, SSP-RK3 in time, transmissive boundaries. Exists to
// exercise the estimator with a production call pattern (once per interface
// per stage) and to measure the iteration overhead of doing so.

namespace wavebound {

struct ConservedState {
  double rho = 0.0;
  double m = 0.0;  // momentum density
  double E = 0.0;  // total energy density
};

struct Grid1D {
  int cells = 0;
  double dx = 0.0;
  double x_lo = 0.0, x_hi = 1.0;
  std::vector<ConservedState> field;

  double x_center(int i) const { return x_lo + (i + 0.5) * dx; }
};

/// n_tot counts estimator calls, n_iter the bracket updates they performed
/// (zero whenever the initialization was already accurate).
struct OverheadCounters {
  long long n_tot = 0;
  long long n_iter = 0;

  double overhead() const { return n_tot > 0 ? double(n_iter) / double(n_tot) : 0.0; }
  OverheadCounters& operator+=(const OverheadCounters& o) {
    n_tot += o.n_tot;
    n_iter += o.n_iter;
    return *this;
  }
};

inline double pressure_of(const ConservedState& c, const GasParams& gas) {
  return (gas.gamma - 1.0) * (c.E - 0.5 * c.m * c.m / c.rho) / (1.0 - gas.b * c.rho);
}

inline PrimitiveState primitive_of(const ConservedState& c, const GasParams& gas) {
  return {c.rho, c.m / c.rho, pressure_of(c, gas)};
}

inline ConservedState conserved_of(const PrimitiveState& s, const GasParams& gas) {
  ConservedState c;
  c.rho = s.rho;
  c.m = s.rho * s.u;
  c.E = s.p * (1.0 - gas.b * s.rho) / (gas.gamma - 1.0) + 0.5 * s.rho * s.u * s.u;
  return c;
}

inline std::array<double, 3> physical_flux(const ConservedState& c, const GasParams& gas) {
  const double u = c.m / c.rho;
  const double p = pressure_of(c, gas);
  return {c.m, c.m * u + p, u * (c.E + p)};
}

/// rho > 0, e >= 0 and 1 - b*rho > 0; anything else means the dissipation
/// coefficient under-estimated lambda_max or the CFL was violated.
inline void check_cell_invariants(const ConservedState& c, const GasParams& gas,
                                  const std::string& where) {
  if (!(c.rho > 0.0)) throw std::runtime_error("solver1d: rho <= 0 at " + where);
  if (!(1.0 - gas.b * c.rho > 0.0))
    throw std::runtime_error("solver1d: 1 - b*rho <= 0 at " + where);
  if (!(c.E - 0.5 * c.m * c.m / c.rho >= 0.0))
    throw std::runtime_error("solver1d: internal energy < 0 at " + where);
}

struct LlfFlux {
  std::array<double, 3> flux;
  OverheadCounters delta;
  double lambda;  // the bound actually used as the dissipation coefficient
};

/// Local Lax-Friedrichs interface flux with the certified lambda_max bound as
/// viscosity: F = (f(L)+f(R))/2 - lambda/2 (R - L).
inline LlfFlux llf_flux(const ConservedState& left, const ConservedState& right,
                        const GasParams& gas, const EstimatorConfig& cfg = {}) {
  const SpeedEstimate est =
      estimate_lambda_max(primitive_of(left, gas), primitive_of(right, gas), gas, cfg);
  const std::array<double, 3> fl = physical_flux(left, gas);
  const std::array<double, 3> fr = physical_flux(right, gas);
  LlfFlux out;
  out.lambda = est.lambda_max_upper;
  out.delta = {1, est.iterations};
  out.flux = {0.5 * (fl[0] + fr[0]) - 0.5 * out.lambda * (right.rho - left.rho),
              0.5 * (fl[1] + fr[1]) - 0.5 * out.lambda * (right.m - left.m),
              0.5 * (fl[2] + fr[2]) - 0.5 * out.lambda * (right.E - left.E)};
  return out;
}

enum class ShocktubeCase { Sod, Leblanc, Custom };

struct ShocktubeSetup {
  GasParams gas;
  PrimitiveState left, right;
  double x_lo = 0.0, x_hi = 1.0;
  double diaphragm = 0.5;
};

inline ShocktubeSetup sod_setup() {
  return {{7.0 / 5.0, 0.0}, {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 0.0, 1.0, 0.5};
}

inline ShocktubeSetup leblanc_setup() {
  return {{5.0 / 3.0, 0.0}, {1.0, 0.0, 0.1}, {0.001, 0.0, 1e-10}, 0.0, 1.0, 0.5};
}

struct SubstepRecord {
  int substep = 0;  // 1-based RK-stage counter across the whole run
  double t = 0.0;
  double dt = 0.0;
  long long n_tot = 0;
  long long n_iter = 0;
  double overhead = 0.0;
};

struct ShocktubeResult {
  Grid1D grid;
  std::vector<SubstepRecord> series;
  OverheadCounters totals;
};

inline ShocktubeResult run_shocktube(ShocktubeCase which, int cells, double cfl, double t_end,
                                     double eps, const ShocktubeSetup* custom = nullptr) {
  if (cells < 10) throw std::invalid_argument("shocktube: cells must be >= 10");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("shocktube: need 0 < cfl <= 1");
  if (!(t_end > 0.0)) throw std::invalid_argument("shocktube: t_end must be > 0");

  ShocktubeSetup setup;
  switch (which) {
    case ShocktubeCase::Sod: setup = sod_setup(); break;
    case ShocktubeCase::Leblanc: setup = leblanc_setup(); break;
    case ShocktubeCase::Custom:
      if (!custom) throw std::invalid_argument("shocktube: custom case needs a setup");
      setup = *custom;
      break;
  }
  validate_gas(setup.gas);
  validate_state(setup.left, setup.gas);
  validate_state(setup.right, setup.gas);
  if (setup.left.is_vacuum() || setup.right.is_vacuum() || setup.left.p == 0.0 ||
      setup.right.p == 0.0)
    throw std::invalid_argument("shocktube: initial states must have rho > 0 and p > 0");
  if (!(setup.x_lo < setup.diaphragm && setup.diaphragm < setup.x_hi))
    throw std::invalid_argument("shocktube: diaphragm must lie inside the domain");
  EstimatorConfig cfg;
  cfg.eps = eps;
  cfg.validate();

  ShocktubeResult res;
  Grid1D& g = res.grid;
  g.cells = cells;
  g.x_lo = setup.x_lo;
  g.x_hi = setup.x_hi;
  g.dx = (setup.x_hi - setup.x_lo) / cells;
  g.field.resize(cells);
  for (int i = 0; i < cells; ++i)
    g.field[i] = conserved_of(g.x_center(i) < setup.diaphragm ? setup.left : setup.right,
                              setup.gas);

  const GasParams gas = setup.gas;
  std::vector<std::array<double, 3>> fluxes(cells + 1);
  int substep = 0;

  // One stage: transmissive ghosts, per-interface LLF, divided difference.
  const auto stage_rhs = [&](const std::vector<ConservedState>& u, double t, double dt,
                             std::vector<std::array<double, 3>>& rhs) -> double {
    double lambda_max = 0.0;
    OverheadCounters stage_counters;
    for (int i = 0; i <= cells; ++i) {
      const ConservedState& l = u[std::max(i - 1, 0)];
      const ConservedState& r = u[std::min(i, cells - 1)];
      const LlfFlux f = llf_flux(l, r, gas, cfg);
      fluxes[i] = f.flux;
      stage_counters += f.delta;
      lambda_max = std::max(lambda_max, f.lambda);
    }
    for (int i = 0; i < cells; ++i)
      for (int c = 0; c < 3; ++c) rhs[i][c] = -(fluxes[i + 1][c] - fluxes[i][c]) / g.dx;
    ++substep;
    res.series.push_back({substep, t, dt, stage_counters.n_tot, stage_counters.n_iter,
                          stage_counters.overhead()});
    res.totals += stage_counters;
    return lambda_max;
  };

  std::vector<std::array<double, 3>> rhs(cells);
  std::vector<ConservedState> u1(cells), u2(cells);
  double t = 0.0;
  const long long max_substeps = 30'000'000;
  while (t < t_end) {
    const double lambda = stage_rhs(g.field, t, 0.0, rhs);
    double dt = cfl * g.dx / lambda;
    const bool final_step = dt >= t_end - t;
    if (final_step) dt = t_end - t;
    res.series.back().dt = dt;

    for (int i = 0; i < cells; ++i) {
      u1[i] = {g.field[i].rho + dt * rhs[i][0], g.field[i].m + dt * rhs[i][1],
               g.field[i].E + dt * rhs[i][2]};
      check_cell_invariants(u1[i], gas, "stage 1, cell " + std::to_string(i));
    }
    stage_rhs(u1, t, dt, rhs);
    for (int i = 0; i < cells; ++i) {
      u2[i] = {0.75 * g.field[i].rho + 0.25 * (u1[i].rho + dt * rhs[i][0]),
               0.75 * g.field[i].m + 0.25 * (u1[i].m + dt * rhs[i][1]),
               0.75 * g.field[i].E + 0.25 * (u1[i].E + dt * rhs[i][2])};
      check_cell_invariants(u2[i], gas, "stage 2, cell " + std::to_string(i));
    }
    stage_rhs(u2, t, dt, rhs);
    const double third = 1.0 / 3.0;
    for (int i = 0; i < cells; ++i) {
      g.field[i] = {third * g.field[i].rho + 2.0 * third * (u2[i].rho + dt * rhs[i][0]),
                    third * g.field[i].m + 2.0 * third * (u2[i].m + dt * rhs[i][1]),
                    third * g.field[i].E + 2.0 * third * (u2[i].E + dt * rhs[i][2])};
      check_cell_invariants(g.field[i], gas, "stage 3, cell " + std::to_string(i));
    }
    t = final_step ? t_end : t + dt;
    if (substep > max_substeps) throw std::runtime_error("shocktube: substep limit exceeded");
  }
  return res;
}

}  // namespace wavebound

#endif  // WAVEBOUND_SOLVER1D_HPP
