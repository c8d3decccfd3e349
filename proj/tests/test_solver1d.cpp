#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wavebound/exact_solver.hpp"
#include "wavebound/solver1d.hpp"

using namespace wavebound;
using Catch::Approx;

namespace {
const GasParams kSodGas{7.0 / 5.0, 0.0};
const GasParams kLeblancGas{5.0 / 3.0, 0.0};
}  // namespace

TEST_CASE("conserved/primitive round trip", "[solver1d]") {
  const GasParams gas{1.4, 0.2};
  const PrimitiveState s{1.7, -2.3, 4.1};
  const ConservedState c = conserved_of(s, gas);
  const PrimitiveState back = primitive_of(c, gas);
  CHECK(back.rho == Approx(s.rho).epsilon(1e-15));
  CHECK(back.u == Approx(s.u).epsilon(1e-15));
  CHECK(back.p == Approx(s.p).epsilon(1e-14));
  CHECK_NOTHROW(check_cell_invariants(c, gas, "round trip"));
}

TEST_CASE("llf flux between identical states is the physical flux", "[solver1d]") {
  const PrimitiveState s{1.0, 0.75, 2.0};
  const ConservedState c = conserved_of(s, kSodGas);
  const LlfFlux f = llf_flux(c, c, kSodGas);
  const std::array<double, 3> exact = physical_flux(c, kSodGas);
  CHECK(f.flux[0] == exact[0]);
  CHECK(f.flux[1] == exact[1]);
  CHECK(f.flux[2] == exact[2]);
  CHECK(f.lambda == Approx(std::abs(s.u) + sound_speed(s, kSodGas)).epsilon(1e-14));
  CHECK(f.delta.n_tot == 1);
  CHECK(f.delta.n_iter == 0);  // equal states exit at k = 0
}

TEST_CASE("llf dissipation uses the certified bound on the Sod interface", "[solver1d]") {
  const ConservedState l = conserved_of({1.0, 0.0, 1.0}, kSodGas);
  const ConservedState r = conserved_of({0.125, 0.0, 0.1}, kSodGas);
  EstimatorConfig cfg;
  cfg.eps = 1e-10;
  const LlfFlux f = llf_flux(l, r, kSodGas, cfg);
  const ExactSolution sol = solve_exact({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, kSodGas);
  CHECK(f.lambda >= sol.lambda_max - 1e-13);
  CHECK(f.lambda == Approx(sol.lambda_max).epsilon(1e-9));
}

TEST_CASE("llf flux stays finite on the Leblanc interface", "[solver1d]") {
  const ConservedState l = conserved_of({1.0, 0.0, 0.1}, kLeblancGas);
  const ConservedState r = conserved_of({0.001, 0.0, 1e-10}, kLeblancGas);
  const LlfFlux f = llf_flux(l, r, kLeblancGas);
  for (double v : f.flux) CHECK(std::isfinite(v));
  const ExactSolution sol = solve_exact({1.0, 0.0, 0.1}, {0.001, 0.0, 1e-10}, kLeblancGas);
  CHECK(f.lambda >= sol.lambda_max - 1e-13);
  CHECK(f.lambda == Approx(1.0154584622894592).epsilon(1e-9));
}

TEST_CASE("Sod run conserves mass and energy before waves reach the ends", "[solver1d]") {
  // short enough that even the diffused wave tails stay inside the domain
  const ShocktubeResult res = run_shocktube(ShocktubeCase::Sod, 100, 0.5, 0.05, 1e-4);
  // initial totals: left half (1, 0, 1/0.4), right half (0.125, 0, 0.1/0.4)
  const double dx = res.grid.dx;
  const double mass0 = 50 * dx * 1.0 + 50 * dx * 0.125;
  const double energy0 = 50 * dx * (1.0 / 0.4) + 50 * dx * (0.1 / 0.4);
  double mass = 0.0, energy = 0.0;
  for (const ConservedState& c : res.grid.field) {
    mass += dx * c.rho;
    energy += dx * c.E;
  }
  CHECK(mass == Approx(mass0).epsilon(1e-10));
  CHECK(energy == Approx(energy0).epsilon(1e-10));
}

TEST_CASE("Sod run completes with positivity and decaying overhead", "[solver1d]") {
  const ShocktubeResult res = run_shocktube(ShocktubeCase::Sod, 100, 0.5, 0.2, 1e-4);
  REQUIRE(res.series.size() >= 200);
  for (const ConservedState& c : res.grid.field)
    CHECK_NOTHROW(check_cell_invariants(c, kSodGas, "final"));
  double early = 0.0, late = 0.0;
  for (int s = 1; s <= 10; ++s) early += res.series[s - 1].overhead;
  for (int s = 100; s <= 200; ++s) late += res.series[s - 1].overhead;
  CHECK(late / 101.0 < early / 10.0);
}

TEST_CASE("Leblanc smoke run keeps positivity", "[solver1d]") {
  const ShocktubeResult res = run_shocktube(ShocktubeCase::Leblanc, 60, 0.25, 0.1, 1e-4);
  for (const ConservedState& c : res.grid.field)
    CHECK_NOTHROW(check_cell_invariants(c, kLeblancGas, "final"));
  CHECK(res.totals.n_tot > 0);
  CHECK(res.totals.n_iter >= 0);
}

TEST_CASE("estimator tolerance has bounded effect on the Sod profile", "[solver1d]") {
  const ShocktubeResult loose = run_shocktube(ShocktubeCase::Sod, 64, 0.5, 0.2, 1e-2);
  const ShocktubeResult tight = run_shocktube(ShocktubeCase::Sod, 64, 0.5, 0.2, 1e-15);
  REQUIRE(loose.grid.cells == tight.grid.cells);
  double max_diff = 0.0;
  for (int i = 0; i < loose.grid.cells; ++i)
    max_diff = std::max(max_diff, std::abs(loose.grid.field[i].rho - tight.grid.field[i].rho));
  CHECK(max_diff < 1e-2);
}

TEST_CASE("custom case and argument validation", "[solver1d]") {
  ShocktubeSetup custom;
  custom.gas = {1.4, 0.05};
  custom.left = {1.0, 0.0, 2.0};
  custom.right = {0.5, 0.0, 0.5};
  const ShocktubeResult res = run_shocktube(ShocktubeCase::Custom, 32, 0.4, 0.05, 1e-6, &custom);
  CHECK(res.grid.cells == 32);
  CHECK_THROWS_AS(run_shocktube(ShocktubeCase::Sod, 5, 0.5, 0.1, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(run_shocktube(ShocktubeCase::Sod, 100, 1.5, 0.1, 1e-4),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_shocktube(ShocktubeCase::Sod, 100, 0.5, -1.0, 1e-4),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_shocktube(ShocktubeCase::Custom, 32, 0.4, 0.05, 1e-6, nullptr),
                  std::invalid_argument);
}
