#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wavebound/eos.hpp"

using namespace wavebound;
using Catch::Approx;

namespace {

double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }
double log_uniform(std::mt19937_64& rng, double lg_lo, double lg_hi) {
  return std::pow(10.0, lg_lo + (lg_hi - lg_lo) * u01(rng));
}

// Random admissible non-vacuum state with b*rho bounded away from 1.
PrimitiveState random_state(std::mt19937_64& rng) {
  return {log_uniform(rng, -4.0, 4.0), -50.0 + 100.0 * u01(rng), log_uniform(rng, -4.0, 4.0)};
}

GasParams random_gas(std::mt19937_64& rng, double rho_max) {
  GasParams g;
  g.gamma = 1.0 + (5.0 / 3.0 - 1.0) * (1.0 - u01(rng));
  g.b = 0.9 * u01(rng) / rho_max;
  return g;
}

}  // namespace

TEST_CASE("wave_coeffs closed forms", "[eos]") {
  const GasParams ideal{1.4, 0.0};
  CHECK(wave_coeffs({1.0, 0.0, 1.0}, ideal).a == Approx(1.1832159566199232).epsilon(1e-15));
  CHECK(wave_coeffs({1.0, 0.0, 0.01}, ideal).a == Approx(0.11832159566199232).epsilon(1e-15));
  // co-volume case, independently computed: sqrt(1.4 / 0.5)
  CHECK(wave_coeffs({1.0, 0.0, 1.0}, {1.4, 0.5}).a ==
        Approx(1.6733200530681511).epsilon(1e-15));

  const WaveCurveCoeffs c = wave_coeffs({2.0, 3.0, 5.0}, {1.4, 0.2});
  CHECK(c.covol == Approx(1.0 - 0.2 * 2.0));
  CHECK(c.cap_a == Approx(2.0 * c.covol / (2.4 * 2.0)));
  CHECK(c.cap_b == Approx(0.4 / 2.4 * 5.0));
  CHECK(c.a == Approx(std::sqrt(1.4 * 5.0 / (2.0 * c.covol))));

  CHECK_THROWS_AS(wave_coeffs({0.0, 0.0, 0.0}, ideal), std::invalid_argument);
  CHECK_THROWS_AS(wave_coeffs({3.0, 0.0, 1.0}, {1.4, 0.5}), std::invalid_argument);
}

TEST_CASE("state validation", "[eos]") {
  const GasParams gas{1.4, 0.1};
  CHECK_NOTHROW(validate_state({1.0, 0.0, 1.0}, gas));
  CHECK_NOTHROW(validate_state({0.0, 2.0, 0.0}, gas));  // vacuum with drift velocity
  CHECK_NOTHROW(validate_state({1.0, 0.0, 0.0}, gas));  // p = 0, rho > 0 is legal
  CHECK_THROWS_AS(validate_state({-1.0, 0.0, 1.0}, gas), std::invalid_argument);
  CHECK_THROWS_AS(validate_state({1.0, 0.0, -1.0}, gas), std::invalid_argument);
  CHECK_THROWS_AS(validate_state({0.0, 0.0, 1.0}, gas), std::invalid_argument);
  CHECK_THROWS_AS(validate_state({20.0, 0.0, 1.0}, gas), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(validate_state({nan, 0.0, 1.0}, gas), std::invalid_argument);
  CHECK_THROWS_AS(validate_gas({0.9, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_gas({1.4, -0.1}), std::invalid_argument);
}

TEST_CASE("f_wave branch values", "[eos]") {
  const GasParams gas{1.4, 0.0};
  const PrimitiveState unit{1.0, 0.0, 1.0};
  CHECK(f_wave(1.0, unit, gas) == 0.0);
  CHECK(f_wave(0.01, {1.0, 0.0, 0.01}, gas) == 0.0);
  // shock branch at p = 2 p_Z, independently computed at high precision
  CHECK(f_wave(2.0, unit, gas) == Approx(0.62017367294604228).epsilon(1e-15));
  // p_Z = 0 side always takes the shock branch and stays finite
  const PrimitiveState cold{1.0, 0.0, 0.0};
  CHECK(f_wave(0.0, cold, gas) == 0.0);
  CHECK(std::isfinite(f_wave(3.0, cold, gas)));
  CHECK(f_wave(3.0, cold, gas) == Approx(3.0 * std::sqrt((2.0 / 2.4) / 3.0)));
}

TEST_CASE("f_wave consistency with the slow-shock star state", "[eos]") {
  // At the star pressure the two wave curves meet: f(p*,L) + f(p*,R) = 0 for
  // data with equal velocities.
  const GasParams gas{1.4, 0.0};
  const double p_star = 46.09504424886797;
  const double v = f_wave(p_star, {1.0, 0.0, 0.01}, gas);
  CHECK(v + f_wave(p_star, {1.0, 0.0, 100.0}, gas) == Approx(0.0).margin(1e-12));
}

TEST_CASE("f_wave branch continuity", "[eos]") {
  const GasParams gas{1.4, 0.1};
  const PrimitiveState s{0.7, 0.0, 2.5};
  const double a = sound_speed(s, gas);
  const double eps = 1e-8;
  const double jump =
      std::abs(f_wave(s.p * (1 + eps), s, gas) - f_wave(s.p * (1 - eps), s, gas));
  CHECK(jump < 1e-6 * a);
}

TEST_CASE("f_wave_prime analytic forms", "[eos]") {
  const GasParams gas{1.4, 0.0};
  const PrimitiveState unit{1.0, 0.0, 1.0};
  // derivative at p = p_Z from the shock side: sqrt(A / (p_Z + B))
  CHECK(f_wave_prime(1.0, unit, gas) == Approx(0.84515425472851658).epsilon(1e-15));

  // central finite differences on both branches
  for (const PrimitiveState side : {PrimitiveState{1.0, 0.0, 100.0},    // rarefaction at 50
                                    PrimitiveState{1.0, 0.0, 0.01}}) {  // shock at 50
    const double p = 50.0;
    const double h = 1e-6 * p;
    const double fd = (f_wave(p + h, side, gas) - f_wave(p - h, side, gas)) / (2.0 * h);
    CHECK(f_wave_prime(p, side, gas) == Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("f_wave_prime matches finite differences on random points", "[eos]") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 1000; ++i) {
    PrimitiveState s = random_state(rng);
    GasParams gas = random_gas(rng, s.rho);
    double p = log_uniform(rng, -4.0, 4.0);
    if (std::abs(p - s.p) < 0.05 * s.p) continue;  // stay away from the branch point
    const double h = 1e-6 * p;
    if (p - h <= 0.0) continue;
    const double fd = (f_wave(p + h, s, gas) - f_wave(p - h, s, gas)) / (2.0 * h);
    const double an = f_wave_prime(p, s, gas);
    REQUIRE(an == Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("phi fixed values", "[eos]") {
  const GasParams gas{1.4, 0.0};
  const PrimitiveState l1{1.0, 0.0, 0.01}, r1{1.0, 0.0, 100.0};
  CHECK(phi(1.0, {1.0, 2.0, 1.0}, {1.0, 2.0, 1.0}, gas) == 0.0);
  CHECK(phi(46.09504424886797, l1, r1, gas) == Approx(0.0).margin(1e-12));

  const PrimitiveState l2{5.99924, 19.5975, 460.894}, r2{5.99242, -6.19633, 46.0950};
  const double scale = std::abs(f_wave(1691.646955399126, l2, gas)) +
                       std::abs(f_wave(1691.646955399126, r2, gas));
  CHECK(std::abs(phi(1691.646955399126, l2, r2, gas)) < 1e-9 * scale);
}

TEST_CASE("phi monotone increasing and concave", "[eos][property]") {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 10000; ++i) {
    PrimitiveState l = random_state(rng);
    PrimitiveState r = random_state(rng);
    GasParams gas = random_gas(rng, std::max(l.rho, r.rho));
    const double pa = log_uniform(rng, -4.0, 4.0);
    const double pb = pa * (1.01 + 3.0 * u01(rng));
    REQUIRE(phi(pa, l, r, gas) < phi(pb, l, r, gas));

    // second divided difference over well-separated nodes stays <= 0
    const double p1 = pa, p2 = 1.5 * pa, p3 = 2.5 * pa;
    const double f1 = phi(p1, l, r, gas), f2 = phi(p2, l, r, gas), f3 = phi(p3, l, r, gas);
    const double dd = ((f3 - f2) / (p3 - p2) - (f2 - f1) / (p2 - p1)) / (p3 - p1);
    const double noise =
        1e-12 * (std::abs(f1) + std::abs(f2) + std::abs(f3)) / ((p3 - p2) * (p2 - p1));
    REQUIRE(dd <= noise);
  }
}

TEST_CASE("phi_two_rarefaction against phi", "[eos]") {
  const GasParams gas{1.4, 0.0};
  const PrimitiveState l{1.0, 0.0, 0.01}, r{1.0, 0.0, 100.0};
  // identical below p_min (same code path, bitwise equal)
  CHECK(phi_two_rarefaction(0.005, l, r, gas) == phi(0.005, l, r, gas));
  CHECK(phi_two_rarefaction(0.01, l, r, gas) == phi(0.01, l, r, gas));
  // strictly below at p_max
  CHECK(phi_two_rarefaction(100.0, l, r, gas) < phi(100.0, l, r, gas));
  // closed form at p = 0
  const WaveCurveCoeffs cl = wave_coeffs(l, gas), cr = wave_coeffs(r, gas);
  const double expected =
      r.u - l.u - 2.0 / (gas.gamma - 1.0) * (cl.a * cl.covol + cr.a * cr.covol);
  CHECK(phi_two_rarefaction(0.0, l, r, gas) == Approx(expected).epsilon(1e-14));
  CHECK(phi(0.0, l, r, gas) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("two-rarefaction curve ordering", "[eos][property]") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 10000; ++i) {
    PrimitiveState l = random_state(rng);
    PrimitiveState r = random_state(rng);
    GasParams gas = random_gas(rng, std::max(l.rho, r.rho));
    const double p_min = std::min(l.p, r.p);
    const double p_max = std::max(l.p, r.p);
    const double p_eq = p_min * u01(rng);
    REQUIRE(phi_two_rarefaction(p_eq, l, r, gas) == phi(p_eq, l, r, gas));
    const double p_far = p_max * (1.5 + 10.0 * u01(rng));
    REQUIRE(phi_two_rarefaction(p_far, l, r, gas) < phi(p_far, l, r, gas));
  }
}

TEST_CASE("shock curve above rarefaction curve", "[eos][property]") {
  std::mt19937_64 rng(74);
  for (int i = 0; i < 10000; ++i) {
    PrimitiveState s = random_state(rng);
    GasParams gas = random_gas(rng, s.rho);
    const WaveCurveCoeffs c = wave_coeffs(s, gas);
    const double x = 1.5 + 48.5 * u01(rng);
    const double f_s = f_wave(x * s.p, s, gas);  // p > p_Z: shock branch
    const double f_r = detail::rarefaction_branch(x * s.p, c, s.p, gas);
    REQUIRE(f_r < f_s);
  }
}

TEST_CASE("co-volume scaling of f_wave", "[eos][property]") {
  std::mt19937_64 rng(75);
  for (int i = 0; i < 10000; ++i) {
    PrimitiveState s = random_state(rng);
    GasParams gas = random_gas(rng, s.rho);
    GasParams ideal{gas.gamma, 0.0};
    const double covol = 1.0 - gas.b * s.rho;
    const double p = log_uniform(rng, -4.0, 4.0);
    const double with_b = f_wave(p, s, gas);
    const double scaled = f_wave(p, s, ideal) * std::sqrt(covol);
    REQUIRE(with_b == Approx(scaled).margin(1e-300).epsilon(1e-13));
  }
}

TEST_CASE("two-rarefaction pressure", "[eos]") {
  const GasParams gas{1.4, 0.0};
  // symmetric data collapses to p0
  CHECK(p_star_two_rarefaction({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, gas) ==
        Approx(3.0).epsilon(1e-14));
  // slow-shock case: this value seeds p2^0 of the published table
  CHECK(p_star_two_rarefaction({1.0, 0.0, 0.01}, {1.0, 0.0, 100.0}, gas) ==
        Approx(82.98306927558072).epsilon(1e-11));
  // fast-shock case 2: upper bound on p*, independently computed value
  const double tilde =
      p_star_two_rarefaction({5.99924, 19.5975, 460.894}, {5.99242, -6.19633, 46.0950}, gas);
  CHECK(tilde > 1691.646955399126);
  CHECK(tilde == Approx(2322.655457015997).epsilon(1e-12));
  // vacuum formation is signalled
  CHECK_THROWS_AS(p_star_two_rarefaction({1.0, -50.0, 1.0}, {1.0, 50.0, 1.0}, gas),
                  std::domain_error);
  CHECK(vacuum_forms({1.0, -50.0, 1.0}, {1.0, 50.0, 1.0}, gas));
  CHECK_FALSE(vacuum_forms({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, gas));
}
