#include <doctest.h>

#include <cmath>
#include <random>

#include "evac/flux.hpp"

using namespace evac;

namespace {

// Expanded quadratic-branch coefficients a*rho^2 + b*rho + c.
struct Quad {
  double a, b, c;
};
Quad expand(const NormalizedFlux& f) {
  const double a = f.quad_coeff_norm();
  const double s = f.critical_density_norm();
  return {a, -2.0 * a * s, a * s * s + f.max_flux_norm()};
}

}  // namespace

TEST_CASE("construction reproduces the published normalized coefficients") {
  // Two-lane parkway segment, 35 mi/hr, 875 veh/hr/lane at 200 veh/mi/lane.
  const NormalizedFlux hwy = build_flux(35, 875, 200, 1);
  CHECK(hwy.critical_density_norm() == doctest::Approx(0.125));
  const Quad qh = expand(hwy);
  CHECK(qh.a == doctest::Approx(-5.714).epsilon(1e-3));
  CHECK(qh.b == doctest::Approx(1.429).epsilon(1e-3));
  CHECK(qh.c == doctest::Approx(4.286).epsilon(1e-3));

  // Local street, 20 mi/hr, 300 veh/hr/lane.
  const NormalizedFlux local = build_flux(20, 300, 200, 1);
  CHECK(local.critical_density_norm() == doctest::Approx(0.075));
  const Quad ql = expand(local);
  CHECK(ql.a == doctest::Approx(-1.753).epsilon(1e-3));
  CHECK(ql.b == doctest::Approx(0.263).epsilon(2e-3));
  CHECK(ql.c == doctest::Approx(1.490).epsilon(1e-3));

  // Peak and jam endpoints.
  const NormalizedFlux f = build_flux(25, 500, 100, 1);
  CHECK(f.eval(f.critical_density()) == doctest::Approx(5.0));
  CHECK(f.eval(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.eval(0.0) == 0.0);
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(build_flux(0, 500, 200, 1), ValidationError);
  CHECK_THROWS_AS(build_flux(25, -1, 200, 1), ValidationError);
  CHECK_THROWS_AS(build_flux(25, 500, 0, 1), ValidationError);
  CHECK_THROWS_AS(build_flux(25, 500, 200, 0.5), ValidationError);
  // Capacity at or above v_f * rho_jam would push the critical density to 1.
  CHECK_THROWS_AS(build_flux(25, 25 * 200, 200, 1), ValidationError);
}

TEST_CASE("lane scaling evaluates as n copies of the one-lane diagram") {
  const NormalizedFlux one = build_flux(40, 1000, 200, 1);
  const NormalizedFlux two = one.with_lanes(2);
  // Peak flux doubles at the doubled critical density.
  CHECK(two.eval(2 * 0.125) == doctest::Approx(10.0));
  for (int i = 0; i <= 1000; ++i) {
    const double rho = 2.0 * i / 1000.0;
    CHECK(two.eval(rho) == doctest::Approx(2.0 * one.eval(rho / 2.0)));
  }
}

TEST_CASE("eval rejects densities outside the lane range") {
  const NormalizedFlux f = build_flux(25, 500, 100, 1);
  CHECK_THROWS_AS(f.eval(1.1), ValidationError);
  CHECK_THROWS_AS(f.eval(-0.1), ValidationError);
  CHECK(f.eval(1.0 + 1e-10) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("inverse maps the peak and the endpoints") {
  const NormalizedFlux f = build_flux(35, 875, 200, 1);
  CHECK(f.inverse(4.375, FluxBranch::Congested) == doctest::Approx(0.125));
  CHECK(f.inverse(4.375, FluxBranch::Free) == doctest::Approx(0.125));
  CHECK(f.inverse(0.0, FluxBranch::Free) == 0.0);
  CHECK(f.inverse(0.0, FluxBranch::Congested) == doctest::Approx(1.0));
  CHECK_THROWS_AS(f.inverse(4.5, FluxBranch::Free), ValidationError);
}

TEST_CASE("inverse round-trips against eval on both branches") {
  const NormalizedFlux f = build_flux(30, 650, 200, 2);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, f.capacity());
  for (int i = 0; i < 100; ++i) {
    const double gamma = u(rng);
    const double rf = f.inverse(gamma, FluxBranch::Free);
    const double rc = f.inverse(gamma, FluxBranch::Congested);
    CHECK(f.eval(rf) == doctest::Approx(gamma).epsilon(1e-10));
    CHECK(f.eval(rc) == doctest::Approx(gamma).epsilon(1e-10));
    CHECK(rf <= f.critical_density() + 1e-12);
    CHECK(rc >= f.critical_density() - 1e-12);
  }
}

TEST_CASE("tau swaps branches while preserving the flux") {
  const NormalizedFlux f = build_flux(25, 500, 100, 1.5);
  const double ns = f.critical_density();
  CHECK(f.tau(ns) == doctest::Approx(ns));
  CHECK(f.tau(0.0) == doctest::Approx(f.rho_max()));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, f.rho_max());
  for (int i = 0; i < 100; ++i) {
    const double rho = u(rng);
    const double t = f.tau(rho);
    CHECK(f.eval(t) == doctest::Approx(f.eval(rho)).epsilon(1e-10));
    if (std::abs(rho - ns) > 1e-9) CHECK((rho - ns) * (t - ns) < 0.0);
  }
}

TEST_CASE("demand and supply follow the sending/receiving rules") {
  const NormalizedFlux f = build_flux(25, 500, 100, 1);
  const double dt = 1e-4;  // hours, comparable to a CFL step
  CHECK(f.demand(0.0, dt) == 0.0);
  CHECK(f.supply(f.rho_max(), dt) == 0.0);
  // Congested side sends at capacity no matter how dense.
  for (double rho : {0.3, 0.6, 0.95})
    CHECK(f.demand(rho, dt) == doctest::Approx(f.capacity()));
  // Free side receives at capacity.
  for (double rho : {0.0, 0.1, 0.19})
    CHECK(f.supply(rho, dt) == doctest::Approx(f.capacity()));
  // With a tiny step the availability caps never bind.
  for (double rho : {0.05, 0.1, 0.15})
    CHECK(f.demand(rho, 1e-9) == doctest::Approx(f.eval(rho)));
  // The caps do bind once the step is long enough.
  CHECK(f.demand(0.1, 1.0) == doctest::Approx(0.1));
  CHECK(f.supply(0.9, 1.0) == doctest::Approx(std::min(f.eval(0.9), 0.1)));
}

TEST_CASE("concavity holds along the whole diagram") {
  const NormalizedFlux f = build_flux(20, 400, 200, 1);
  for (int i = 0; i < 100; ++i) {
    const double r1 = i / 100.0;
    const double r3 = r1 + 1.0 / 100.0;
    const double r2 = 0.5 * (r1 + r3);
    const double interp = 0.5 * (f.eval(r1) + f.eval(r3));
    CHECK(f.eval(r2) >= interp - 1e-12);
  }
}

TEST_CASE("max wave speed matches a numerical scan of the derivative") {
  for (auto [v, fc] : {std::pair{35.0, 875.0}, {20.0, 300.0}, {25.0, 550.0}}) {
    const NormalizedFlux f = build_flux(v, fc, 200, 1);
    double scan = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double a = i / static_cast<double>(n);
      const double b = (i + 1) / static_cast<double>(n);
      scan = std::max(scan, std::abs(f.eval(b) - f.eval(a)) * n);
    }
    CHECK(f.max_wave_speed() == doctest::Approx(scan).epsilon(1e-3));
    CHECK(f.max_wave_speed() >=
          std::max(v, 2.0 * f.max_flux_norm() /
                          (1.0 - f.critical_density_norm())) -
              1e-12);
  }
}
