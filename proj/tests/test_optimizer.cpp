#include <doctest.h>

#include <cmath>
#include <vector>

#include "evac/optimizer.hpp"
#include "evac/toy.hpp"

using namespace evac;

namespace {

LossFn quadratic_bowl(std::vector<double> target) {
  return [target = std::move(target)](std::span<const double> a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      s += (a[i] - target[i]) * (a[i] - target[i]);
    return s;
  };
}

}  // namespace

TEST_CASE("boundary excess measures distance from the tolerated box") {
  const double tol = 0.01;
  CHECK(boundary_excess(std::vector<double>{0.5, 0.5}, tol) == 0.0);
  CHECK(boundary_excess(std::vector<double>{0.99, 0.01}, tol) == 0.0);
  CHECK(boundary_excess(std::vector<double>{1.005, 0.5}, tol) ==
        doctest::Approx(0.015));
  CHECK(boundary_excess(std::vector<double>{0.5, -0.002}, tol) ==
        doctest::Approx(0.012));
  // Both sides violated: the larger excess wins.
  CHECK(boundary_excess(std::vector<double>{1.2, -0.1}, tol) ==
        doctest::Approx(0.21));
}

TEST_CASE("mollified loss replaces the objective outside the box") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.05);
  assign_weights(net);
  const PreferenceLayout layout = preference_layout(net);
  const double T = 100.0;
  const LossFn loss = make_mollified_loss(net, layout, T, {}, 0.01);

  // Feasible: the simulated loss, which is negative for a loaded network.
  CHECK(loss(std::vector<double>{0.5}) < 0.0);
  // Slightly out: penalty 100 * excess * T.
  CHECK(loss(std::vector<double>{1.005}) ==
        doctest::Approx(100.0 * 0.015 * T));
  // Far out: the excess contribution caps at one.
  CHECK(loss(std::vector<double>{-2.0}) == doctest::Approx(100.0 * T));
}

TEST_CASE("quadratic surrogate converges within the iteration budget") {
  SbcdConfig cfg;
  cfg.rng_seed = 42;
  const std::vector<double> target{0.3, 0.3, 0.3, 0.3, 0.3, 0.3};
  const SbcdResult res =
      sbcd(quadratic_bowl(target), std::vector<double>(6, 0.6), cfg);
  for (std::size_t i = 0; i < target.size(); ++i)
    CHECK(std::abs(res.alpha[i] - target[i]) < 1e-3);
  CHECK(res.loss < 1e-5);
}

TEST_CASE("accepted steps decrease the loss by the sufficient amount") {
  SbcdConfig cfg;
  cfg.rng_seed = 7;
  const LossFn bowl = quadratic_bowl({0.2, 0.8, 0.5, 0.4});
  const SbcdResult res = sbcd(bowl, std::vector<double>(4, 0.5), cfg);
  double last = bowl(std::vector<double>(4, 0.5));
  int accepted = 0;
  for (const SbcdTraceRow& row : res.trace) {
    if (!row.accepted) continue;
    ++accepted;
    CHECK(row.loss <= last - row.tau * cfg.control_c * row.p_norm + 1e-12);
    CHECK(row.loss < last);
    last = row.loss;
  }
  CHECK(accepted > 0);
}

TEST_CASE("a zero direction skips the iteration") {
  SbcdConfig cfg;
  cfg.n_iter = 5;
  const LossFn flat = [](std::span<const double>) { return 1.0; };
  const SbcdResult res = sbcd(flat, std::vector<double>{0.5, 0.5}, cfg);
  CHECK(res.alpha[0] == 0.5);
  CHECK(res.alpha[1] == 0.5);
  for (const auto& row : res.trace) CHECK_FALSE(row.accepted);
}

TEST_CASE("steps toward the boundary are rejected by the penalty") {
  // An analytic objective whose unconstrained minimum lies outside the box:
  // the penalty wall must keep accepted iterates inside.
  SbcdConfig cfg;
  cfg.rng_seed = 3;
  const double T = 1000.0;
  const LossFn pull = [&](std::span<const double> a) {
    const double excess = boundary_excess(a, cfg.eps_tol);
    if (excess > 0.0) return 100.0 * std::min(excess, 1.0) * T;
    double s = 0.0;
    for (double v : a) s -= v;  // rewards pushing everything to 1
    return s;
  };
  const SbcdResult res = sbcd(pull, std::vector<double>{0.5, 0.5}, cfg);
  for (double v : res.alpha) {
    CHECK(v <= 1.0 - cfg.eps_tol + 1e-9);
    CHECK(v >= cfg.eps_tol - 1e-9);
  }
  // And it actually made progress toward the wall.
  CHECK(res.alpha[0] + res.alpha[1] > 1.5);
}

TEST_CASE("identical seeds reproduce the trajectory exactly") {
  SbcdConfig cfg;
  cfg.rng_seed = 99;
  cfg.n_iter = 30;
  const auto a = sbcd(quadratic_bowl({0.4, 0.6, 0.3}),
                      std::vector<double>(3, 0.5), cfg);
  const auto b = sbcd(quadratic_bowl({0.4, 0.6, 0.3}),
                      std::vector<double>(3, 0.5), cfg);
  CHECK(a.alpha == b.alpha);
  CHECK(a.loss == b.loss);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].sampled == b.trace[i].sampled);
    CHECK(a.trace[i].tau == b.trace[i].tau);
  }
}

TEST_CASE("preference optimization on the congested bottleneck network") {
  // With every route jammed the junction resolution overrides preferences,
  // so the loss is locally flat and the optimum stays at the even split.
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.02);
  assign_weights(net);
  const PreferenceLayout layout = preference_layout(net);
  SbcdConfig cfg;
  cfg.rng_seed = 12;
  cfg.n_iter = 40;
  const LossFn loss = make_mollified_loss(net, layout, 1000.0, {}, cfg.eps_tol);
  const SbcdResult res = sbcd(loss, std::vector<double>{0.5}, cfg);
  CHECK(std::abs(res.alpha[0] - 0.5) < 0.05);
}
