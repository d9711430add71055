#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evac/calibration.hpp"
#include "evac/metrics.hpp"
#include "evac/toy.hpp"

using namespace evac;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("level of service by speed ratio") {
  const NormalizedFlux f = build_flux(35, 875, 200, 1);
  // The whole linear branch travels at free-flow speed.
  CHECK(los_classify(f, 0.0) == Los::A);
  CHECK(los_classify(f, 0.06) == Los::A);
  CHECK(los_classify(f, f.critical_density()) == Los::A);
  // The calibrated morning densities grade back into the class they were
  // solved from (0.178 on this diagram, 0.300 / 0.245 on the 20 mph one).
  const LosAlphaTable table;
  CHECK(los_classify(f, init_density('B', -1, f, table)) == Los::B);
  CHECK(los_classify(f, 1.0) == Los::E);

  const NormalizedFlux front = build_flux(20, 500, 200, 1);
  CHECK(los_classify(front, init_density('D', -1, front, table)) == Los::D);
  CHECK(los_classify(front, init_density('C', -1, front, table)) == Los::C);
  CHECK(los_classify(front, 0.9) == Los::E);
}

TEST_CASE("empty network produces zero metrics") {
  ToyParams p;
  p.rho_init = 0.1;
  Network net = build_toy_network(p, ToyExperiment::A);
  for (Road& r : net.roads) r.init_density = 0.0;
  net.road("entry").left = Attachment::open();  // no inflow either
  net.discretize(0.02);
  assign_weights(net);
  Engine engine(net);
  MetricsAccumulator metrics;
  engine.advance_to(0.05, [&](double dt) { metrics.accumulate(engine, dt); });
  CHECK(metrics.weighted_time_integrated() == 0.0);
  CHECK(metrics.cars_entered() == 0.0);
  CHECK(metrics.cars_exited() == 0.0);
}

TEST_CASE("accumulators are nondecreasing and additive over time splits") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.02);
  assign_weights(net);

  Engine engine(net);
  MetricsAccumulator whole;
  double prev_w = 0.0, prev_e = 0.0;
  engine.advance_to(0.1, [&](double dt) {
    whole.accumulate(engine, dt);
    CHECK(whole.weighted_time_integrated() >= prev_w);
    CHECK(whole.cars_exited() >= prev_e);
    prev_w = whole.weighted_time_integrated();
    prev_e = whole.cars_exited();
  });

  Network net2 = build_toy_network(p, ToyExperiment::D);
  net2.discretize(0.02);
  assign_weights(net2);
  Engine engine2(net2);
  MetricsAccumulator split;
  engine2.advance_to(0.04, [&](double dt) { split.accumulate(engine2, dt); });
  engine2.advance_to(0.1, [&](double dt) { split.accumulate(engine2, dt); });
  CHECK(split.weighted_time_integrated() ==
        doctest::Approx(whole.weighted_time_integrated()).epsilon(1e-10));
  CHECK(split.cars_exited() ==
        doctest::Approx(whole.cars_exited()).epsilon(1e-10));
}

TEST_CASE("table 2 reproduction with the appendix jam density") {
  // Weighted time-integrated cars published for the congested runs; the
  // appendix states the toy simulations use 200 veh/mi/lane.
  auto weighted = [](double n5) {
    ToyParams p;
    p.rho_jam = 200.0;
    p.exit_lanes = n5;
    Network net = build_toy_network(p, ToyExperiment::D);
    net.discretize(0.005);
    assign_weights(net);
    Engine engine(net);
    MetricsAccumulator m;
    engine.advance_to(1000.0 / 3600.0,
                      [&](double dt) { m.accumulate(engine, dt); });
    return m.weighted_time_integrated();
  };
  const double w1 = weighted(1.0);
  const double w2 = weighted(2.0);
  CHECK(w1 == doctest::Approx(851.56).epsilon(0.03));
  CHECK(w2 == doctest::Approx(762.25).epsilon(0.04));
  CHECK(w1 / w2 == doctest::Approx(851.56 / 762.25).epsilon(0.02));
}

TEST_CASE("exports are deterministic and carry the expected rows") {
  namespace fs = std::filesystem;
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.05);
  assign_weights(net);

  const fs::path dir = fs::temp_directory_path() / "evac_metrics_test";
  fs::create_directories(dir);

  auto run = [&](const std::string& tag) {
    Network n2 = net;
    Engine engine(n2);
    MetricsAccumulator m(/*record_series=*/true);
    int steps = 0;
    engine.advance_to(0.02, [&](double dt) {
      m.accumulate(engine, dt);
      ++steps;
    });
    m.export_series((dir / ("series_" + tag + ".csv")).string());
    export_heatmap_csv(n2, (dir / ("heat_" + tag + ".csv")).string());
    export_heatmap_svg(n2, (dir / ("heat_" + tag + ".svg")).string());
    return steps;
  };
  const int steps = run("one");
  run("two");

  const std::string series = slurp((dir / "series_one.csv").string());
  CHECK(series == slurp((dir / "series_two.csv").string()));
  CHECK(slurp((dir / "heat_one.csv").string()) ==
        slurp((dir / "heat_two.csv").string()));
  CHECK(slurp((dir / "heat_one.svg").string()) ==
        slurp((dir / "heat_two.svg").string()));

  // Header plus one row per accumulation step.
  const long rows = std::count(series.begin(), series.end(), '\n');
  CHECK(rows == steps + 1);

  // Heatmap CSV has one row per cell.
  long cells = 0;
  for (const Road& r : net.roads) cells += r.cells;
  const std::string heat = slurp((dir / "heat_one.csv").string());
  CHECK(std::count(heat.begin(), heat.end(), '\n') == cells + 1);
  fs::remove_all(dir);
}
