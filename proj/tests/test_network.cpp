#include <doctest.h>

#include <cmath>

#include "evac/network.hpp"
#include "evac/toy.hpp"

using namespace evac;

namespace {

Network two_road_chain() {
  Network net;
  Road a;
  a.id = "a";
  a.length = 1.0;
  a.flux = build_flux(25, 500, 100, 1);
  a.is_source = true;
  net.add_road(a);
  Road b = a;
  b.id = "b";
  b.is_source = false;
  b.is_exit = true;
  net.add_road(b);
  net.add_junction("j");
  net.connect("j", {"a"}, {"b"});
  return net;
}

}  // namespace

TEST_CASE("toy network validates") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.05);
  const ValidationReport rep = validate(net);
  CHECK(rep.ok());
  CHECK(rep.warnings.empty());
}

TEST_CASE("validation flags a non-stochastic column") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  net.discretize(0.05);
  net.junctions[net.junction_index("split")].dist = {{0.5}, {0.4}};
  const ValidationReport rep = validate(net);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.errors[0].find("not stochastic") != std::string::npos);
}

TEST_CASE("validation flags a dangling junction reference") {
  Network net = two_road_chain();
  net.roads[0].right = Attachment::at_junction(7);
  const ValidationReport rep = validate(net);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.errors[0].find("missing junction") != std::string::npos);
}

TEST_CASE("validation requires an exit road") {
  Network net = two_road_chain();
  net.roads[1].is_exit = false;
  const ValidationReport rep = validate(net);
  REQUIRE_FALSE(rep.ok());
}

TEST_CASE("span condition warning on a degenerate matrix") {
  Network net;
  for (const char* id : {"i1", "i2", "o1", "o2"}) {
    Road r;
    r.id = id;
    r.length = 0.5;
    r.flux = build_flux(25, 500, 100, 1);
    r.is_exit = id[0] == 'o';
    net.add_road(r);
  }
  net.add_junction("x");
  net.connect("x", {"i1", "i2"}, {"o1", "o2"});
  net.junctions[0].dist = {{0.5, 0.5}, {0.5, 0.5}};  // equal columns
  ValidationReport rep = validate(net);
  CHECK(rep.ok());
  REQUIRE(rep.warnings.size() == 1);
  CHECK(rep.warnings[0].find("span condition") != std::string::npos);

  net.junctions[0].dist = {{0.6, 0.4}, {0.4, 0.6}};
  rep = validate(net);
  CHECK(rep.warnings.empty());
}

TEST_CASE("exit-distance weights on the toy network") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  const auto warnings = assign_weights(net);
  CHECK(warnings.empty());
  CHECK(net.road("exit").dist == 0);
  CHECK(net.road("exit").weight == 1.0);
  CHECK(net.road("res_b").dist == 1);
  CHECK(net.road("highway").dist == 1);
  CHECK(net.road("res_a").dist == 2);
  CHECK(net.road("entry").dist == 2);
  CHECK(net.road("res_a").weight == doctest::Approx(0.25));
  CHECK(net.road("highway").weight == doctest::Approx(0.5));
}

TEST_CASE("single-road network gets weight one") {
  Network net;
  Road r;
  r.id = "only";
  r.length = 1.0;
  r.flux = build_flux(25, 500, 100, 1);
  r.is_exit = true;
  net.add_road(r);
  assign_weights(net);
  CHECK(net.road("only").dist == 0);
  CHECK(net.road("only").weight == 1.0);
}

TEST_CASE("unreachable roads get zero weight and a warning") {
  Network net = two_road_chain();
  Road stray;
  stray.id = "stray";
  stray.length = 0.3;
  stray.flux = build_flux(25, 500, 100, 1);
  net.add_road(stray);
  const auto warnings = assign_weights(net);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("stray") != std::string::npos);
  CHECK(net.road("stray").weight == 0.0);
  CHECK(net.road("a").dist == 1);
}

TEST_CASE("weights double per hop closer to the exit") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  assign_weights(net);
  const double w_entry = net.road("entry").weight;
  const double w_res_a = net.road("res_a").weight;
  const double w_res_b = net.road("res_b").weight;
  const double w_exit = net.road("exit").weight;
  CHECK(w_res_b == doctest::Approx(2.0 * w_res_a));
  CHECK(w_exit == doctest::Approx(2.0 * w_res_b));
  CHECK(w_entry <= w_res_a + 1e-12);
}

TEST_CASE("preference vector applies and reads back exactly") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  const PreferenceLayout layout = preference_layout(net);
  REQUIRE(layout.size() == 1);  // only the split junction has two outgoing

  apply_preferences(net, layout, std::vector<double>{0.5});
  auto& split = net.junctions[net.junction_index("split")];
  CHECK(split.dist[0][0] == 0.5);
  CHECK(split.dist[1][0] == 0.5);

  apply_preferences(net, layout, std::vector<double>{0.3});
  CHECK(split.dist[0][0] == doctest::Approx(0.3));
  CHECK(split.dist[1][0] == doctest::Approx(0.7));

  const auto back = extract_preferences(net, layout);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == 0.3);

  // Merge junction has one outgoing road: the matrix stays all ones.
  const auto& merge = net.junctions[net.junction_index("merge")];
  CHECK(merge.dist[0][0] == 1.0);
  CHECK(merge.dist[0][1] == 1.0);
}

TEST_CASE("full matrix entries include the implied row") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  const PreferenceLayout layout = preference_layout(net);
  const auto entries =
      full_matrix_entries(net, layout, std::vector<double>{1.2});
  REQUIRE(entries.size() == 2);
  CHECK(entries[0] == doctest::Approx(1.2));
  CHECK(entries[1] == doctest::Approx(-0.2));
}

TEST_CASE("preference vector length is checked") {
  ToyParams p;
  Network net = build_toy_network(p, ToyExperiment::D);
  const PreferenceLayout layout = preference_layout(net);
  CHECK_THROWS_AS(
      apply_preferences(net, layout, std::vector<double>{0.1, 0.2}),
      ValidationError);
}
