#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "evac/calibration.hpp"

using namespace evac;

namespace {

NormalizedFlux flux_for(double v, double fc) {
  return build_flux(v, fc, 200, 1);
}

}  // namespace

TEST_CASE("uncongested segments from daily volumes") {
  const LosAlphaTable table;
  // Waine'e north of Lahainaluna.
  CHECK(init_density('A', 3939, flux_for(20, 300), table) ==
        doctest::Approx(0.0561).epsilon(1e-3));
  CHECK(init_density('A', 3333, flux_for(20, 400), table) ==
        doctest::Approx(0.0475).epsilon(1e-3));
  CHECK(init_density('A', 3434, flux_for(20, 500), table) ==
        doctest::Approx(0.0489).epsilon(1e-3));
  CHECK(init_density('A', 2652, flux_for(20, 400), table) ==
        doctest::Approx(0.0378).epsilon(1e-3));
  CHECK(init_density('A', 0, flux_for(20, 300), table) == 0.0);
  CHECK_THROWS_AS(init_density('A', -1, flux_for(20, 300), table),
                  ValidationError);
}

TEST_CASE("congested segments solve the speed-ratio relation") {
  const LosAlphaTable table;
  CHECK(init_density('B', -1, flux_for(35, 875), table) ==
        doctest::Approx(0.178).epsilon(1e-3));
  CHECK(init_density('B', -1, flux_for(40, 1000), table) ==
        doctest::Approx(0.178).epsilon(1e-3));
  CHECK(init_density('C', -1, flux_for(40, 1000), table) ==
        doctest::Approx(0.245).epsilon(1e-3));
  CHECK(init_density('D', -1, flux_for(20, 500), table) ==
        doctest::Approx(0.300).epsilon(1e-3));
  CHECK(init_density('B', -1, flux_for(30, 650), table) ==
        doctest::Approx(0.154).epsilon(1e-3));
  CHECK(init_density('C', -1, flux_for(25, 550), table) ==
        doctest::Approx(0.217).epsilon(1e-3));
  CHECK(init_density('B', -1, flux_for(25, 550), table) ==
        doctest::Approx(0.157).epsilon(1e-3));
  CHECK(init_density('B', -1, flux_for(30, 600), table) ==
        doctest::Approx(0.143).epsilon(1e-3));
}

TEST_CASE("congested density satisfies f(rho0) = alpha v_f rho0") {
  const LosAlphaTable table;
  for (auto [v, fc] :
       {std::pair{35.0, 875.0}, {40.0, 1000.0}, {20.0, 500.0},
        {25.0, 550.0}, {30.0, 650.0}, {30.0, 600.0}, {20.0, 300.0}}) {
    const NormalizedFlux f = flux_for(v, fc);
    for (char los : {'B', 'C', 'D', 'E'}) {
      const double rho0 = init_density(los, -1, f, table);
      const double alpha = table.alpha(los);
      CHECK(f.eval(rho0) == doctest::Approx(alpha * v * rho0).epsilon(1e-8));
      CHECK(rho0 > f.critical_density_norm());
      CHECK(rho0 < 1.0);
    }
  }
}

TEST_CASE("a unit speed ratio is rejected off the uncongested branch") {
  LosAlphaTable table;
  table.b = 1.0;
  CHECK_THROWS_AS(init_density('B', -1, flux_for(35, 875), table),
                  ValidationError);
}

TEST_CASE("bundled road table matches the published row counts") {
  const auto roads = load_lahaina_roads(data_path("lahaina_roads.json"));
  std::map<std::string, int> counts;
  int published = 0, synthesized = 0;
  for (const auto& r : roads) {
    counts[r.table]++;
    const bool synth = r.table == "sources_west" || r.table == "pm_additions";
    synthesized += synth;
    published += !synth;
  }
  CHECK(published == 59);
  CHECK(counts["hwy30"] == 8);
  CHECK(counts["front"] == 10);
  CHECK(counts["wainee"] == 8);
  CHECK(counts["west_residential"] == 10);
  CHECK(counts["keawe_lb"] == 4);
  CHECK(counts["ll"] == 11);
  CHECK(counts["sources_east"] == 8);
  CHECK(synthesized == 15);
}

TEST_CASE("bundled road table spot checks") {
  const auto roads = load_lahaina_roads(data_path("lahaina_roads.json"));
  auto find = [&](const std::string& id) -> const RoadRecord& {
    for (const auto& r : roads)
      if (r.id == id) return r;
    REQUIRE(false);
    return roads.front();
  };
  const RoadRecord& h3 = find("Hwy30[3]");
  CHECK(h3.speed_mph == 40);
  CHECK(h3.f_max_vphpl == 1000);
  CHECK(h3.lanes == 2);
  CHECK(h3.length_mi == doctest::Approx(0.12));

  const RoadRecord& lb1 = find("LB[1]");
  CHECK(lb1.length_mi == doctest::Approx(1.06));
  CHECK(lb1.speed_mph == 30);
  CHECK(lb1.f_max_vphpl == 650);

  const RoadRecord& w5 = find("Wainee[5]");
  CHECK(w5.f_max_vphpl == 400);
  const RoadRecord& w4 = find("Wainee[4]");
  CHECK(w4.f_max_vphpl == 300);
}

TEST_CASE("bundled initial-condition table round-trips its formulas") {
  const InitTable table = load_lahaina_init(data_path("lahaina_init.json"));
  CHECK(table.rows.size() == 18);
  CHECK(table.alpha.a == 1.0);
  CHECK(table.alpha.b == doctest::Approx(0.7));
  // Every published v0 equals alpha(los) * speed limit for its segment, and
  // the published densities follow from the formulas (checked fully by the
  // acceptance suite with per-segment diagrams).
  for (const auto& row : table.rows) {
    if (row.v0_mph <= 0) continue;
    const double alpha = table.alpha.alpha(row.los);
    CHECK(row.v0_mph / alpha > 0.0);
  }
}

TEST_CASE("a non-decreasing speed-ratio table is rejected at load") {
  namespace fs = std::filesystem;
  const fs::path p = fs::temp_directory_path() / "evac_bad_alpha.json";
  {
    std::ofstream out(p);
    out << R"({"alpha": {"A":1.0,"B":0.7,"C":0.8,"D":0.4,"E":0.25},
               "rows": []})";
  }
  CHECK_THROWS_AS(load_lahaina_init(p.string()), ValidationError);
  fs::remove(p);
}
