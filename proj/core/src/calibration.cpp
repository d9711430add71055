#include "evac/calibration.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace evac {

namespace fs = std::filesystem;
using nlohmann::json;

std::string data_path(const std::string& relative) {
  std::vector<fs::path> candidates;
  if (const char* env = std::getenv("EVACFLOW_DATA_DIR"))
    candidates.emplace_back(env);
  candidates.emplace_back("data");
  candidates.emplace_back("../data");
#ifdef EVACFLOW_SOURCE_DATA_DIR
  candidates.emplace_back(EVACFLOW_SOURCE_DATA_DIR);
#endif
  for (const auto& base : candidates) {
    fs::path p = base / relative;
    if (fs::exists(p)) return p.string();
  }
  throw ValidationError("data file not found: " + relative);
}

double LosAlphaTable::alpha(char los) const {
  switch (los) {
    case 'A': return a;
    case 'B': return b;
    case 'C': return c;
    case 'D': return d;
    case 'E': return e;
  }
  throw ValidationError(std::string("unknown LOS letter '") + los + "'");
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

std::vector<RoadRecord> load_lahaina_roads(const std::string& path) {
  const json j = load_json(path);
  if (!j.contains("roads") || !j["roads"].is_array())
    throw ValidationError(path + ": missing roads array");
  std::vector<RoadRecord> out;
  for (const auto& row : j["roads"]) {
    RoadRecord r;
    r.table = row.at("table").get<std::string>();
    r.id = row.at("id").get<std::string>();
    r.name = row.at("name").get<std::string>();
    r.from = row.at("from").get<std::string>();
    r.to = row.at("to").get<std::string>();
    r.length_mi = row.at("length_mi").get<double>();
    r.lanes = row.at("lanes").get<double>();
    r.speed_mph = row.at("speed_mph").get<double>();
    r.road_class = row.at("road_class").get<std::string>();
    r.f_max_vphpl = row.at("f_max_vphpl").get<double>();
    r.default_length = row.value("default_length", false);
    out.push_back(std::move(r));
  }
  return out;
}

InitTable load_lahaina_init(const std::string& path) {
  const json j = load_json(path);
  InitTable t;
  if (j.contains("alpha")) {
    const auto& a = j["alpha"];
    t.alpha.a = a.value("A", 1.0);
    t.alpha.b = a.value("B", 0.7);
    t.alpha.c = a.value("C", 0.5);
    t.alpha.d = a.value("D", 0.4);
    t.alpha.e = a.value("E", 0.25);
  }
  if (!(t.alpha.a > t.alpha.b && t.alpha.b > t.alpha.c &&
        t.alpha.c > t.alpha.d && t.alpha.d > t.alpha.e))
    throw ValidationError(path + ": LOS speed ratios must decrease A through E");
  for (const auto& row : j.at("rows")) {
    InitRecord r;
    r.name = row.at("name").get<std::string>();
    r.from = row.at("from").get<std::string>();
    r.to = row.at("to").get<std::string>();
    r.aadt = row.value("aadt", -1.0);
    r.google = row.value("google", false);
    r.los = row.at("los").get<std::string>().at(0);
    r.v0_mph = row.value("v0_mph", 0.0);
    r.rho0 = row.at("rho0").get<double>();
    t.rows.push_back(std::move(r));
  }
  return t;
}

double init_density(char los, double aadt, const NormalizedFlux& flux,
                    const LosAlphaTable& table) {
  if (los == 'A') {
    if (aadt < 0.0)
      throw ValidationError("init_density: LOS A segment requires a daily volume");
    // Peak-hour share (0.1) and directional split (0.57) of the daily count,
    // spread over the lanes and read off the linear branch.
    return aadt * 0.1 * 0.57 /
           (flux.lanes() * flux.rho_jam() * flux.free_flow_speed());
  }
  const double alpha = table.alpha(los);
  if (alpha >= 1.0)
    throw ValidationError("init_density: congested LOS needs a speed ratio below 1");
  const double vf = flux.free_flow_speed();
  const double a = flux.quad_coeff_norm();
  const double fc = flux.max_flux_norm();
  const double sigma = flux.critical_density_norm();
  const double half = alpha * vf / (2.0 * a);
  const double rho0 = half + sigma + std::sqrt(fc / a * (alpha - 1.0) + half * half);
  return rho0;
}

} // namespace evac
