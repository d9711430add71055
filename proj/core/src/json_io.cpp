#include "evac/json_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "evac/calibration.hpp"

namespace evac {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

BoundarySpec boundary_from_json(const json& j, const std::string& road_id) {
  BoundarySpec b;
  const std::string type = j.value("type", "nonreflecting");
  if (type == "nonreflecting") {
    b.type = BoundarySpec::Type::NonReflecting;
  } else if (type == "prescribed") {
    b.type = BoundarySpec::Type::Prescribed;
    if (!j.contains("density"))
      throw ValidationError("road " + road_id +
                            ": prescribed boundary needs a density");
    b.density = j["density"].get<double>();
  } else {
    throw ValidationError("road " + road_id + ": unknown boundary type " + type);
  }
  return b;
}

json boundary_to_json(const BoundarySpec& b) {
  json j;
  if (b.type == BoundarySpec::Type::NonReflecting) {
    j["type"] = "nonreflecting";
  } else {
    j["type"] = "prescribed";
    j["density"] = b.density;
  }
  return j;
}

}  // namespace

Network load_network(const std::string& path) {
  const json doc = parse_file(path);
  if (!doc.contains("roads") || !doc.contains("junctions"))
    throw ValidationError(path + ": network document needs roads and junctions");
  const double rho_jam = doc.value("rho_jam", 200.0);

  Network net;
  // Remember declared attachments so junction wiring can be cross-checked.
  std::vector<std::pair<std::string, std::string>> declared;  // left, right
  for (const auto& rj : doc["roads"]) {
    Road r;
    r.id = rj.at("id").get<std::string>();
    r.length = rj.at("length_mi").get<double>();
    const double lanes = rj.at("lanes").get<double>();
    const double v_f = rj.at("v_f_mph").get<double>();
    const double f_c = rj.at("f_c_vphpl").get<double>();
    r.flux = build_flux(v_f, f_c, rho_jam, lanes);
    r.is_source = rj.value("source", false);
    r.is_exit = rj.value("exit", false);
    r.init_density = rj.value("init_density", 0.0);
    r.source_group = rj.value("source_group", std::string("west")) == "east"
                         ? SourceGroup::East
                         : SourceGroup::West;
    std::string left_ref, right_ref;
    for (const char* side : {"left", "right"}) {
      if (!rj.contains(side))
        throw ValidationError("road " + r.id + ": missing " + side +
                              " attachment");
      const json& aj = rj[side];
      std::string ref;
      Attachment a;
      if (aj.is_string()) {
        ref = aj.get<std::string>();
        a = Attachment::open();  // junction wiring happens below
      } else {
        a = Attachment::open(boundary_from_json(aj, r.id));
      }
      if (std::string(side) == "left") {
        r.left = a;
        left_ref = ref;
      } else {
        r.right = a;
        right_ref = ref;
      }
    }
    declared.emplace_back(left_ref, right_ref);
    net.add_road(std::move(r));
  }

  for (const auto& jj : doc["junctions"]) {
    const std::string id = jj.at("id").get<std::string>();
    net.add_junction(id);
    std::vector<std::string> in, out;
    for (const auto& v : jj.at("in")) in.push_back(v.get<std::string>());
    for (const auto& v : jj.at("out")) out.push_back(v.get<std::string>());
    net.connect(id, in, out);
    if (jj.contains("alpha")) {
      Junction& jn = net.junctions[net.junction_index(id)];
      const auto& rows = jj["alpha"];
      if (rows.size() != jn.out.size())
        throw ValidationError("junction " + id + ": alpha row count mismatch");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].size() != jn.in.size())
          throw ValidationError("junction " + id + ": alpha column count mismatch");
        for (std::size_t i = 0; i < jn.in.size(); ++i)
          jn.dist[k][i] = rows[k][i].get<double>();
      }
    }
  }

  // Cross-check the per-road junction references against the wiring.
  for (std::size_t ri = 0; ri < net.roads.size(); ++ri) {
    const Road& r = net.roads[ri];
    const auto& [left_ref, right_ref] = declared[ri];
    if (!left_ref.empty()) {
      if (r.left.kind != Attachment::Kind::Junction ||
          net.junctions[r.left.junction].id != left_ref)
        throw ValidationError("road " + r.id + ": left reference " + left_ref +
                              " does not match any junction out-list");
    }
    if (!right_ref.empty()) {
      if (r.right.kind != Attachment::Kind::Junction ||
          net.junctions[r.right.junction].id != right_ref)
        throw ValidationError("road " + r.id + ": right reference " + right_ref +
                              " does not match any junction in-list");
    }
  }
  return net;
}

void save_network(const Network& net, const std::string& path) {
  json doc;
  double rho_jam = 200.0;
  if (!net.roads.empty()) rho_jam = net.roads.front().flux.rho_jam();
  doc["rho_jam"] = rho_jam;
  doc["roads"] = json::array();
  for (const Road& r : net.roads) {
    json rj;
    rj["id"] = r.id;
    rj["length_mi"] = r.length;
    rj["lanes"] = r.flux.lanes();
    rj["v_f_mph"] = r.flux.free_flow_speed();
    rj["f_c_vphpl"] = r.flux.max_flux_norm() * r.flux.rho_jam();
    if (r.left.kind == Attachment::Kind::Junction)
      rj["left"] = net.junctions[r.left.junction].id;
    else
      rj["left"] = boundary_to_json(r.left.boundary);
    if (r.right.kind == Attachment::Kind::Junction)
      rj["right"] = net.junctions[r.right.junction].id;
    else
      rj["right"] = boundary_to_json(r.right.boundary);
    if (r.is_source) rj["source"] = true;
    if (r.is_exit) rj["exit"] = true;
    if (r.init_density != 0.0) rj["init_density"] = r.init_density;
    if (r.source_group == SourceGroup::East) rj["source_group"] = "east";
    doc["roads"].push_back(std::move(rj));
  }
  doc["junctions"] = json::array();
  for (const Junction& jn : net.junctions) {
    json jj;
    jj["id"] = jn.id;
    jj["in"] = json::array();
    for (int r : jn.in) jj["in"].push_back(net.roads[r].id);
    jj["out"] = json::array();
    for (int r : jn.out) jj["out"].push_back(net.roads[r].id);
    jj["alpha"] = jn.dist;
    doc["junctions"].push_back(std::move(jj));
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << doc.dump(1) << "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  const json doc = parse_file(path);
  ScenarioConfig cfg;
  cfg.rho_jam = doc.value("rho_jam", 200.0);
  cfg.cfl_nu = doc.value("cfl_nu", 0.5);
  cfg.dx_target_mi = doc.value("dx_target_mi", 0.01);
  cfg.seed = doc.value("seed", 0ULL);
  cfg.sbcd.rng_seed = cfg.seed;
  if (doc.contains("sbcd")) {
    const auto& s = doc["sbcd"];
    cfg.sbcd.n_iter = s.value("n_iter", cfg.sbcd.n_iter);
    cfg.sbcd.sample_size = s.value("sample_size", cfg.sbcd.sample_size);
    cfg.sbcd.control_c = s.value("control_c", cfg.sbcd.control_c);
    cfg.sbcd.decay_f = s.value("decay_f", cfg.sbcd.decay_f);
    cfg.sbcd.tau_init = s.value("tau_init", cfg.sbcd.tau_init);
    cfg.sbcd.n_decay = s.value("n_decay", cfg.sbcd.n_decay);
    cfg.sbcd.fd_epsilon = s.value("fd_epsilon", cfg.sbcd.fd_epsilon);
    cfg.sbcd.eps_tol = s.value("eps_tol", cfg.sbcd.eps_tol);
  }
  if (!doc.contains("phases") || !doc["phases"].is_array() ||
      doc["phases"].empty())
    throw ValidationError(path + ": scenario needs a non-empty phases array");
  const fs::path base = fs::path(path).parent_path();
  for (const auto& pj : doc["phases"]) {
    ScenarioPhase ph;
    ph.network_path = pj.at("network").get<std::string>();
    if (!fs::path(ph.network_path).is_absolute() &&
        !fs::exists(ph.network_path) && fs::exists(base / ph.network_path))
      ph.network_path = (base / ph.network_path).string();
    ph.name = pj.value("name",
                       fs::path(ph.network_path).stem().string());
    ph.duration_s = pj.at("duration_s").get<double>();
    ph.gamma1 = pj.value("gamma1", 0.0);
    ph.gamma2 = pj.value("gamma2", ph.gamma1);
    ph.nt_opt_s = pj.value("nt_opt_s", 0.0);
    ph.exit_lanes = pj.value("exit_lanes", 0.0);
    if (ph.gamma2 < ph.gamma1)
      throw ValidationError(path + ": phase " + ph.name +
                            " needs gamma2 >= gamma1");
    cfg.phases.push_back(std::move(ph));
  }
  return cfg;
}

} // namespace evac
