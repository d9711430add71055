#include "evac/lahaina.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "evac/calibration.hpp"
#include "evac/json_io.hpp"

namespace evac {

namespace {

constexpr double kRhoJam = 200.0;

/// Directed wiring of every road that appears in any network variant.
/// Tail/head name junctions; an empty name is an open boundary. The initial
/// density is per lane and applies to the first morning network only.
struct RoadDef {
  const char* id;
  const char* tail;
  const char* head;
  double init_per_lane;
  bool source;
  bool exit;
  bool east;
};

const RoadDef kRoadDefs[] = {
    // Northbound highway spine; the last segment is the reversible exit.
    {"Hwy30[0]", "", "hwy_prison", 0.178, true, false, false},
    {"Hwy30[1]", "hwy_prison", "hwy_dickenson", 0.178, false, false, false},
    {"Hwy30[2]", "hwy_dickenson", "hwy_ll", 0.178, false, false, false},
    {"Hwy30[3]", "hwy_ll", "hwy_papalaua", 0.178, false, false, false},
    {"Hwy30[4]", "hwy_papalaua", "hwy_kenui", 0.178, false, false, false},
    {"Hwy30[5]", "hwy_kenui", "hwy_keawe", 0.245, false, false, false},
    {"Hwy30[6]", "hwy_keawe", "hwy_front", 0.178, false, false, false},
    {"Hwy30[7]", "hwy_front", "", 0.178, false, true, false},
    // Northbound Front Street.
    {"Front[0]", "", "front_prison", 0.300, true, false, false},
    {"Front[1]", "front_prison", "front_canal", 0.300, false, false, false},
    {"Front[2]", "front_canal", "front_dickenson", 0.300, false, false, false},
    {"Front[3]", "front_dickenson", "front_ll", 0.300, false, false, false},
    {"Front[4]", "front_ll", "front_wahie", 0.300, false, false, false},
    {"Front[5]", "front_wahie", "front_papalaua", 0.300, false, false, false},
    {"Front[6]", "front_papalaua", "front_baker", 0.300, false, false, false},
    {"Front[7]", "front_baker", "front_kenui", 0.300, false, false, false},
    {"Front[8]", "front_kenui", "front_puunoa", 0.300, false, false, false},
    {"Front[9]", "front_puunoa", "hwy_front", 0.300, false, false, false},
    // Northbound Waine'e Street.
    {"Wainee[0]", "", "wainee_prison", 0.0, true, false, false},
    {"Wainee[1]", "wainee_prison", "wainee_hale", 0.0, false, false, false},
    {"Wainee[2]", "wainee_hale", "wainee_dickenson", 0.0, false, false, false},
    {"Wainee[3]", "wainee_dickenson", "wainee_panaewa", 0.0, false, false, false},
    {"Wainee[4]", "wainee_panaewa", "wainee_ll", 0.0, false, false, false},
    {"Wainee[5]", "wainee_ll", "wainee_papalaua", 0.056, false, false, false},
    {"Wainee[6]", "wainee_papalaua", "wainee_baker", 0.056, false, false, false},
    {"Wainee[7]", "wainee_baker", "wainee_kenui", 0.056, false, false, false},
    // Eastbound cross streets funneling toward the highway.
    {"Prison[0]", "front_prison", "wainee_prison", 0.0, false, false, false},
    {"Prison[1]", "wainee_prison", "hwy_prison", 0.0, false, false, false},
    {"Dicken[0]", "front_dickenson", "dicken_luakini", 0.047, false, false, false},
    {"Dicken[1]", "dicken_luakini", "wainee_dickenson", 0.047, false, false, false},
    {"Dicken[2]", "wainee_dickenson", "hwy_dickenson", 0.047, false, false, false},
    {"Papal[0]", "front_papalaua", "wainee_papalaua", 0.049, false, false, false},
    {"Papal[1]", "wainee_papalaua", "hwy_papalaua", 0.049, false, false, false},
    {"Kenui[0]", "front_kenui", "kenui_kahoma", 0.038, false, false, false},
    {"Kenui[1]", "kenui_kahoma", "wainee_kenui", 0.038, false, false, false},
    {"Kenui[2]", "wainee_kenui", "hwy_kenui", 0.038, false, false, false},
    // Keawe Street extension carries bypass traffic west to the highway.
    {"Keawe[0]", "keawe_gateway", "hwy_keawe", 0.217, false, false, false},
    {"Keawe[1]", "keawe_oil", "keawe_gateway", 0.157, false, false, false},
    // Lahaina Bypass, south source to its northern terminus.
    {"LB[0]", "", "ll_bypass", 0.154, true, false, false},
    {"LB[1]", "ll_bypass", "keawe_oil", 0.154, false, false, false},
    // Lahainaluna Road: the two lower segments run east toward the highway,
    // the upper hill segments carry the residential area west/down.
    {"LL[0]", "front_ll", "wainee_ll", 0.245, false, false, false},
    {"LL[1]", "wainee_ll", "hwy_ll", 0.178, false, false, false},
    {"LL[2]", "ll_kuhua", "hwy_ll", 0.178, false, false, false},
    {"LL[3]", "ll_pauoa", "ll_kuhua", 0.178, false, false, false},
    {"LL[4]", "ll_kale", "ll_pauoa", 0.178, false, false, false},
    {"LL[5]", "ll_paunau", "ll_kale", 0.178, false, false, false},
    {"LL[6]", "ll_kelawea", "ll_paunau", 0.178, false, false, false},
    {"LL[7]", "ll_kalena", "ll_kelawea", 0.143, false, false, false},
    {"LL[8]", "ll_dirt", "ll_kalena", 0.143, false, false, false},
    {"LL[9]", "ll_bypass", "ll_dirt", 0.143, false, false, false},
    {"LL[10]", "", "ll_bypass", 0.143, true, false, false},
    // Residential feeders.
    {"Kuhua", "", "ll_kuhua", 0.0, true, false, true},
    {"KomoMai", "", "keawe_oil", 0.0, true, false, true},
    {"Pauoa", "", "ll_pauoa", 0.0, true, false, true},
    {"Kale", "", "ll_kale", 0.0, true, false, true},
    {"Paunau", "", "ll_paunau", 0.0, true, false, true},
    {"Kelawea", "", "ll_kelawea", 0.0, true, false, true},
    {"Kalena", "", "ll_kalena", 0.0, true, false, true},
    {"DirtRoad", "", "ll_dirt", 0.0, true, false, true},
    {"Wahie", "", "front_wahie", 0.0, true, false, false},
    {"Baker", "", "front_baker", 0.0, true, false, false},
    {"KahomaLoop", "", "kenui_kahoma", 0.0, true, false, false},
    {"Puunoa", "", "front_puunoa", 0.0, true, false, false},
    {"Canal", "", "front_canal", 0.0, true, false, false},
    {"Hale", "", "wainee_hale", 0.0, true, false, false},
    {"Luakini", "", "dicken_luakini", 0.0, true, false, false},
    {"Panaewa", "", "wainee_panaewa", 0.0, true, false, false},
    // Afternoon additions: shelter sink, reversed Keawe leg, the dirt
    // connector, and the southbound exits opened late in the day.
    {"GatewayExit", "keawe_gateway", "", 0.0, false, true, false},
    {"KeaweE", "hwy_keawe", "keawe_gateway", 0.0, false, false, false},
    {"Oil", "ll_dirt", "keawe_oil", 0.0, false, false, false},
    {"FrontS_exit", "front_prison", "", 0.0, false, true, false},
    {"WaineeS_exit", "wainee_prison", "", 0.0, false, true, false},
    {"Hwy30S_exit", "hwy_prison", "", 0.0, false, true, false},
    {"BypassS_exit", "ll_bypass", "", 0.0, false, true, false},
};

const RoadDef& road_def(const std::string& id) {
  for (const RoadDef& d : kRoadDefs)
    if (id == d.id) return d;
  throw ValidationError("lahaina: no wiring for road " + id);
}

std::vector<std::string> base_morning_roads() {
  std::vector<std::string> ids;
  for (const RoadDef& d : kRoadDefs) ids.emplace_back(d.id);
  // The morning network carries only the Papalaua and Kenui crossings; the
  // Prison and Dickenson crossings and the extra western feeders belong to
  // the afternoon variants, as do the late reconfiguration roads.
  const std::vector<std::string> not_in_am = {
      "Prison[0]", "Prison[1]", "Dicken[0]",   "Dicken[1]",
      "Dicken[2]", "DirtRoad",  "Canal",       "Hale",
      "Luakini",   "Panaewa",   "GatewayExit", "KeaweE",
      "Oil",       "FrontS_exit", "WaineeS_exit", "Hwy30S_exit",
      "BypassS_exit"};
  std::erase_if(ids, [&](const std::string& id) {
    return std::find(not_in_am.begin(), not_in_am.end(), id) != not_in_am.end();
  });
  return ids;
}

void remove_roads(std::vector<std::string>& ids,
                  std::initializer_list<const char*> gone) {
  for (const char* g : gone)
    std::erase(ids, std::string(g));
}

void add_roads(std::vector<std::string>& ids,
               std::initializer_list<const char*> added) {
  for (const char* a : added) ids.emplace_back(a);
}

std::vector<std::string> roads_for(LahainaNetwork which) {
  std::vector<std::string> ids = base_morning_roads();
  if (which == LahainaNetwork::AmBase) return ids;
  // Downed power lines close the Papalaua crossing.
  remove_roads(ids, {"Papal[0]", "Papal[1]"});
  if (which == LahainaNetwork::Am2) return ids;
  // Debris closes lower Lahainaluna between Front Street and the highway.
  remove_roads(ids, {"LL[0]", "LL[1]"});
  if (which == LahainaNetwork::Am3) return ids;
  // Fire reaches the top of Lahainaluna; the Prison and Dickenson crossings
  // and more western feeders are active in the afternoon network.
  remove_roads(ids, {"LL[10]"});
  add_roads(ids, {"Prison[0]", "Prison[1]", "Dicken[0]", "Dicken[1]",
                  "Dicken[2]", "Canal", "Hale", "Luakini", "Panaewa"});
  if (which == LahainaNetwork::PmBase) return ids;
  // Bypass overtaken; traffic diverted into the shopping center; the dirt
  // road source appears.
  remove_roads(ids, {"LB[1]"});
  add_roads(ids, {"DirtRoad", "GatewayExit"});
  if (which == LahainaNetwork::Pm2) return ids;
  // The dirt connector to Keawe opens, plus the eastbound Keawe leg.
  add_roads(ids, {"Oil", "KeaweE"});
  if (which == LahainaNetwork::Pm3) return ids;
  // Fire takes the eastern Dickenson crossing.
  remove_roads(ids, {"Dicken[2]"});
  if (which == LahainaNetwork::Pm4) return ids;
  // Southbound directions open: three southern exits plus the bypass exit.
  add_roads(ids, {"FrontS_exit", "WaineeS_exit", "Hwy30S_exit", "BypassS_exit"});
  return ids;
}

const std::unordered_map<std::string, RoadRecord>& road_records() {
  static const std::unordered_map<std::string, RoadRecord> records = [] {
    std::unordered_map<std::string, RoadRecord> map;
    for (RoadRecord& r : load_lahaina_roads(data_path("lahaina_roads.json")))
      map.emplace(r.id, std::move(r));
    return map;
  }();
  return records;
}

}  // namespace

std::vector<LahainaNetwork> lahaina_sequence() {
  return {LahainaNetwork::AmBase, LahainaNetwork::Am2, LahainaNetwork::Am3,
          LahainaNetwork::PmBase, LahainaNetwork::Pm2, LahainaNetwork::Pm3,
          LahainaNetwork::Pm4, LahainaNetwork::Pm5};
}

std::string lahaina_network_name(LahainaNetwork which) {
  switch (which) {
    case LahainaNetwork::AmBase: return "am_base";
    case LahainaNetwork::Am2: return "am2";
    case LahainaNetwork::Am3: return "am3";
    case LahainaNetwork::PmBase: return "pm_base";
    case LahainaNetwork::Pm2: return "pm2";
    case LahainaNetwork::Pm3: return "pm3";
    case LahainaNetwork::Pm4: return "pm4";
    case LahainaNetwork::Pm5: return "pm5";
  }
  throw ValidationError("lahaina: unknown network variant");
}

Network build_lahaina_network(LahainaNetwork which) {
  const auto& records = road_records();
  const std::vector<std::string> ids = roads_for(which);
  const bool first_morning = which == LahainaNetwork::AmBase;

  Network net;
  // Ordered junction membership, keyed by junction name in first-seen order.
  std::vector<std::string> junction_order;
  std::map<std::string, std::pair<std::vector<std::string>,
                                  std::vector<std::string>>> wiring;
  auto touch = [&](const std::string& name) {
    if (!wiring.count(name)) junction_order.push_back(name);
    return &wiring[name];
  };

  for (const std::string& id : ids) {
    const RoadDef& def = road_def(id);
    auto rec_it = records.find(id);
    if (rec_it == records.end())
      throw ValidationError("lahaina: road " + id + " missing from the table");
    const RoadRecord& rec = rec_it->second;

    Road r;
    r.id = id;
    r.length = rec.length_mi;
    r.flux = build_flux(rec.speed_mph, rec.f_max_vphpl, kRhoJam, rec.lanes);
    r.is_source = def.source;
    r.is_exit = def.exit;
    r.source_group = def.east ? SourceGroup::East : SourceGroup::West;
    r.init_density = first_morning ? def.init_per_lane * rec.lanes : 0.0;
    net.add_road(std::move(r));

    if (def.tail[0] != '\0') touch(def.tail)->second.push_back(id);
    if (def.head[0] != '\0') touch(def.head)->first.push_back(id);
  }

  for (const std::string& name : junction_order) {
    const auto& [in, out] = wiring.at(name);
    if (in.empty() || out.empty())
      throw ValidationError("lahaina: junction " + name +
                            " is missing an incoming or outgoing road in " +
                            lahaina_network_name(which));
    net.add_junction(name);
    net.connect(name, in, out);
  }

  // Default split preferences. Front Street runs straight to the northern
  // exit, so through traffic dominates over the eastward crossings there.
  // Multi-in/multi-out junctions get distinct columns, which also keeps the
  // matrices away from the degenerate equal-column case.
  const std::map<std::string, double> turn_share = {
      {"front_prison", 0.3},    // Prison Street toward the highway
      {"front_dickenson", 0.3}, // Dickenson Street
      {"front_ll", 0.3},        // lower Lahainaluna
      {"front_papalaua", 0.3},  // Papalaua Street
      {"front_kenui", 0.3},     // Kenui Street
  };
  for (Junction& jn : net.junctions) {
    const std::size_t n = jn.in.size();
    const std::size_t m = jn.out.size();
    if (m < 2) continue;
    if (n == 1 && m == 2) {
      auto it = turn_share.find(jn.id);
      if (it != turn_share.end())
        jn.dist = {{1.0 - it->second}, {it->second}};
      continue;
    }
    if (n == 1) continue;  // uniform three-way split
    if (n == 2 && m == 2) {
      jn.dist = {{0.6, 0.4}, {0.4, 0.6}};
    } else if (n == 2 && m == 3) {
      jn.dist = {{0.4, 0.2}, {0.3, 0.45}, {0.3, 0.35}};
    } else {
      throw ValidationError("lahaina: junction " + jn.id +
                            " has an unexpected shape");
    }
  }
  return net;
}

void export_lahaina_networks(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (LahainaNetwork which : lahaina_sequence()) {
    const Network net = build_lahaina_network(which);
    save_network(net, dir + "/" + lahaina_network_name(which) + ".json");
  }
}

} // namespace evac
