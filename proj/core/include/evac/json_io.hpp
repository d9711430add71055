#pragma once

#include <cstdint>
#include <string>

#include "evac/network.hpp"
#include "evac/optimizer.hpp"

namespace evac {

/// Loads a network config document (schema in docs/schema.md). The returned
/// network is not yet discretized.
Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

struct ScenarioPhase {
  std::string name;
  std::string network_path;
  double duration_s = 0.0;
  double gamma1 = 0.0;   // default / western source density (per lane)
  double gamma2 = 0.0;   // eastern source density (per lane)
  double nt_opt_s = 0.0; // receding optimization window; 0 disables
  double exit_lanes = 0.0; // override for the reversible exit road; 0 = keep
};

struct ScenarioConfig {
  std::vector<ScenarioPhase> phases;
  double rho_jam = 200.0;
  double cfl_nu = 0.5;
  double dx_target_mi = 0.01;
  std::uint64_t seed = 0;
  SbcdConfig sbcd;  // seeded from `seed` unless overridden in the document
};

ScenarioConfig load_scenario(const std::string& path);

} // namespace evac
