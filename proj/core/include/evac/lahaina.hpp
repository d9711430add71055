#pragma once

#include <string>
#include <vector>

#include "evac/network.hpp"

namespace evac {

/// The time-ordered network variants of the Lahaina evacuation scenario.
/// Each later variant applies the documented road closures/openings to its
/// predecessor; see docs/schema.md for the reconstruction notes.
enum class LahainaNetwork { AmBase, Am2, Am3, PmBase, Pm2, Pm3, Pm4, Pm5 };

std::vector<LahainaNetwork> lahaina_sequence();
std::string lahaina_network_name(LahainaNetwork which);

/// Builds the network from the bundled road tables. Initial densities from
/// the calibrated morning table are applied to the first morning network
/// only; later variants start empty and receive state by carryover.
Network build_lahaina_network(LahainaNetwork which);

/// Writes all eight network documents into a directory (one JSON each).
void export_lahaina_networks(const std::string& dir);

} // namespace evac
