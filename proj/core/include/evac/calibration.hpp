#pragma once

#include <string>
#include <vector>

#include "evac/flux.hpp"

namespace evac {

/// Resolves a bundled data file (road tables, networks, scenarios) against
/// EVACFLOW_DATA_DIR, ./data, ../data and the source-tree data directory.
std::string data_path(const std::string& relative);

/// One row of the bundled road tables.
struct RoadRecord {
  std::string table;       // hwy30, front, wainee, ...
  std::string id;          // Hwy30[0], Front[3], ...
  std::string name;
  std::string from, to;    // segment endpoints as printed
  double length_mi = 0.0;
  double lanes = 1.0;
  double speed_mph = 0.0;
  std::string road_class;
  double f_max_vphpl = 0.0;
  bool default_length = false;  // true for the synthesized stub segments
};

/// One row of the initial-condition table for the first morning network.
struct InitRecord {
  std::string name;
  std::string from, to;
  double aadt = -1.0;  // negative = not available
  bool google = false;
  char los = 'A';
  double v0_mph = 0.0;
  double rho0 = 0.0;
};

/// Speed ratios v0 / v_f per level of service; strictly decreasing A..E.
struct LosAlphaTable {
  double a = 1.0, b = 0.7, c = 0.5, d = 0.4, e = 0.25;
  double alpha(char los) const;
};

std::vector<RoadRecord> load_lahaina_roads(const std::string& path);

struct InitTable {
  LosAlphaTable alpha;
  std::vector<InitRecord> rows;
};
InitTable load_lahaina_init(const std::string& path);

/// Normalized initial density of one road segment. Uncongested (A) segments
/// use the peak-hour directional share of the daily volume; congested (B-E)
/// segments solve f(rho0) = alpha * v_f * rho0 on the quadratic branch.
double init_density(char los, double aadt, const NormalizedFlux& flux,
                    const LosAlphaTable& table = {});

} // namespace evac
