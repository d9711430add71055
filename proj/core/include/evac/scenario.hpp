#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evac/json_io.hpp"
#include "evac/metrics.hpp"
#include "evac/network.hpp"

namespace evac {

struct RunOptions {
  std::string out_dir;      // empty = no file output
  int snapshot_every = 0;   // heatmap export period in steps; 0 = off
  int repeats = 1;          // seeds averaged for the preference sequences
  bool quiet = false;
};

struct PhaseResult {
  std::string name;
  double duration_s = 0.0;
  double weighted_time_integrated = 0.0;  // this phase's contribution
  double cars_entered = 0.0;
  double cars_exited = 0.0;
  double discarded_vehicles = 0.0;  // mass dropped with removed roads
  double flooded_at_s = -1.0;  // first time every non-exit road is all LOS E
};

struct ScenarioResult {
  std::vector<PhaseResult> phases;
  double weighted_time_integrated = 0.0;
  double cars_entered = 0.0;
  double cars_exited = 0.0;
  double discarded_vehicles = 0.0;
  /// Cumulative series across phases (recorded when options request output
  /// or when `record_series` is set).
  std::vector<MetricsAccumulator::SeriesRow> series;
};

/// Runs the phases in order, carrying surviving road densities across phase
/// changes by road id, initializing new roads at the phase's source density
/// (source roads) or empty, and dropping removed roads with an accounted
/// vehicle count. With repeats > 1 the optimal preference sequences of
/// `repeats` seeds are averaged and the scenario is re-run once with the
/// averaged sequence.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts,
                            bool record_series = false);

struct LaneSweepEntry {
  double lanes;
  double cars_exited_final;
  double advantage_final;  // vs the first (baseline) lane count
  std::vector<MetricsAccumulator::SeriesRow> series;
};

/// Re-runs the scenario with the reversible exit road forced to each lane
/// count (first entry is the baseline) and reports cumulative cars-exited
/// differences against the baseline.
std::vector<LaneSweepEntry> lane_reversal_experiment(
    const ScenarioConfig& cfg, const std::vector<double>& lanes,
    const RunOptions& opts);

/// Road whose lane count the sweep overrides.
inline constexpr const char* kReversibleExitRoad = "Hwy30[7]";

} // namespace evac
