#pragma once

#include <string>
#include <vector>

#include "evac/engine.hpp"
#include "evac/network.hpp"

namespace evac {

enum class Los { A, B, C, D, E };

char los_letter(Los g);

/// Grades local conditions by the ratio of travel speed f(rho)/rho to the
/// free-flow speed: A >= 1, B >= 0.7, C >= 0.5, D >= 0.4, otherwise E.
Los los_classify(const NormalizedFlux& flux, double rho);

/// Running evacuation metrics. Weighted time-integrated cars uses normalized
/// densities, miles and seconds (rectangle rule in time, midpoint in space);
/// cars entered/exited integrate the engine's boundary interface fluxes on
/// source and exit roads and carry the jam-density factor, so they are
/// vehicle counts.
class MetricsAccumulator {
public:
  explicit MetricsAccumulator(bool record_series = false)
      : record_series_(record_series) {}

  /// Call after every engine step with the step size just taken.
  void accumulate(const Engine& engine, double dt_hr);

  double weighted_time_integrated() const { return weighted_; }
  double cars_entered() const { return entered_; }
  double cars_exited() const { return exited_; }
  double time_s() const { return t_s_; }
  const std::vector<double>& per_road_weighted() const { return per_road_; }

  /// Continue accumulating across a phase change (road sets may differ).
  void rebind(const Network& net);

  struct SeriesRow {
    double t_s, weighted, entered, exited;
  };
  const std::vector<SeriesRow>& series() const { return series_; }

  void export_series(const std::string& path) const;

private:
  bool record_series_;
  double weighted_ = 0.0, entered_ = 0.0, exited_ = 0.0, t_s_ = 0.0;
  std::vector<double> per_road_;
  std::vector<SeriesRow> series_;
};

/// Heatmap exports: a CSV of (road_id, cell_index, x_mi, rho, los) and an SVG
/// with one polyline per road, each cell segment filled with the five-color
/// level-of-service scale documented in docs/schema.md.
void export_heatmap_csv(const Network& net, const std::string& path);
void export_heatmap_svg(const Network& net, const std::string& path);

} // namespace evac
