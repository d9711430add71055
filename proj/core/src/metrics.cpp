#include "evac/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace evac {

char los_letter(Los g) {
  switch (g) {
    case Los::A: return 'A';
    case Los::B: return 'B';
    case Los::C: return 'C';
    case Los::D: return 'D';
    case Los::E: return 'E';
  }
  return '?';
}

Los los_classify(const NormalizedFlux& flux, double rho) {
  rho = flux.clamp_density(rho);
  double ratio = 1.0;
  if (rho > 0.0) ratio = flux.eval(rho) / (rho * flux.free_flow_speed());
  // Calibrated densities sit exactly on these boundaries; the slack keeps
  // them in the grade they were solved from.
  if (ratio >= 1.0 - 1e-9) return Los::A;
  if (ratio >= 0.7 - 1e-9) return Los::B;
  if (ratio >= 0.5 - 1e-9) return Los::C;
  if (ratio >= 0.4 - 1e-9) return Los::D;
  return Los::E;
}

void MetricsAccumulator::rebind(const Network& net) {
  per_road_.assign(net.roads.size(), 0.0);
}

void MetricsAccumulator::accumulate(const Engine& engine, double dt_hr) {
  const Network& net = engine.network();
  if (per_road_.size() != net.roads.size()) rebind(net);
  const double dt_s = dt_hr * 3600.0;
  for (std::size_t r = 0; r < net.roads.size(); ++r) {
    const Road& road = net.roads[r];
    const double contrib = road.weight * road.mass_norm() * dt_s;
    weighted_ += contrib;
    per_road_[r] += contrib;
    if (road.is_source)
      entered_ += road.flux.rho_jam() * engine.left_boundary_flux()[r] * dt_hr;
    if (road.is_exit)
      exited_ += road.flux.rho_jam() * engine.right_boundary_flux()[r] * dt_hr;
  }
  t_s_ += dt_s;
  if (record_series_) series_.push_back({t_s_, weighted_, entered_, exited_});
}

namespace {

void write_or_throw(std::ofstream& out, const std::string& path) {
  if (!out) throw ValidationError("metrics: cannot write " + path);
}

}  // namespace

void MetricsAccumulator::export_series(const std::string& path) const {
  std::ofstream out(path);
  write_or_throw(out, path);
  out << "t_sec,weighted_time_integrated,cars_entered,cars_exited\n";
  char buf[160];
  for (const SeriesRow& row : series_) {
    std::snprintf(buf, sizeof buf, "%.6f,%.10g,%.10g,%.10g\n", row.t_s,
                  row.weighted, row.entered, row.exited);
    out << buf;
  }
  if (!out) throw ValidationError("metrics: write failed for " + path);
}

void export_heatmap_csv(const Network& net, const std::string& path) {
  std::ofstream out(path);
  write_or_throw(out, path);
  out << "road_id,cell_index,x_mi,rho,los\n";
  char buf[160];
  for (const Road& road : net.roads) {
    for (int m = 0; m < road.cells; ++m) {
      const double x = (m + 0.5) * road.dx;
      const double rho = road.rho[m + 1];
      std::snprintf(buf, sizeof buf, "%s,%d,%.6f,%.10g,%c\n", road.id.c_str(),
                    m, x, rho, los_letter(los_classify(road.flux, rho)));
      out << buf;
    }
  }
  if (!out) throw ValidationError("metrics: write failed for " + path);
}

namespace {

// Five-color level-of-service scale; see docs/schema.md.
const char* los_color(Los g) {
  switch (g) {
    case Los::A: return "#4daf4a";
    case Los::B: return "#a6d854";
    case Los::C: return "#ffd92f";
    case Los::D: return "#fc8d62";
    case Los::E: return "#e41a1c";
  }
  return "#000000";
}

}  // namespace

void export_heatmap_svg(const Network& net, const std::string& path) {
  std::ofstream out(path);
  write_or_throw(out, path);
  double max_len = 0.0;
  for (const Road& road : net.roads) max_len = std::max(max_len, road.length);
  const double width = 860.0, margin = 10.0, row_h = 16.0, label_w = 130.0;
  const double scale = (width - label_w - 2 * margin) / std::max(max_len, 1e-9);
  const double height = margin * 2 + row_h * static_cast<double>(net.roads.size());
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  for (std::size_t r = 0; r < net.roads.size(); ++r) {
    const Road& road = net.roads[r];
    const double y = margin + row_h * (static_cast<double>(r) + 0.5);
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"9\" "
                  "font-family=\"monospace\">%s</text>\n",
                  margin, y + 3.0, road.id.c_str());
    out << buf;
    for (int m = 0; m < road.cells; ++m) {
      const double x0 = margin + label_w + scale * road.dx * m;
      const double x1 = margin + label_w + scale * road.dx * (m + 1);
      const Los g = los_classify(road.flux, road.rho[m + 1]);
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" "
                    "stroke=\"%s\" stroke-width=\"8\"/>\n",
                    x0, y, x1, y, los_color(g));
      out << buf;
    }
  }
  out << "</svg>\n";
  if (!out) throw ValidationError("metrics: write failed for " + path);
}

} // namespace evac
