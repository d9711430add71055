#include "evac/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "evac/engine.hpp"
#include "evac/optimizer.hpp"

namespace evac {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using AlphaSequences = std::vector<std::vector<std::vector<double>>>;

bool all_non_exit_roads_grade_e(const Network& net) {
  for (const Road& r : net.roads) {
    if (r.is_exit) continue;
    for (int m = 0; m < r.cells; ++m)
      if (los_classify(r.flux, r.rho[m + 1]) != Los::E) return false;
  }
  return true;
}

Network load_phase_network(const ScenarioConfig& cfg,
                           const ScenarioPhase& phase) {
  Network net = load_network(phase.network_path);
  if (phase.exit_lanes > 0.0) {
    Road& r = net.road(kReversibleExitRoad);
    r.flux = r.flux.with_lanes(phase.exit_lanes);
  }
  for (Road& r : net.roads) {
    if (!r.is_source) continue;
    const double gamma =
        (r.source_group == SourceGroup::East ? phase.gamma2 : phase.gamma1) *
        r.flux.lanes();
    r.init_density = gamma;
    // Sources feed the network through a prescribed upstream state, imposed
    // only while the entrance characteristic points inward.
    if (r.left.kind == Attachment::Kind::Boundary)
      r.left = Attachment::open({BoundarySpec::Type::Prescribed, gamma});
  }
  net.discretize(cfg.dx_target_mi);
  const ValidationReport rep = validate(net);
  if (!rep.ok()) {
    std::string msg = "network " + phase.network_path + " invalid:";
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return net;
}

/// Copies surviving road densities from the previous phase into the next and
/// returns the vehicle count lost with removed roads.
double carry_over(const Network& prev, Network& next) {
  std::unordered_map<std::string, const Road*> prev_roads;
  for (const Road& r : prev.roads) prev_roads[r.id] = &r;
  for (Road& r : next.roads) {
    auto it = prev_roads.find(r.id);
    if (it == prev_roads.end()) continue;
    const Road& old = *it->second;
    if (old.cells == r.cells) {
      r.rho = old.rho;
    } else {
      for (int m = 0; m < r.cells; ++m) {
        const double x = (m + 0.5) * r.dx;
        const int src = std::min(old.cells - 1, static_cast<int>(x / old.dx));
        r.rho[m + 1] = std::min(old.rho[src + 1], r.flux.rho_max());
      }
    }
    prev_roads.erase(it);
  }
  double lost = 0.0;
  for (const auto& [id, road] : prev_roads)
    lost += road->mass_norm() * road->flux.rho_jam();
  return lost;
}

std::vector<double> window_ends(double duration_s, double nt_opt_s) {
  std::vector<double> w;
  if (nt_opt_s <= 0.0) {
    w.push_back(duration_s);
    return w;
  }
  double t = 0.0;
  while (t < duration_s - 1e-9) {
    t = std::min(duration_s, t + nt_opt_s);
    w.push_back(t);
  }
  return w;
}

/// One pass over the phases. When `replay` is given its preference sequences
/// are applied instead of running the optimizer; when `capture` is given the
/// chosen sequences are recorded there.
ScenarioResult run_single(const ScenarioConfig& cfg, const RunOptions& opts,
                          bool want_series, const AlphaSequences* replay,
                          AlphaSequences* capture) {
  if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);
  ScenarioResult result;
  MetricsAccumulator metrics(want_series);

  EngineConfig engine_cfg;
  engine_cfg.cfl_nu = cfg.cfl_nu;

  Network prev;
  bool have_prev = false;
  double clock_s = 0.0;
  std::uint64_t window_seed = cfg.sbcd.rng_seed;

  for (std::size_t pi = 0; pi < cfg.phases.size(); ++pi) {
    const ScenarioPhase& phase = cfg.phases[pi];
    Network net = load_phase_network(cfg, phase);
    PhaseResult pres;
    pres.name = phase.name;
    pres.duration_s = phase.duration_s;
    if (have_prev) pres.discarded_vehicles = carry_over(prev, net);
    assign_weights(net);

    Engine engine(net, engine_cfg);
    engine.set_time_hr(clock_s / 3600.0);
    metrics.rebind(net);
    const double entered0 = metrics.cars_entered();
    const double exited0 = metrics.cars_exited();
    const double weighted0 = metrics.weighted_time_integrated();

    const PreferenceLayout layout = preference_layout(net);
    std::vector<SbcdTraceRow> phase_trace;
    if (capture) capture->emplace_back();

    long step_count = 0;
    bool flooded = false;
    auto on_step = [&](double dt_hr) {
      metrics.accumulate(engine, dt_hr);
      ++step_count;
      if (!flooded && all_non_exit_roads_grade_e(net)) {
        flooded = true;
        pres.flooded_at_s = engine.time_hr() * 3600.0 - clock_s;
      }
      if (!opts.out_dir.empty() && opts.snapshot_every > 0 &&
          step_count % opts.snapshot_every == 0) {
        char name[80];
        std::snprintf(name, sizeof name, "%s_%06ld", phase.name.c_str(),
                      step_count);
        export_heatmap_csv(net, opts.out_dir + "/" + name + ".csv");
        export_heatmap_svg(net, opts.out_dir + "/" + name + ".svg");
      }
    };

    const std::vector<double> windows = window_ends(phase.duration_s,
                                                    phase.nt_opt_s);
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
      if (phase.nt_opt_s > 0.0 && layout.size() > 0) {
        std::vector<double> alpha;
        if (replay) {
          alpha = (*replay)[pi][wi];
        } else {
          SbcdConfig sb = cfg.sbcd;
          sb.rng_seed = window_seed++;
          const LossFn loss = make_mollified_loss(net, layout, phase.nt_opt_s,
                                                  engine_cfg, sb.eps_tol);
          SbcdResult r = sbcd(loss, extract_preferences(net, layout), sb);
          alpha = std::move(r.alpha);
          if (!opts.out_dir.empty())
            for (auto& row : r.trace) phase_trace.push_back(std::move(row));
        }
        apply_preferences(net, layout, alpha);
        if (capture) capture->back().push_back(alpha);
      }
      engine.advance_to((clock_s + windows[wi]) / 3600.0, on_step);
    }

    pres.cars_entered = metrics.cars_entered() - entered0;
    pres.cars_exited = metrics.cars_exited() - exited0;
    pres.weighted_time_integrated =
        metrics.weighted_time_integrated() - weighted0;
    result.phases.push_back(pres);
    result.discarded_vehicles += pres.discarded_vehicles;

    if (!opts.out_dir.empty()) {
      export_heatmap_csv(net, opts.out_dir + "/" + phase.name + "_final.csv");
      export_heatmap_svg(net, opts.out_dir + "/" + phase.name + "_final.svg");
      if (!phase_trace.empty())
        export_trace(phase_trace,
                     opts.out_dir + "/trace_" + phase.name + ".csv");
    }

    clock_s += phase.duration_s;
    prev = std::move(net);
    have_prev = true;
  }

  result.weighted_time_integrated = metrics.weighted_time_integrated();
  result.cars_entered = metrics.cars_entered();
  result.cars_exited = metrics.cars_exited();
  result.series = metrics.series();

  if (!opts.out_dir.empty()) {
    metrics.export_series(opts.out_dir + "/metrics.csv");
    json summary;
    summary["weighted_time_integrated"] = result.weighted_time_integrated;
    summary["cars_entered"] = result.cars_entered;
    summary["cars_exited"] = result.cars_exited;
    summary["discarded_vehicles"] = result.discarded_vehicles;
    summary["phases"] = json::array();
    for (const PhaseResult& ph : result.phases) {
      json pj;
      pj["name"] = ph.name;
      pj["duration_s"] = ph.duration_s;
      pj["weighted_time_integrated"] = ph.weighted_time_integrated;
      pj["cars_entered"] = ph.cars_entered;
      pj["cars_exited"] = ph.cars_exited;
      pj["discarded_vehicles"] = ph.discarded_vehicles;
      if (ph.flooded_at_s >= 0.0) pj["flooded_at_s"] = ph.flooded_at_s;
      summary["phases"].push_back(std::move(pj));
    }
    std::ofstream out(opts.out_dir + "/summary.json");
    out << summary.dump(1) << "\n";
  }
  return result;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts,
                            bool record_series) {
  const bool want_series = record_series || !opts.out_dir.empty();
  bool optimizing = false;
  for (const auto& p : cfg.phases) optimizing |= p.nt_opt_s > 0.0;

  if (!optimizing || opts.repeats <= 1)
    return run_single(cfg, opts, want_series, nullptr, nullptr);

  // Average the per-window optimal preferences across seeds, then run once
  // with the averaged sequence.
  AlphaSequences averaged;
  for (int rep = 0; rep < opts.repeats; ++rep) {
    ScenarioConfig c = cfg;
    c.sbcd.rng_seed = cfg.seed + static_cast<std::uint64_t>(rep);
    RunOptions quiet;
    quiet.quiet = true;
    AlphaSequences captured;
    run_single(c, quiet, false, nullptr, &captured);
    if (averaged.empty()) {
      averaged = std::move(captured);
    } else {
      for (std::size_t ph = 0; ph < captured.size(); ++ph)
        for (std::size_t w = 0; w < captured[ph].size(); ++w)
          for (std::size_t k = 0; k < captured[ph][w].size(); ++k)
            averaged[ph][w][k] += captured[ph][w][k];
    }
  }
  for (auto& ph : averaged)
    for (auto& w : ph)
      for (double& v : w) v /= static_cast<double>(opts.repeats);
  return run_single(cfg, opts, want_series, &averaged, nullptr);
}

std::vector<LaneSweepEntry> lane_reversal_experiment(
    const ScenarioConfig& cfg, const std::vector<double>& lanes,
    const RunOptions& opts) {
  if (lanes.empty()) throw ValidationError("lane sweep: no lane counts given");
  for (double n : lanes)
    if (n < 2.0)
      throw ValidationError("lane sweep: exit needs at least 2 lanes");
  std::vector<LaneSweepEntry> entries;
  for (double n : lanes) {
    ScenarioConfig c = cfg;
    // Phases that pin an explicit lane count (e.g. a warm-up before the
    // reversal window) keep it; the sweep overrides the rest.
    for (auto& ph : c.phases)
      if (ph.exit_lanes == 0.0) ph.exit_lanes = n;
    RunOptions ro = opts;
    if (!opts.out_dir.empty()) {
      char sub[32];
      std::snprintf(sub, sizeof sub, "lanes_%g", n);
      ro.out_dir = opts.out_dir + "/" + sub;
    }
    ScenarioResult res = run_scenario(c, ro, /*record_series=*/true);
    LaneSweepEntry e;
    e.lanes = n;
    e.cars_exited_final = res.cars_exited;
    e.series = std::move(res.series);
    entries.push_back(std::move(e));
  }
  const auto& base = entries.front();
  for (auto& e : entries)
    e.advantage_final = e.cars_exited_final - base.cars_exited_final;
  if (!opts.out_dir.empty()) {
    std::ofstream out(opts.out_dir + "/lane_sweep.csv");
    out << "t_sec";
    for (const auto& e : entries) {
      char buf[48];
      std::snprintf(buf, sizeof buf, ",exited_minus_base_lanes_%g", e.lanes);
      out << buf;
    }
    out << "\n";
    for (std::size_t i = 0; i < base.series.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", base.series[i].t_s);
      out << buf;
      for (const auto& e : entries) {
        const double diff = i < e.series.size()
                                ? e.series[i].exited - base.series[i].exited
                                : 0.0;
        std::snprintf(buf, sizeof buf, ",%.10g", diff);
        out << buf;
      }
      out << "\n";
    }
  }
  return entries;
}

} // namespace evac
