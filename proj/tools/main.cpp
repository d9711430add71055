#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evac/calibration.hpp"
#include "evac/engine.hpp"
#include "evac/json_io.hpp"
#include "evac/lahaina.hpp"
#include "evac/metrics.hpp"
#include "evac/scenario.hpp"
#include "evac/toy.hpp"

#ifdef EVACFLOW_HAVE_ACCEPTANCE
#include "acceptance.hpp"
#endif

namespace {

struct CommonFlags {
  double gamma1 = -1.0, gamma2 = -1.0, cfl = -1.0, dx = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--gamma1", f.gamma1, "Override default/western source density");
  cmd->add_option("--gamma2", f.gamma2, "Override eastern source density");
  cmd->add_option("--cfl", f.cfl, "Override the CFL number");
  cmd->add_option("--dx", f.dx, "Override the target cell size (mi)");
}

evac::ScenarioConfig load_with_overrides(const std::string& path,
                                         const CommonFlags& f) {
  evac::ScenarioConfig cfg = evac::load_scenario(path);
  if (f.cfl > 0.0) cfg.cfl_nu = f.cfl;
  if (f.dx > 0.0) cfg.dx_target_mi = f.dx;
  for (auto& ph : cfg.phases) {
    if (f.gamma1 >= 0.0) ph.gamma1 = f.gamma1;
    if (f.gamma2 >= 0.0) ph.gamma2 = f.gamma2;
    if (ph.gamma2 < ph.gamma1) ph.gamma2 = ph.gamma1;
  }
  return cfg;
}

void print_result(const evac::ScenarioResult& res) {
  std::printf("%-10s %14s %14s %14s %12s\n", "phase", "weighted", "entered",
              "exited", "discarded");
  for (const auto& ph : res.phases) {
    std::printf("%-10s %14.2f %14.2f %14.2f %12.2f\n", ph.name.c_str(),
                ph.weighted_time_integrated, ph.cars_entered, ph.cars_exited,
                ph.discarded_vehicles);
    if (ph.flooded_at_s >= 0.0)
      std::printf("           (all non-exit roads at LOS E after %.0f s)\n",
                  ph.flooded_at_s);
  }
  std::printf("%-10s %14.2f %14.2f %14.2f %12.2f\n", "total",
              res.weighted_time_integrated, res.cars_entered, res.cars_exited,
              res.discarded_vehicles);
}

int run_toy(const std::string& experiment, double n5, double alpha,
            double rho_init, double rho_jam, double dx, double t_end_s) {
  evac::ToyParams p;
  p.exit_lanes = n5;
  p.alpha = alpha;
  p.rho_init = rho_init;
  p.rho_jam = rho_jam;
  evac::ToyExperiment exp;
  if (experiment == "A") exp = evac::ToyExperiment::A;
  else if (experiment == "B") exp = evac::ToyExperiment::B;
  else if (experiment == "C") exp = evac::ToyExperiment::C;
  else if (experiment == "D") exp = evac::ToyExperiment::D;
  else throw evac::ValidationError("toy: experiment must be one of A, B, C, D");
  if (experiment == "A" && rho_init >= 0.9) p.rho_init = 0.1;
  if (experiment == "C" && rho_init >= 0.9) p.rho_init = 0.1;

  const double T_hr = t_end_s / 3600.0;
  std::printf("exit-lane threshold n5* = %.4f\n", evac::n5_star(p));

  evac::Network net = evac::build_toy_network(p, exp);
  net.discretize(dx);
  evac::assign_weights(net);
  evac::Engine engine(net);
  evac::MetricsAccumulator metrics;
  engine.advance_to(T_hr, [&](double dt) { metrics.accumulate(engine, dt); });

  try {
    const double closed = evac::cars_exited_closed_form(p, exp, T_hr);
    std::printf("cars exited, closed form: %10.2f\n", closed);
  } catch (const evac::ValidationError& e) {
    std::printf("cars exited, closed form:        n/a (%s)\n", e.what());
  }
  std::printf("cars exited, simulated:   %10.2f\n", metrics.cars_exited());
  std::printf("weighted time-integrated: %10.2f\n",
              metrics.weighted_time_integrated());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macroscopic evacuation traffic simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  int snapshots = 0;

  CommonFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Run a scenario");
  sim->add_option("scenario", scenario_path, "Scenario JSON")->required();
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_option("--snapshots", snapshots, "Heatmap export period in steps");
  add_common_flags(sim, sim_flags);

  CommonFlags opt_flags;
  double nt_opt = -1.0;
  std::uint64_t seed = 0;
  int repeats = 1;
  auto* opt = app.add_subcommand("optimize",
                                 "Run a scenario with preference optimization");
  opt->add_option("scenario", scenario_path, "Scenario JSON")->required();
  opt->add_option("--nt-opt", nt_opt, "Optimization window (s)")->required();
  opt->add_option("--seed", seed, "Random seed");
  opt->add_option("--repeats", repeats, "Seeds to average");
  opt->add_option("--out", out_dir, "Output directory");
  add_common_flags(opt, opt_flags);

  CommonFlags sweep_flags;
  std::vector<double> lanes{2, 3, 4};
  auto* sweep = app.add_subcommand("sweep-lanes",
                                   "Compare exit-lane counts on a scenario");
  sweep->add_option("scenario", scenario_path, "Scenario JSON")->required();
  sweep->add_option("--lanes", lanes, "Lane counts; first is the baseline")
      ->delimiter(',');
  sweep->add_option("--out", out_dir, "Output directory");
  add_common_flags(sweep, sweep_flags);

  std::string experiment;
  double n5 = 1.0, alpha = 0.5, rho_init = 0.9, rho_jam = 100.0;
  double toy_dx = 0.005, toy_t = 1000.0;
  auto* toy = app.add_subcommand("toy",
                                 "Closed form vs simulation on the toy network");
  toy->add_option("--experiment", experiment, "A, B, C or D")->required();
  toy->add_option("--n5", n5, "Exit lane count");
  toy->add_option("--alpha", alpha, "Preference toward the residential route");
  toy->add_option("--rho-init", rho_init, "Initial density");
  toy->add_option("--rho-jam", rho_jam, "Jam density (veh/mi/lane)");
  toy->add_option("--dx", toy_dx, "Cell size (mi)");
  toy->add_option("--t", toy_t, "Horizon (s)");

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");

  std::string export_dir = "data/networks";
  auto* exp_net = app.add_subcommand("export-networks",
                                     "Write the bundled network documents");
  exp_net->add_option("--out", export_dir, "Target directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      evac::ScenarioConfig cfg = load_with_overrides(scenario_path, sim_flags);
      evac::RunOptions opts;
      opts.out_dir = out_dir;
      opts.snapshot_every = snapshots;
      print_result(evac::run_scenario(cfg, opts));
      return 0;
    }
    if (opt->parsed()) {
      evac::ScenarioConfig cfg = load_with_overrides(scenario_path, opt_flags);
      cfg.seed = seed;
      cfg.sbcd.rng_seed = seed;
      for (auto& ph : cfg.phases) ph.nt_opt_s = nt_opt;
      evac::RunOptions opts;
      opts.out_dir = out_dir;
      opts.repeats = repeats;
      print_result(evac::run_scenario(cfg, opts));
      return 0;
    }
    if (sweep->parsed()) {
      evac::ScenarioConfig cfg = load_with_overrides(scenario_path, sweep_flags);
      evac::RunOptions opts;
      opts.out_dir = out_dir;
      const auto entries = evac::lane_reversal_experiment(cfg, lanes, opts);
      std::printf("%8s %14s %14s\n", "lanes", "cars exited", "advantage");
      for (const auto& e : entries)
        std::printf("%8.2f %14.2f %14.2f\n", e.lanes, e.cars_exited_final,
                    e.advantage_final);
      return 0;
    }
    if (toy->parsed())
      return run_toy(experiment, n5, alpha, rho_init, rho_jam, toy_dx, toy_t);
    if (verify->parsed()) {
#ifdef EVACFLOW_HAVE_ACCEPTANCE
      return evac::accept::run_all_and_report() ? 0 : 1;
#else
      std::fprintf(stderr, "verify: built without the acceptance suite\n");
      return 1;
#endif
    }
    if (exp_net->parsed()) {
      evac::export_lahaina_networks(export_dir);
      std::printf("wrote 8 network documents to %s\n", export_dir.c_str());
      return 0;
    }
  } catch (const evac::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const evac::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
