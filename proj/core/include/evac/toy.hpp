#pragma once

#include "evac/network.hpp"

namespace evac {

/// Bottleneck network: an entry road feeding, through a preference split, a
/// slow two-segment residential route and a faster highway route that merge
/// into a single exit road with a variable lane count.
struct ToyParams {
  double len_entry = 0.5;   // mi
  double len_route = 1.0;   // combined residential length, equals the highway
  double len_exit = 0.5;    // mi
  double v_entry = 25.0;    // mph, also the exit speed
  double v_res = 15.0;      // mph on both residential segments
  double v_hwy = 20.0;      // mph
  double fc_entry = 500.0;  // veh/hr/lane
  double fc_res = 400.0;
  double fc_hwy = 500.0;
  double exit_lanes = 1.0;  // positive real
  double alpha = 0.5;       // preference toward the residential route
  double rho_init = 0.9;    // normalized
  double rho_jam = 100.0;   // veh/mi/lane

  // Normalized per-lane quantities.
  double fcn_entry() const { return fc_entry / rho_jam; }
  double fcn_res() const { return fc_res / rho_jam; }
  double fcn_hwy() const { return fc_hwy / rho_jam; }
  double sigma_entry() const { return fcn_entry() / v_entry; }
  double sigma_res() const { return fcn_res() / v_res; }
  double sigma_hwy() const { return fcn_hwy() / v_hwy; }
  double quad_entry() const;
  double quad_res() const;
  double quad_hwy() const;
};

enum class ToyExperiment { A, B, C, D };

/// Roads of the analytic description; Residential is the extended road
/// combining both residential segments.
enum class ToyRoad { Entry, Residential, Highway, Exit };

/// Builds the five-road simulation network with initial data for the given
/// experiment (road ids: entry, res_a, res_b, highway, exit).
Network build_toy_network(const ToyParams& p, ToyExperiment exp);

/// Exit lane count at which the bottleneck stops binding.
double n5_star(const ToyParams& p);

/// Vehicles through the exit by time T (hours); exact under the experiment's
/// assumptions, which are checked and reported by name when violated.
double cars_exited_closed_form(const ToyParams& p, ToyExperiment exp,
                               double T_hr);

/// Exact density at (t, x) for experiments A and B.
double density_profile(const ToyParams& p, ToyExperiment exp, ToyRoad road,
                       double t_hr, double x_mi);

/// Exact weighted time-integrated cars for experiments A and B, with the
/// residential route split at midlength for its two weights. Time in seconds.
double weighted_cars_closed_form(const ToyParams& p, ToyExperiment exp,
                                 double T_hr);

struct RarefactionDiagnostics {
  double rho_res;      // junction-side density on the residential route
  double rho_hwy;      // junction-side density on the highway route
  bool res_rarefaction;
  bool hwy_rarefaction;
};

/// Junction states behind the exit merge in the congested experiment and the
/// classification of the backward waves.
RarefactionDiagnostics rarefaction_diagnostics(const ToyParams& p, double n5);

} // namespace evac
