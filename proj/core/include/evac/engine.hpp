#pragma once

#include <functional>
#include <vector>

#include "evac/junction_solver.hpp"
#include "evac/network.hpp"

namespace evac {

struct EngineConfig {
  double cfl_nu = 0.5;      // CFL number
  double blowup_tol = 1e-9; // admissible density overshoot before hard error
};

/// Exact Riemann interface flux for the piecewise linear-quadratic diagram:
/// min of f over [rho_l, rho_r] when rho_l <= rho_r (shock / contact side),
/// max of f over [rho_r, rho_l] otherwise (rarefaction side).
double riemann_flux(const NormalizedFlux& flux, double rho_l, double rho_r);

/// Explicit first-order network solver. Each step computes Godunov fluxes on
/// road interiors with junction-end boundary fluxes replaced by the fluxes
/// stored at the previous junction resolution, updates interior cells,
/// applies open boundary conditions with the wave-speed causality check, and
/// finally resolves every junction from CTM-restricted capacities, storing
/// fluxes and ghost densities for the next step.
class Engine {
public:
  /// With prepare_state = false the stored junction fluxes and ghost cells
  /// are kept as found, so a copied mid-run state continues seamlessly.
  explicit Engine(Network& net, EngineConfig cfg = {},
                  bool prepare_state = true);

  /// Global time step from the CFL bound over all roads, in hours.
  double cfl_dt() const { return cfl_dt_; }
  double time_hr() const { return t_hr_; }
  void set_time_hr(double t) { t_hr_ = t; }

  /// Initial junction resolution and ghost fill; called by the constructor
  /// and again after external edits to the density state.
  void prepare();

  void step(double dt_hr);

  /// Steps until t_target (hours), clamping the last step to land exactly.
  /// The callback, when given, runs after every step with the step size.
  void advance_to(double t_target_hr,
                  const std::function<void(double dt_hr)>& on_step = nullptr);

  /// Boundary interface fluxes used by the latest step, one per road.
  const std::vector<double>& left_boundary_flux() const { return left_flux_; }
  const std::vector<double>& right_boundary_flux() const { return right_flux_; }

  Network& network() { return net_; }
  const Network& network() const { return net_; }

private:
  void apply_open_boundaries();
  void resolve_junctions(double dt_hr);

  Network& net_;
  EngineConfig cfg_;
  double t_hr_ = 0.0;
  double cfl_dt_ = 0.0;
  std::vector<std::vector<double>> face_flux_;
  std::vector<std::vector<double>> cell_flux_;
  std::vector<double> left_flux_, right_flux_;
  // Per-junction scratch buffers for the allocation-free resolution path.
  std::vector<std::vector<double>> jn_cin_, jn_cout_;
  std::vector<JunctionSolution> jn_sol_;
};

} // namespace evac
