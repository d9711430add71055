#include "evac/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evac/junction_solver.hpp"

namespace evac {

double riemann_flux(const NormalizedFlux& flux, double rho_l, double rho_r) {
  if (rho_l <= rho_r) {
    // Minimum of a concave function over an interval sits at an endpoint.
    // This reproduces the upstream/downstream selection including the
    // Rankine-Hugoniot sign rule for states straddling the critical density.
    return std::min(flux.eval(rho_l), flux.eval(rho_r));
  }
  const double ns = flux.critical_density();
  if (rho_l <= ns) return flux.eval(rho_l);  // both free: carry the left state
  if (rho_r >= ns) return flux.eval(rho_r);  // both congested: right state
  return flux.capacity();                    // transonic rarefaction
}

Engine::Engine(Network& net, EngineConfig cfg, bool prepare_state)
    : net_(net), cfg_(cfg) {
  double dt = std::numeric_limits<double>::infinity();
  face_flux_.resize(net_.roads.size());
  cell_flux_.resize(net_.roads.size());
  for (std::size_t r = 0; r < net_.roads.size(); ++r) {
    const Road& road = net_.roads[r];
    if (road.cells <= 0)
      throw ValidationError("engine: road " + road.id + " not discretized");
    dt = std::min(dt, road.dx / road.flux.max_wave_speed());
    face_flux_[r].assign(road.cells + 1, 0.0);
    cell_flux_[r].assign(road.cells + 2, 0.0);
  }
  cfl_dt_ = cfg_.cfl_nu * dt;
  left_flux_.assign(net_.roads.size(), 0.0);
  right_flux_.assign(net_.roads.size(), 0.0);
  jn_cin_.resize(net_.junctions.size());
  jn_cout_.resize(net_.junctions.size());
  jn_sol_.resize(net_.junctions.size());
  for (std::size_t j = 0; j < net_.junctions.size(); ++j) {
    jn_cin_[j].resize(net_.junctions[j].in.size());
    jn_cout_[j].resize(net_.junctions[j].out.size());
  }
  if (prepare_state) prepare();
}

void Engine::prepare() {
  apply_open_boundaries();
  resolve_junctions(cfl_dt_);
}

void Engine::apply_open_boundaries() {
  for (Road& road : net_.roads) {
    const int M = road.cells;
    if (road.left.kind == Attachment::Kind::Boundary) {
      const BoundarySpec& b = road.left.boundary;
      // Prescribed data only when the characteristic at the first interior
      // cell points into the domain; otherwise absorb.
      if (b.type == BoundarySpec::Type::Prescribed &&
          road.flux.derivative(road.rho[1]) >= 0.0) {
        road.rho[0] = b.density;
      } else {
        road.rho[0] = road.rho[1];
      }
    }
    if (road.right.kind == Attachment::Kind::Boundary) {
      const BoundarySpec& b = road.right.boundary;
      if (b.type == BoundarySpec::Type::Prescribed &&
          road.flux.derivative(road.rho[M]) <= 0.0) {
        road.rho[M + 1] = b.density;
      } else {
        road.rho[M + 1] = road.rho[M];
      }
    }
  }
}

void Engine::resolve_junctions(double dt_hr) {
  for (std::size_t k = 0; k < net_.junctions.size(); ++k) {
    Junction& jn = net_.junctions[k];
    std::vector<double>& c_in = jn_cin_[k];
    std::vector<double>& c_out = jn_cout_[k];
    for (std::size_t i = 0; i < jn.in.size(); ++i) {
      const Road& r = net_.roads[jn.in[i]];
      c_in[i] = r.flux.demand(r.rho[r.cells], dt_hr);
    }
    for (std::size_t j = 0; j < jn.out.size(); ++j) {
      const Road& r = net_.roads[jn.out[j]];
      c_out[j] = r.flux.supply(r.rho[1], dt_hr);
    }
    JunctionSolution& s = jn_sol_[k];
    resolve_into(c_in, c_out, jn.dist, s);
    jn.gamma_in.assign(s.gamma_in.begin(), s.gamma_in.end());
    jn.gamma_out.assign(s.gamma_out.begin(), s.gamma_out.end());
    // Ghost densities feed only the wave-speed checks; the stored fluxes are
    // reused directly as boundary interface fluxes next step.
    for (std::size_t i = 0; i < jn.in.size(); ++i) {
      Road& r = net_.roads[jn.in[i]];
      r.rho[r.cells + 1] = r.flux.inverse(s.gamma_in[i], FluxBranch::Free);
    }
    for (std::size_t j = 0; j < jn.out.size(); ++j) {
      Road& r = net_.roads[jn.out[j]];
      r.rho[0] = r.flux.inverse(s.gamma_out[j], FluxBranch::Congested);
    }
  }
}

void Engine::step(double dt_hr) {
  if (dt_hr <= 0.0) return;
  if (dt_hr > cfl_dt_ * (1.0 + 1e-12))
    throw NumericalError("engine: step size violates the CFL bound");

  // Interface fluxes, with junction ends overridden by stored fluxes. The
  // diagram is evaluated once per cell with the road's constants hoisted.
  for (std::size_t ri = 0; ri < net_.roads.size(); ++ri) {
    Road& road = net_.roads[ri];
    const int M = road.cells;
    const double vf = road.flux.free_flow_speed();
    const double ns = road.flux.critical_density();
    const double cap = road.flux.capacity();
    const double aon = road.flux.quad_coeff_norm() / road.flux.lanes();
    std::vector<double>& fv = cell_flux_[ri];
    const double* rho = road.rho.data();
    for (int m = 0; m <= M + 1; ++m) {
      const double r = rho[m];
      const double d = r - ns;
      fv[m] = r <= ns ? vf * r : aon * d * d + cap;
    }
    std::vector<double>& F = face_flux_[ri];
    for (int m = 0; m <= M; ++m) {
      const double rl = rho[m], rr = rho[m + 1];
      if (rl <= rr)
        F[m] = std::min(fv[m], fv[m + 1]);
      else if (rl <= ns)
        F[m] = fv[m];
      else if (rr >= ns)
        F[m] = fv[m + 1];
      else
        F[m] = cap;
    }
    if (road.left.kind == Attachment::Kind::Junction) {
      const Junction& jn = net_.junctions[road.left.junction];
      for (std::size_t j = 0; j < jn.out.size(); ++j)
        if (jn.out[j] == static_cast<int>(ri)) F[0] = jn.gamma_out[j];
    }
    if (road.right.kind == Attachment::Kind::Junction) {
      const Junction& jn = net_.junctions[road.right.junction];
      for (std::size_t i = 0; i < jn.in.size(); ++i)
        if (jn.in[i] == static_cast<int>(ri)) F[M] = jn.gamma_in[i];
    }
    left_flux_[ri] = F[0];
    right_flux_[ri] = F[M];
  }

  // Conservative interior update and admissibility check.
  for (std::size_t ri = 0; ri < net_.roads.size(); ++ri) {
    Road& road = net_.roads[ri];
    const int M = road.cells;
    const std::vector<double>& F = face_flux_[ri];
    const double lam = dt_hr / road.dx;
    const double rho_max = road.flux.rho_max();
    for (int m = 1; m <= M; ++m) {
      double v = road.rho[m] - lam * (F[m] - F[m - 1]);
      if (v < -cfg_.blowup_tol || v > rho_max + cfg_.blowup_tol)
        throw NumericalError("engine: density " + std::to_string(v) +
                             " out of range on road " + road.id);
      road.rho[m] = std::clamp(v, 0.0, rho_max);
    }
  }

  apply_open_boundaries();
  resolve_junctions(dt_hr);
  t_hr_ += dt_hr;
}

void Engine::advance_to(double t_target_hr,
                        const std::function<void(double)>& on_step) {
  while (t_hr_ < t_target_hr - 1e-15) {
    const double dt = std::min(cfl_dt_, t_target_hr - t_hr_);
    step(dt);
    if (on_step) on_step(dt);
  }
}

} // namespace evac
