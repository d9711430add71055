#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evac/engine.hpp"
#include "evac/network.hpp"

namespace evac {

struct SbcdConfig {
  int n_iter = 100;        // outer iterations
  int sample_size = 10;    // coordinates sampled per iteration (clamped to P)
  double control_c = 0.5;  // sufficient-decrease factor
  double decay_f = 0.5;    // step shrink factor
  double tau_init = 1.0;   // initial step size
  int n_decay = 10;        // maximum shrink count per iteration
  double fd_epsilon = 1e-3;
  double eps_tol = 0.01;   // feasibility margin from {0, 1}
  std::uint64_t rng_seed = 0;
};

/// Distance of the parameter vector from the tolerated box
/// [eps_tol, 1 - eps_tol]; zero when feasible. Entries must include the
/// implied last matrix row of every column so simplex violations register.
double boundary_excess(std::span<const double> entries, double eps_tol);

struct SbcdTraceRow {
  int iter;
  std::vector<int> sampled;
  double p_norm;
  double tau;
  bool accepted;
  double loss;
};

struct SbcdResult {
  std::vector<double> alpha;
  double loss = 0.0;
  std::vector<SbcdTraceRow> trace;
};

using LossFn = std::function<double(std::span<const double>)>;

/// Stochastic block coordinate descent with Armijo-Goldstein backtracking.
/// Per iteration: sample `sample_size` coordinates without replacement, build
/// a forward-difference descent direction on those coordinates, then shrink
/// tau from tau_init until the sufficient-decrease condition
///   L(a + tau p/|p|) <= L(a) - tau c |p|
/// holds, applying the step only when it does. Deterministic given the seed.
SbcdResult sbcd(const LossFn& loss, std::vector<double> alpha0,
                const SbcdConfig& cfg);

void export_trace(const std::vector<SbcdTraceRow>& trace,
                  const std::string& path);

/// Loss of one simulation started from the current state of `net`:
/// the negative weighted time-integrated cars over the horizon, with time
/// measured in seconds. The network is copied; the live state is untouched.
double simulated_loss(const Network& net, const PreferenceLayout& layout,
                      std::span<const double> alpha, double horizon_s,
                      const EngineConfig& engine_cfg);

/// Simulation-backed mollified loss: the boundary-excess penalty
/// 100 * min(excess, 1) * horizon replaces the loss outside the tolerated
/// box, so infeasible parameters never reach the engine.
LossFn make_mollified_loss(const Network& net, const PreferenceLayout& layout,
                           double horizon_s, const EngineConfig& engine_cfg,
                           double eps_tol);

} // namespace evac
