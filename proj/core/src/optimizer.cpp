#include "evac/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>

namespace evac {

double boundary_excess(std::span<const double> entries, double eps_tol) {
  if (entries.empty()) return 0.0;
  double hi = entries[0], lo = entries[0];
  for (double v : entries) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return std::max({0.0, hi - (1.0 - eps_tol), eps_tol - lo});
}

SbcdResult sbcd(const LossFn& loss, std::vector<double> alpha0,
                const SbcdConfig& cfg) {
  const int P = static_cast<int>(alpha0.size());
  if (P == 0) {
    SbcdResult r;
    r.alpha = std::move(alpha0);
    r.loss = loss(r.alpha);
    return r;
  }
  const int s = std::min(cfg.sample_size, P);
  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<int> all(P);
  std::iota(all.begin(), all.end(), 0);

  SbcdResult res;
  res.alpha = std::move(alpha0);
  double base = loss(res.alpha);

  std::vector<int> sampled(s);
  std::vector<double> p(P, 0.0), trial(P);
  for (int iter = 1; iter <= cfg.n_iter; ++iter) {
    std::sample(all.begin(), all.end(), sampled.begin(), s, rng);

    std::fill(p.begin(), p.end(), 0.0);
    for (int idx : sampled) {
      // Forward difference with a relative perturbation, floored so a zero
      // coordinate still moves.
      const double h =
          cfg.fd_epsilon * std::max(std::abs(res.alpha[idx]), cfg.fd_epsilon);
      trial = res.alpha;
      trial[idx] += h;
      p[idx] = -(loss(trial) - base) / cfg.fd_epsilon;
    }
    double p_norm = 0.0;
    for (int idx : sampled) p_norm += p[idx] * p[idx];
    p_norm = std::sqrt(p_norm);

    SbcdTraceRow row;
    row.iter = iter;
    row.sampled = sampled;
    row.p_norm = p_norm;
    row.tau = 0.0;
    row.accepted = false;
    row.loss = base;
    if (p_norm == 0.0) {
      res.trace.push_back(std::move(row));
      continue;
    }

    double tau = cfg.tau_init;
    int decays = 0;
    double trial_loss = 0.0;
    auto eval_at = [&](double step) {
      trial = res.alpha;
      for (int idx : sampled) trial[idx] += step * p[idx] / p_norm;
      return loss(trial);
    };
    trial_loss = eval_at(tau);
    while (trial_loss > base - cfg.control_c * tau * p_norm &&
           decays < cfg.n_decay) {
      tau *= cfg.decay_f;
      ++decays;
      trial_loss = eval_at(tau);
    }
    row.tau = tau;
    if (decays < cfg.n_decay) {
      for (int idx : sampled) res.alpha[idx] += tau * p[idx] / p_norm;
      base = trial_loss;
      row.accepted = true;
      row.loss = base;
    }
    res.trace.push_back(std::move(row));
  }
  res.loss = base;
  return res;
}

void export_trace(const std::vector<SbcdTraceRow>& trace,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("optimizer: cannot write " + path);
  out << "iter,sampled,p_norm,tau,accepted,loss\n";
  char buf[128];
  for (const SbcdTraceRow& row : trace) {
    out << row.iter << ',';
    for (std::size_t k = 0; k < row.sampled.size(); ++k)
      out << (k ? ";" : "") << row.sampled[k];
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g,%d,%.10g\n", row.p_norm,
                  row.tau, row.accepted ? 1 : 0, row.loss);
    out << buf;
  }
}

namespace {

/// Reusable simulation state for repeated loss evaluations: one structural
/// copy of the network plus a bound engine, refreshed from the live state
/// before every run. One scratch per loss function; evaluations through a
/// given loss function are serial.
struct LossScratch {
  explicit LossScratch(const Network& base, const EngineConfig& cfg)
      : net(base), engine(net, cfg, /*prepare_state=*/false) {}
  Network net;
  Engine engine;
};

double run_weighted_loss(LossScratch& scratch, const Network& live,
                         const PreferenceLayout& layout,
                         std::span<const double> alpha, double horizon_s) {
  scratch.net.copy_state_from(live);
  apply_preferences(scratch.net, layout, alpha);
  scratch.engine.set_time_hr(0.0);
  double weighted_s = 0.0;
  scratch.engine.advance_to(horizon_s / 3600.0, [&](double dt_hr) {
    double m = 0.0;
    for (const Road& r : scratch.net.roads) m += r.weight * r.mass_norm();
    weighted_s += m * dt_hr * 3600.0;
  });
  return -weighted_s;
}

}  // namespace

double simulated_loss(const Network& net, const PreferenceLayout& layout,
                      std::span<const double> alpha, double horizon_s,
                      const EngineConfig& engine_cfg) {
  LossScratch scratch(net, engine_cfg);
  return run_weighted_loss(scratch, net, layout, alpha, horizon_s);
}

LossFn make_mollified_loss(const Network& net, const PreferenceLayout& layout,
                           double horizon_s, const EngineConfig& engine_cfg,
                           double eps_tol) {
  auto scratch = std::make_shared<LossScratch>(net, engine_cfg);
  return [&net, layout, horizon_s, eps_tol,
          scratch](std::span<const double> alpha) -> double {
    const std::vector<double> entries = full_matrix_entries(net, layout, alpha);
    const double excess = boundary_excess(entries, eps_tol);
    if (excess > 0.0) return 100.0 * std::min(excess, 1.0) * horizon_s;
    return run_weighted_loss(*scratch, net, layout, alpha, horizon_s);
  };
}

} // namespace evac
