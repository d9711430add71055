#include "evac/junction_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "evac/flux.hpp"

namespace evac {

CapacityRatio capacity_ratio(const JunctionProblem& p) {
  const std::size_t n = p.c_in.size();
  const std::size_t m = p.c_out.size();
  CapacityRatio r;
  r.per_row.resize(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double routed = 0.0;
    for (std::size_t i = 0; i < n; ++i) routed += p.dist[j][i] * p.c_in[i];
    if (p.c_out[j] > 0.0) {
      r.per_row[j] = routed / p.c_out[j];
    } else {
      r.per_row[j] = routed > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    r.max = std::max(r.max, r.per_row[j]);
  }
  return r;
}

void resolve_into(const std::vector<double>& c_in,
                  const std::vector<double>& c_out,
                  const std::vector<std::vector<double>>& dist,
                  JunctionSolution& s) {
  const std::size_t n = c_in.size();
  const std::size_t m = c_out.size();
  if (n == 0 || m == 0)
    throw ValidationError("junction: needs at least one incoming and outgoing road");
  double in_total = 0.0, out_total = 0.0;
  for (double c : c_in) {
    if (c < 0.0) throw ValidationError("junction: negative incoming capacity");
    in_total += c;
  }
  for (double c : c_out) {
    if (c < 0.0) throw ValidationError("junction: negative outgoing capacity");
    out_total += c;
  }

  s.gamma_in.resize(n);
  s.gamma_out.resize(m);

  if (out_total <= 0.0) {
    // All outgoing roads closed or jammed: nothing passes.
    std::fill(s.gamma_in.begin(), s.gamma_in.end(), 0.0);
    std::fill(s.gamma_out.begin(), s.gamma_out.end(), 0.0);
    s.regime = JunctionRegime::InScaled;
    s.lambda = 1.0;
    s.mu = 0.0;
    return;
  }

  // Load ratio of the most burdened outgoing road.
  double r_max = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double routed = 0.0;
    for (std::size_t i = 0; i < n; ++i) routed += dist[j][i] * c_in[i];
    const double r = c_out[j] > 0.0
                         ? routed / c_out[j]
                         : (routed > 0.0
                                ? std::numeric_limits<double>::infinity()
                                : 0.0);
    r_max = std::max(r_max, r);
  }

  if (r_max <= 1.0) {
    s.regime = JunctionRegime::Preferences;
    s.gamma_in = c_in;
    for (std::size_t j = 0; j < m; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) g += dist[j][i] * c_in[i];
      s.gamma_out[j] = g;
    }
    s.lambda = 1.0;
    s.mu = 1.0;
    return;
  }

  if (in_total <= out_total) {
    // Incoming roads pass at capacity; outgoing fluxes shrink to balance.
    s.regime = JunctionRegime::OutScaled;
    const double scale = in_total / out_total;
    s.gamma_in = c_in;
    for (std::size_t j = 0; j < m; ++j) s.gamma_out[j] = scale * c_out[j];
    s.lambda = 1.0;
    s.mu = scale;
    return;
  }

  // Outgoing side is the bottleneck; incoming fluxes shrink to balance.
  s.regime = JunctionRegime::InScaled;
  const double scale = out_total / in_total;
  for (std::size_t i = 0; i < n; ++i) s.gamma_in[i] = scale * c_in[i];
  s.gamma_out = c_out;
  s.lambda = scale;
  s.mu = 1.0;
}

JunctionSolution resolve(const JunctionProblem& p) {
  JunctionSolution s;
  resolve_into(p.c_in, p.c_out, p.dist, s);
  return s;
}

} // namespace evac
