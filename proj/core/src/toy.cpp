#include "evac/toy.hpp"

#include <algorithm>
#include <cmath>

namespace evac {

namespace {

double pos(double s) { return std::max(0.0, s); }

/// Integral over [0, T] of clamp(speed * (t - t0), 0, cap).
double ramp_integral(double T, double t0, double speed, double cap) {
  const double t_full = t0 + cap / speed;
  const double rise = pos(std::min(T, t_full) - t0);
  return 0.5 * speed * rise * rise + cap * pos(T - t_full);
}

void require(bool cond, const std::string& inequality) {
  if (!cond)
    throw ValidationError("toy experiment assumption violated: " + inequality);
}

}  // namespace

double ToyParams::quad_entry() const {
  const double s = sigma_entry();
  return -fcn_entry() / ((1.0 - s) * (1.0 - s));
}
double ToyParams::quad_res() const {
  const double s = sigma_res();
  return -fcn_res() / ((1.0 - s) * (1.0 - s));
}
double ToyParams::quad_hwy() const {
  const double s = sigma_hwy();
  return -fcn_hwy() / ((1.0 - s) * (1.0 - s));
}

Network build_toy_network(const ToyParams& p, ToyExperiment exp) {
  const bool all_roads =
      exp == ToyExperiment::C || exp == ToyExperiment::D;

  Network net;
  auto road = [&](const std::string& id, double len, double v, double fc,
                  double lanes, double init) {
    Road r;
    r.id = id;
    r.length = len;
    r.flux = build_flux(v, fc, p.rho_jam, lanes);
    r.init_density = init;
    net.add_road(std::move(r));
  };
  const double interior_init = all_roads ? p.rho_init : 0.0;
  road("entry", p.len_entry, p.v_entry, p.fc_entry, 1.0, p.rho_init);
  road("res_a", 0.5 * p.len_route, p.v_res, p.fc_res, 1.0, interior_init);
  road("res_b", 0.5 * p.len_route, p.v_res, p.fc_res, 1.0, interior_init);
  road("highway", p.len_route, p.v_hwy, p.fc_hwy, 1.0, interior_init);
  road("exit", p.len_exit, p.v_entry, p.fc_entry, p.exit_lanes, 0.0);

  net.add_junction("split");
  net.add_junction("mid");
  net.add_junction("merge");
  net.connect("split", {"entry"}, {"res_a", "highway"});
  net.connect("mid", {"res_a"}, {"res_b"});
  net.connect("merge", {"res_b", "highway"}, {"exit"});
  net.junctions[net.junction_index("split")].dist = {{p.alpha},
                                                     {1.0 - p.alpha}};

  Road& entry = net.road("entry");
  entry.is_source = true;
  entry.left = Attachment::open(
      {BoundarySpec::Type::Prescribed, p.rho_init});
  Road& exit = net.road("exit");
  exit.is_exit = true;
  exit.right = Attachment::open();
  return net;
}

double n5_star(const ToyParams& p) {
  if (p.fc_entry <= 0.0)
    throw ValidationError("n5_star: entry capacity must be positive");
  return (p.fc_res + p.fc_hwy) / p.fc_entry;
}

namespace {

struct ToyFluxes {
  double f1, f2, f4;  // normalized flux of the initial state on each road
};

ToyFluxes initial_fluxes(const ToyParams& p) {
  // All experiments start either fully free or fully congested, so both
  // branches are handled explicitly where needed; here the free branch.
  return {p.v_entry * p.rho_init, p.v_res * p.rho_init, p.v_hwy * p.rho_init};
}

void check_assumptions(const ToyParams& p, ToyExperiment exp) {
  switch (exp) {
    case ToyExperiment::A: {
      require(p.rho_init < p.sigma_entry(), "rho_init < sigma_entry");
      const double f1 = p.v_entry * p.rho_init;
      require(f1 < p.fcn_res(), "f_entry(rho_init) < f_c_res");
      require(f1 < p.fcn_hwy(), "f_entry(rho_init) < f_c_hwy");
      break;
    }
    case ToyExperiment::B: {
      require(p.rho_init > p.sigma_entry() && p.rho_init < 1.0,
              "sigma_entry < rho_init < 1");
      require(p.alpha * p.fcn_entry() < p.fcn_res(),
              "alpha * f_c_entry < f_c_res");
      require((1.0 - p.alpha) * p.fcn_entry() < p.fcn_hwy(),
              "(1 - alpha) * f_c_entry < f_c_hwy");
      break;
    }
    case ToyExperiment::C: {
      require(p.rho_init <
                  std::min({p.sigma_entry(), p.sigma_res(), p.sigma_hwy()}),
              "rho_init below every critical density");
      const ToyFluxes f = initial_fluxes(p);
      const double fc5 = p.exit_lanes * p.fcn_entry();
      const double worst = std::max(
          {f.f2 + f.f4, f.f2 + (1.0 - p.alpha) * f.f1, f.f1});
      require(worst < fc5, "peak merge inflow < f_c_exit");
      break;
    }
    case ToyExperiment::D: {
      require(p.rho_init >
                  std::max({p.sigma_entry(), p.sigma_res(), p.sigma_hwy()}),
              "rho_init above every critical density");
      break;
    }
  }
}

}  // namespace

double cars_exited_closed_form(const ToyParams& p, ToyExperiment exp,
                               double T_hr) {
  check_assumptions(p, exp);
  const double T = T_hr;
  const double lag_exit = p.len_exit / p.v_entry;
  const double lag_hwy = p.len_route / p.v_hwy;
  const double lag_res = p.len_route / p.v_res;
  switch (exp) {
    case ToyExperiment::A: {
      const double f1 = p.v_entry * p.rho_init;
      return p.rho_jam * ((1.0 - p.alpha) * f1 * pos(T - lag_hwy - lag_exit) +
                          p.alpha * f1 * pos(T - lag_res - lag_exit));
    }
    case ToyExperiment::B: {
      const double f1 = p.fcn_entry();
      return p.rho_jam * ((1.0 - p.alpha) * f1 * pos(T - lag_hwy - lag_exit) +
                          p.alpha * f1 * pos(T - lag_res - lag_exit));
    }
    case ToyExperiment::C: {
      const ToyFluxes f = initial_fluxes(p);
      return p.rho_jam *
             ((f.f2 + f.f4) * pos(T - lag_exit) +
              ((1.0 - p.alpha) * f.f1 - f.f4) * pos(T - lag_exit - lag_hwy) +
              (p.alpha * f.f1 - f.f2) * pos(T - lag_exit - lag_res));
    }
    case ToyExperiment::D: {
      const double star = n5_star(p);
      const double ratio = std::min(1.0, p.exit_lanes / star);
      const double g2 = ratio * p.fcn_res();
      const double g4 = ratio * p.fcn_hwy();
      require(T <= std::min(p.rho_init * p.len_route / g2,
                            p.rho_init * p.len_route / g4),
              "T below the queue depletion time");
      const double throughput =
          std::min(p.exit_lanes * p.fcn_entry(), p.fcn_res() + p.fcn_hwy());
      return p.rho_jam * pos(T - lag_exit) * throughput;
    }
  }
  throw ValidationError("toy: unknown experiment");
}

double density_profile(const ToyParams& p, ToyExperiment exp, ToyRoad road,
                       double t_hr, double x_mi) {
  if (exp != ToyExperiment::A && exp != ToyExperiment::B)
    throw ValidationError(
        "toy: density profiles are available for experiments A and B only");
  check_assumptions(p, exp);
  const double t = t_hr;
  const bool congested_entry = exp == ToyExperiment::B;
  // Experiment B replaces the feeding state by the critical one.
  const double rho_feed = congested_entry ? p.sigma_entry() : p.rho_init;
  const double f1 = p.v_entry * rho_feed;

  switch (road) {
    case ToyRoad::Entry: {
      if (!congested_entry) return p.rho_init;
      // Backward fan from the split junction: the state rides down the
      // congested branch from rho_init to the critical density.
      const double a = p.quad_entry();
      const double edge_speed =
          2.0 * (-a) * (p.rho_init - p.sigma_entry());  // |f'(rho_init)|
      const double x_edge = pos(p.len_entry - edge_speed * t);
      if (x_mi <= x_edge || t <= 0.0) return p.rho_init;
      return p.sigma_entry() + (x_mi - p.len_entry) / (2.0 * a * t);
    }
    case ToyRoad::Residential: {
      const double front = std::min(p.v_res * t, p.len_route);
      return x_mi < front ? p.alpha * f1 / p.v_res : 0.0;
    }
    case ToyRoad::Highway: {
      const double front = std::min(p.v_hwy * t, p.len_route);
      return x_mi < front ? (1.0 - p.alpha) * f1 / p.v_hwy : 0.0;
    }
    case ToyRoad::Exit: {
      const double a = std::clamp(
          p.v_entry * (t - p.len_route / p.v_res), 0.0, p.len_exit);
      const double b = std::clamp(
          p.v_entry * (t - p.len_route / p.v_hwy), 0.0, p.len_exit);
      if (x_mi < a) return rho_feed;
      if (x_mi < b) return (1.0 - p.alpha) * rho_feed;
      return 0.0;
    }
  }
  throw ValidationError("toy: unknown road");
}

double weighted_cars_closed_form(const ToyParams& p, ToyExperiment exp,
                                 double T_hr) {
  if (exp != ToyExperiment::A && exp != ToyExperiment::B)
    throw ValidationError(
        "toy: weighted closed forms are available for experiments A and B only");
  check_assumptions(p, exp);
  const double T = T_hr;
  const double rho_feed =
      exp == ToyExperiment::B ? p.sigma_entry() : p.rho_init;
  const double f1 = p.v_entry * rho_feed;
  const double rho_res = p.alpha * f1 / p.v_res;
  const double rho_hwy = (1.0 - p.alpha) * f1 / p.v_hwy;
  const double half = 0.5 * p.len_route;
  const double t_half = half / p.v_res;

  // Entry road, weight 1/4.
  double w_entry;
  if (exp == ToyExperiment::A) {
    w_entry = 0.25 * p.rho_init * p.len_entry * T;
  } else {
    const double a = p.quad_entry();
    const double drop = p.rho_init - p.sigma_entry();
    const double edge_speed = 2.0 * (-a) * drop;
    const double t_star = p.len_entry / edge_speed;
    const double tm = std::min(T, t_star);
    double integral =
        p.rho_init * p.len_entry * tm - 0.25 * edge_speed * drop * tm * tm;
    if (T > t_star)
      integral += p.sigma_entry() * p.len_entry * (T - t_star) +
                  p.len_entry * p.len_entry / (4.0 * (-a)) *
                      std::log(T / t_star);
    w_entry = 0.25 * integral;
  }

  // Residential halves, weights 1/4 and 1/2; highway 1/2; exit 1.
  const double w_res_a =
      0.25 * rho_res * ramp_integral(T, 0.0, p.v_res, half);
  const double w_res_b =
      0.5 * rho_res * ramp_integral(T, t_half, p.v_res, half);
  const double w_hwy =
      0.5 * rho_hwy * ramp_integral(T, 0.0, p.v_hwy, p.len_route);
  const double w_exit =
      (1.0 - p.alpha) * rho_feed *
          ramp_integral(T, p.len_route / p.v_hwy, p.v_entry, p.len_exit) +
      p.alpha * rho_feed *
          ramp_integral(T, p.len_route / p.v_res, p.v_entry, p.len_exit);

  return 3600.0 * (w_entry + w_res_a + w_res_b + w_hwy + w_exit);
}

RarefactionDiagnostics rarefaction_diagnostics(const ToyParams& p, double n5) {
  ToyParams q = p;
  q.exit_lanes = n5;
  check_assumptions(q, ToyExperiment::D);
  const double star = n5_star(p);
  const double ratio = std::min(1.0, n5 / star);

  const NormalizedFlux res = build_flux(p.v_res, p.fc_res, p.rho_jam, 1.0);
  const NormalizedFlux hwy = build_flux(p.v_hwy, p.fc_hwy, p.rho_jam, 1.0);
  const double g2 = ratio * p.fcn_res();
  const double g4 = ratio * p.fcn_hwy();

  RarefactionDiagnostics d;
  d.rho_res = res.inverse(g2, FluxBranch::Congested);
  d.rho_hwy = hwy.inverse(g4, FluxBranch::Congested);
  d.res_rarefaction = g2 > res.eval(p.rho_init);
  d.hwy_rarefaction = g4 > hwy.eval(p.rho_init);
  return d;
}

} // namespace evac
