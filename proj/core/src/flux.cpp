#include "evac/flux.hpp"

#include <algorithm>
#include <cmath>

namespace evac {

NormalizedFlux build_flux(double v_f_mph, double f_c_vphpl, double rho_jam,
                          double lanes) {
  if (v_f_mph <= 0.0 || f_c_vphpl <= 0.0 || rho_jam <= 0.0)
    throw ValidationError("flux: speed, capacity and jam density must be positive");
  if (lanes < 1.0)
    throw ValidationError("flux: lane count must be >= 1");
  if (f_c_vphpl >= v_f_mph * rho_jam)
    throw ValidationError("flux: capacity requires critical density below jam density");

  NormalizedFlux f;
  f.v_f_ = v_f_mph;
  f.f_c_ = f_c_vphpl / rho_jam;
  f.sigma_ = f.f_c_ / v_f_mph;
  f.a_ = -f.f_c_ / ((1.0 - f.sigma_) * (1.0 - f.sigma_));
  f.lanes_ = lanes;
  f.rho_jam_ = rho_jam;
  return f;
}

NormalizedFlux NormalizedFlux::with_lanes(double lanes) const {
  if (lanes < 1.0) throw ValidationError("flux: lane count must be >= 1");
  NormalizedFlux f = *this;
  f.lanes_ = lanes;
  return f;
}

double NormalizedFlux::clamp_density(double rho, double tol) const {
  if (rho < -tol || rho > lanes_ + tol)
    throw ValidationError("flux: density " + std::to_string(rho) +
                          " outside [0, " + std::to_string(lanes_) + "]");
  return std::clamp(rho, 0.0, lanes_);
}

double NormalizedFlux::eval(double rho) const {
  rho = clamp_density(rho);
  const double ns = lanes_ * sigma_;
  if (rho <= ns) return v_f_ * rho;
  const double d = rho - ns;
  return (a_ / lanes_) * d * d + lanes_ * f_c_;
}

double NormalizedFlux::derivative(double rho) const {
  rho = clamp_density(rho);
  const double ns = lanes_ * sigma_;
  if (rho <= ns) return v_f_;
  return 2.0 * (a_ / lanes_) * (rho - ns);
}

double NormalizedFlux::max_wave_speed() const {
  // |f'| peaks at v_f on the free branch and at 2|a|(1-sigma) at jam.
  return std::max(v_f_, 2.0 * f_c_ / (1.0 - sigma_));
}

double NormalizedFlux::inverse(double gamma, FluxBranch branch) const {
  const double cap = capacity();
  if (gamma < 0.0) throw ValidationError("flux: negative flux has no preimage");
  if (gamma > cap) {
    if (gamma > cap * (1.0 + 1e-12) + 1e-15)
      throw ValidationError("flux: flux " + std::to_string(gamma) +
                            " exceeds capacity " + std::to_string(cap));
    gamma = cap;
  }
  const double ns = lanes_ * sigma_;
  if (branch == FluxBranch::Free) return gamma / v_f_;
  return ns + std::sqrt((cap - gamma) * lanes_ / (-a_));
}

double NormalizedFlux::tau(double rho) const {
  rho = clamp_density(rho);
  const double g = eval(rho);
  return congested(rho) ? inverse(g, FluxBranch::Free)
                        : inverse(g, FluxBranch::Congested);
}

double NormalizedFlux::demand(double rho, double dt_hr) const {
  rho = clamp_density(rho);
  if (rho <= critical_density()) return std::min(eval(rho), rho / dt_hr);
  return capacity();
}

double NormalizedFlux::supply(double rho, double dt_hr) const {
  rho = clamp_density(rho);
  if (rho <= critical_density()) return capacity();
  return std::min(eval(rho), (lanes_ - rho) / dt_hr);
}

} // namespace evac
