#pragma once

#include <stdexcept>
#include <string>

namespace evac {

/// Raised when inputs violate a documented precondition.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the numerical scheme leaves its admissible state.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class FluxBranch { Free, Congested };

/// Piecewise linear-quadratic fundamental diagram in normalized density.
///
/// Densities are scaled by the jam density so one lane spans [0, 1] and an
/// n-lane road spans [0, n]. The free branch is linear with slope v_f up to
/// the critical density n*sigma; the congested branch is the concave parabola
/// (a/n)(rho - n*sigma)^2 + n*f_c that vanishes at rho = n. All speeds are
/// mi/hr, so normalized flux values are also mi/hr (veh/hr per jam density).
class NormalizedFlux {
public:
  NormalizedFlux() = default;

  double free_flow_speed() const { return v_f_; }
  double max_flux_norm() const { return f_c_; }     // per lane
  double critical_density_norm() const { return sigma_; } // per lane, in (0,1)
  double quad_coeff_norm() const { return a_; }     // < 0, per lane
  double lanes() const { return lanes_; }
  double rho_jam() const { return rho_jam_; }       // veh/mi/lane

  /// Density domain [0, lanes] for this road.
  double rho_max() const { return lanes_; }
  /// Flux maximum n*f_c, attained at the critical density.
  double capacity() const { return lanes_ * f_c_; }
  /// Critical density n*sigma for this road.
  double critical_density() const { return lanes_ * sigma_; }

  double eval(double rho) const;
  double inverse(double gamma, FluxBranch branch) const;
  /// Density on the opposite branch with equal flux; fixed point at n*sigma.
  double tau(double rho) const;
  /// Left derivative of the flux; f'(sigma) := v_f by convention.
  double derivative(double rho) const;
  /// max |f'| over the domain, used by the CFL bound.
  double max_wave_speed() const;

  /// Sending capacity of the last cell of an incoming road.
  double demand(double rho, double dt_hr) const;
  /// Receiving capacity of the first cell of an outgoing road.
  double supply(double rho, double dt_hr) const;

  /// True on the congested branch; rho == n*sigma counts as congested
  /// (left-derivative convention).
  bool congested(double rho) const { return rho >= critical_density(); }

  /// Same diagram with a different lane count (lane reversal support).
  NormalizedFlux with_lanes(double lanes) const;

  /// Clamp a density to [0, n]; values beyond `tol` outside raise.
  double clamp_density(double rho, double tol = 1e-9) const;

  friend NormalizedFlux build_flux(double v_f_mph, double f_c_vphpl,
                                   double rho_jam, double lanes);

private:
  double v_f_ = 0.0;
  double f_c_ = 0.0;
  double sigma_ = 0.0;
  double a_ = 0.0;
  double lanes_ = 1.0;
  double rho_jam_ = 0.0;
};

/// Builds the normalized diagram from dimensional road data:
/// free-flow speed (mi/hr), capacity (veh/hr/lane), jam density
/// (veh/mi/lane) and lane count (positive real).
NormalizedFlux build_flux(double v_f_mph, double f_c_vphpl, double rho_jam,
                          double lanes);

} // namespace evac
