#pragma once

#include <complex>

#include "xy/model.hpp"
#include "xy/optimize.hpp"

namespace xy {

// Product-state geometric-phase convention for beta^p.
//   full_loop : beta^p = 2 pi sin^2(xi_max / 2)  (closed-form as printed)
//   half_loop : beta^p =   pi sin^2(xi_max / 2)  (extent-pi Pancharatnam per
//               site, the convention selected by analysis::convention_probe)
enum class BetaPConvention { full_loop, half_loop };

inline double beta_p_factor(BetaPConvention c) {
  return c == BetaPConvention::full_loop ? 2.0 * M_PI : M_PI;
}

struct ThermoTolerances {
  double quad_abs = 1e-10;  // absolute quadrature tolerance
  double opt_xi = 1e-10;    // golden-section interval width
};

struct GEResult {
  double epsilon = 0.0;     // GE density, >= 0
  double xi_max = 0.0;      // maximizing product angle in [0, pi]
  double lambda_log = 0.0;  // maximized log-overlap integral, <= 0
};

struct GPDensities {
  double beta_g = 0.0;
  double beta_p = 0.0;
  double delta_beta = 0.0;  // beta_g - beta_p
};

struct ComplexGEDensity {
  std::complex<double> value;  // epsilon - i delta_beta / ln 2
};

// ln[cos(theta) cos^2(xi/2) + sin(theta) sin^2(xi/2) cot(pi mu)], evaluated
// log-safely (dominant term + log1p of the ratio).  Returns -inf when the
// bracket is exactly zero (only at xi = 0 with theta = pi/2).
double ge_integrand(double mu, double xi, const ModelParams& params);

// Integral of ge_integrand over mu in (0, 1/2); -inf if the integrand is
// identically divergent on a region (r = 0, h < 1, xi = 0).
double log_overlap_density(double xi, const ModelParams& params,
                           const ThermoTolerances& tol = {});

// argmax / max of log_overlap_density over xi in [0, pi].
MaxResult optimize_xi(const ModelParams& params,
                      const ThermoTolerances& tol = {});

GEResult ge_density(const ModelParams& params, const ThermoTolerances& tol = {});

// beta^g = 2 pi * integral of sin^2(theta(mu)) over (0, 1/2); value in [0, pi].
double gp_density_ground(const ModelParams& params,
                         const ThermoTolerances& tol = {});

double gp_density_product(const ModelParams& params,
                          BetaPConvention convention = BetaPConvention::full_loop,
                          const ThermoTolerances& tol = {});

GPDensities gp_delta(const ModelParams& params,
                     BetaPConvention convention = BetaPConvention::full_loop,
                     const ThermoTolerances& tol = {});

ComplexGEDensity complex_ge_density(
    const ModelParams& params,
    BetaPConvention convention = BetaPConvention::full_loop,
    const ThermoTolerances& tol = {});

// All geometric quantities at one parameter point, sharing a single xi
// optimization.
struct GeometricRecord {
  double epsilon = 0.0;
  double xi_max = 0.0;
  double beta_g = 0.0;
  double beta_p = 0.0;
  double delta_beta = 0.0;
  std::complex<double> eps_c;
};

GeometricRecord thermo_record(
    const ModelParams& params,
    BetaPConvention convention = BetaPConvention::full_loop,
    const ThermoTolerances& tol = {});

}  // namespace xy
