#include "xy/thermo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xy/errors.hpp"
#include "xy/quadrature.hpp"

namespace xy {

namespace {

// Bracket of the GE integrand split into its two nonnegative terms.
struct Bracket {
  double a;  // cos(theta) cos^2(xi/2)
  double b;  // sin(theta) sin^2(xi/2) cot(pi mu)
};

Bracket ge_bracket(double mu, double xi, const ModelParams& params) {
  Theta t = theta_continuum(mu, params);
  if (t.indeterminate) t = theta_continuum(mu + 1e-13, params);
  const double ch = std::cos(0.5 * xi);
  const double sh = std::sin(0.5 * xi);
  const double cot = std::cos(M_PI * mu) / std::sin(M_PI * mu);
  return Bracket{std::cos(t.value) * ch * ch,
                 std::sin(t.value) * sh * sh * cot};
}

double log_sum(const Bracket& br) {
  if (br.a <= 0.0 && br.b <= 0.0)
    return -std::numeric_limits<double>::infinity();
  if (br.b > br.a) return std::log(br.b) + std::log1p(br.a / br.b);
  return std::log(br.a) + std::log1p(br.b / br.a);
}

// d/dxi of ln(a + b): the xi-derivative of both terms shares the factor
// sin(xi/2) cos(xi/2), leaving a ratio that is bounded at mu = 0.
double ge_integrand_dxi(double mu, double xi, const ModelParams& params) {
  Theta t = theta_continuum(mu, params);
  if (t.indeterminate) t = theta_continuum(mu + 1e-13, params);
  const double ch = std::cos(0.5 * xi);
  const double sh = std::sin(0.5 * xi);
  const double cot = std::cos(M_PI * mu) / std::sin(M_PI * mu);
  const double ct = std::cos(t.value);
  const double st = std::sin(t.value);
  const double den = ct * ch * ch + st * sh * sh * cot;
  if (den <= 0.0) return 0.0;
  return sh * ch * (st * cot - ct) / den;
}

double d_log_overlap(double xi, const ModelParams& params,
                     const ThermoTolerances& tol) {
  auto f = [&](double mu) {
    if (mu >= 0.5) mu = std::nextafter(0.5, 0.0);
    return ge_integrand_dxi(mu, xi, params);
  };
  const QuadResult lo = integrate_graded(f, 0.25, 0.5 * tol.quad_abs);
  const QuadResult hi = integrate_graded(
      [&](double nu) { return f(0.5 - nu); }, 0.25, 0.5 * tol.quad_abs);
  return lo.value + hi.value;
}

}  // namespace

double ge_integrand(double mu, double xi, const ModelParams& params) {
  if (!(mu > 0.0 && mu < 0.5))
    throw std::domain_error("ge_integrand: mu must be in (0, 1/2)");
  if (!(xi >= 0.0 && xi <= M_PI))
    throw std::domain_error("ge_integrand: xi must be in [0, pi]");
  return log_sum(ge_bracket(mu, xi, params));
}

double log_overlap_density(double xi, const ModelParams& params,
                           const ThermoTolerances& tol) {
  if (!(xi >= 0.0 && xi <= M_PI))
    throw std::domain_error("log_overlap_density: xi must be in [0, pi]");
  params.validate();
  bool diverged = false;
  auto f = [&](double mu) {
    if (mu >= 0.5) mu = std::nextafter(0.5, 0.0);
    const double v = log_sum(ge_bracket(mu, xi, params));
    if (std::isinf(v)) {
      diverged = true;
      return 0.0;
    }
    return v;
  };
  // Grade toward both ends: cot(pi mu) is log-singular at mu = 0, and at
  // xi = pi the integrand is log-singular at mu = 1/2 as well.
  const QuadResult lo = integrate_graded(f, 0.25, 0.5 * tol.quad_abs);
  const QuadResult hi = integrate_graded(
      [&](double nu) { return f(0.5 - nu); }, 0.25, 0.5 * tol.quad_abs);
  if (diverged) return -std::numeric_limits<double>::infinity();
  if (!lo.converged || !hi.converged)
    throw ConvergenceError("log_overlap_density: quadrature did not converge",
                           lo.error_estimate + hi.error_estimate);
  return lo.value + hi.value;
}

MaxResult optimize_xi(const ModelParams& params, const ThermoTolerances& tol) {
  auto objective = [&](double xi) {
    return log_overlap_density(xi, params, tol);
  };
  MaxResult m = maximize_unimodal(objective, 0.0, M_PI, 33, tol.opt_xi);
  // The objective is quadratically flat at the maximum, so golden section can
  // place argmax only within ~sqrt(eps).  For interior maxima, polish it by
  // bisecting the derivative integral, which crosses zero with O(1) slope.
  if (m.argmax > 0.05 && m.argmax < M_PI - 0.05) {
    double lo = m.argmax - 1e-6;
    double hi = m.argmax + 1e-6;
    double glo = d_log_overlap(lo, params, tol);
    double ghi = d_log_overlap(hi, params, tol);
    for (int grow = 0; grow < 4 && !(glo > 0.0 && ghi < 0.0); ++grow) {
      lo = std::max(1e-3, lo - 1e-3);
      hi = std::min(M_PI - 1e-3, hi + 1e-3);
      glo = d_log_overlap(lo, params, tol);
      ghi = d_log_overlap(hi, params, tol);
    }
    if (glo > 0.0 && ghi < 0.0) {
      for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (d_log_overlap(mid, params, tol) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      m.argmax = 0.5 * (lo + hi);
      m.max = objective(m.argmax);
    }
  }
  return m;
}

GEResult ge_density(const ModelParams& params, const ThermoTolerances& tol) {
  const MaxResult m = optimize_xi(params, tol);
  GEResult out;
  out.xi_max = m.argmax;
  out.lambda_log = m.max;
  out.epsilon = std::max(0.0, -2.0 / std::log(2.0) * m.max);
  return out;
}

double gp_density_ground(const ModelParams& params,
                         const ThermoTolerances& tol) {
  params.validate();
  auto f = [&](double mu) {
    if (mu >= 0.5) mu = std::nextafter(0.5, 0.0);
    return sin_sq_theta(mu, params);
  };
  const QuadResult q = integrate_graded(f, 0.5, tol.quad_abs / (2.0 * M_PI));
  if (!q.converged)
    throw ConvergenceError("gp_density_ground: quadrature did not converge",
                           q.error_estimate);
  double beta = 2.0 * M_PI * q.value;
  if (beta < 0.0) beta = 0.0;
  if (beta > M_PI) beta = M_PI;
  return beta;
}

double gp_density_product(const ModelParams& params, BetaPConvention convention,
                          const ThermoTolerances& tol) {
  const MaxResult m = optimize_xi(params, tol);
  const double s = std::sin(0.5 * m.argmax);
  return beta_p_factor(convention) * s * s;
}

GPDensities gp_delta(const ModelParams& params, BetaPConvention convention,
                     const ThermoTolerances& tol) {
  GPDensities out;
  out.beta_g = gp_density_ground(params, tol);
  out.beta_p = gp_density_product(params, convention, tol);
  out.delta_beta = out.beta_g - out.beta_p;
  return out;
}

ComplexGEDensity complex_ge_density(const ModelParams& params,
                                    BetaPConvention convention,
                                    const ThermoTolerances& tol) {
  return ComplexGEDensity{thermo_record(params, convention, tol).eps_c};
}

GeometricRecord thermo_record(const ModelParams& params,
                              BetaPConvention convention,
                              const ThermoTolerances& tol) {
  GeometricRecord rec;
  const MaxResult m = optimize_xi(params, tol);
  rec.xi_max = m.argmax;
  rec.epsilon = std::max(0.0, -2.0 / std::log(2.0) * m.max);
  rec.beta_g = gp_density_ground(params, tol);
  const double s = std::sin(0.5 * rec.xi_max);
  rec.beta_p = beta_p_factor(convention) * s * s;
  rec.delta_beta = rec.beta_g - rec.beta_p;
  rec.eps_c = {rec.epsilon, -rec.delta_beta / std::log(2.0)};
  return rec;
}

}  // namespace xy
