#include "xy/finite.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xy/optimize.hpp"

namespace xy {

namespace {

void require_even(const ChainSpec& chain) {
  chain.validate();
  if (!chain.even())
    throw std::invalid_argument(
        "finite-chain formulas require even N; use the exact oracle for odd "
        "chains");
}

// Sum of log factors; -inf when a factor is exactly zero.
double log_lambda(const ModeAngles& modes, double xi) {
  const double ch = std::cos(0.5 * xi);
  const double sh = std::sin(0.5 * xi);
  double sum = 0.0;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double mu = modes.quasi_momenta[m];
    double theta = modes.angles[m];
    const double cot = std::cos(M_PI * mu) / std::sin(M_PI * mu);
    const double factor =
        std::cos(theta) * ch * ch + std::sin(theta) * sh * sh * cot;
    if (factor < 0.0)
      throw std::logic_error("lambda_finite: non-positive product factor");
    if (factor == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(factor);
  }
  return sum;
}

}  // namespace

double lambda_finite(const ChainSpec& chain, double xi,
                     const ModelParams& params) {
  require_even(chain);
  if (!(xi >= 0.0 && xi <= M_PI))
    throw std::domain_error("lambda_finite: xi must be in [0, pi]");
  return std::exp(log_lambda(theta_modes(chain, params), xi));
}

FiniteGERecord ge_per_site_finite(const ChainSpec& chain,
                                  const ModelParams& params, double opt_tol) {
  require_even(chain);
  const ModeAngles modes = theta_modes(chain, params);
  const MaxResult m = maximize_unimodal(
      [&](double xi) { return log_lambda(modes, xi); }, 0.0, M_PI, 33, opt_tol);
  FiniteGERecord rec;
  rec.n_sites = chain.n_sites;
  rec.xi_max = m.argmax;
  rec.lambda_max = std::exp(m.max);
  rec.epsilon_n =
      std::max(0.0, -2.0 / chain.n_sites * m.max / std::log(2.0));
  return rec;
}

double gp_per_site_finite(const ChainSpec& chain, const ModelParams& params) {
  require_even(chain);
  const ModeAngles modes = theta_modes(chain, params);
  double sum = 0.0;
  for (const double theta : modes.angles) {
    const double s = std::sin(theta);
    sum += s * s;
  }
  return 2.0 * M_PI / chain.n_sites * sum;
}

std::complex<double> complex_ge_finite(const ChainSpec& chain,
                                       const ModelParams& params,
                                       BetaPConvention convention,
                                       double opt_tol) {
  return finite_record(chain, params, convention, opt_tol).complex_ge_n;
}

FiniteGERecord finite_record(const ChainSpec& chain, const ModelParams& params,
                             BetaPConvention convention, double opt_tol) {
  FiniteGERecord rec = ge_per_site_finite(chain, params, opt_tol);
  rec.beta_g_n = gp_per_site_finite(chain, params);
  const double s = std::sin(0.5 * rec.xi_max);
  rec.beta_p_n = beta_p_factor(convention) * s * s;
  rec.complex_ge_n = {rec.epsilon_n,
                      -(rec.beta_g_n - rec.beta_p_n) / std::log(2.0)};
  return rec;
}

}  // namespace xy
