#include "xy/model.hpp"

#include <cmath>
#include <stdexcept>

namespace xy {

void ModelParams::validate() const {
  if (!(r >= 0.0 && r <= 1.0) || !std::isfinite(r))
    throw std::invalid_argument("ModelParams: anisotropy r must be in [0, 1]");
  if (!(h >= 0.0) || !std::isfinite(h))
    throw std::invalid_argument("ModelParams: field h must be finite and >= 0");
}

void ChainSpec::validate() const {
  if (n_sites < 4)
    throw std::invalid_argument("ChainSpec: N must be at least 4");
}

Theta theta_continuum(double mu, const ModelParams& params) {
  params.validate();
  if (!(mu > 0.0 && mu <= 0.5))
    throw std::domain_error("theta_continuum: mu must be in (0, 1/2]");
  const double y = params.r * std::sin(2.0 * M_PI * mu);
  const double x = params.h - std::cos(2.0 * M_PI * mu);
  if (y == 0.0 && x == 0.0) return Theta{0.0, true};
  // y >= 0 on (0, 1/2], so atan2 lands in [0, pi] and theta in [0, pi/2].
  return Theta{0.5 * std::atan2(y, x), false};
}

ModeAngles theta_modes(const ChainSpec& chain, const ModelParams& params) {
  chain.validate();
  params.validate();
  const int n = chain.n_sites;
  ModeAngles out;
  for (int m = 0; 2 * m < n - 1; ++m) {
    const double mu = (2.0 * m + 1.0) / (2.0 * n);
    const Theta t = theta_continuum(mu, params);
    out.angles.push_back(t.value);
    out.quasi_momenta.push_back(mu);
    out.indeterminate.push_back(t.indeterminate);
  }
  return out;
}

double sin_sq_theta(double mu, const ModelParams& params) {
  double y = params.r * std::sin(2.0 * M_PI * mu);
  double x = params.h - std::cos(2.0 * M_PI * mu);
  if (y == 0.0 && x == 0.0) {
    mu += 1e-13;  // off the indeterminate locus
    y = params.r * std::sin(2.0 * M_PI * mu);
    x = params.h - std::cos(2.0 * M_PI * mu);
  }
  const double n = std::hypot(x, y);
  // r = 0, h = 1, mu -> 0: both components underflow, but x -> 0+ so the
  // limit is an empty mode.
  if (n == 0.0) return 0.0;
  return 0.5 * (1.0 - x / n);  // (1 - cos 2theta)/2
}

}  // namespace xy
