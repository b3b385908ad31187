#pragma once

#include <vector>

namespace xy {

// Point on the (r, h) parameter manifold of the transverse-field XY chain.
struct ModelParams {
  double r = 1.0;  // anisotropy, 0 <= r <= 1 (r=1 Ising limit, r=0 XX)
  double h = 0.0;  // transverse field strength, h >= 0

  void validate() const;
};

struct ChainSpec {
  int n_sites = 8;  // N >= 4, periodic boundary

  bool even() const { return n_sites % 2 == 0; }
  void validate() const;
};

// Bogoliubov angle theta in [0, pi/2].  The indeterminate flag marks the
// measure-zero locus r = 0, h = cos(2 pi mu) where tan(2 theta) = 0/0;
// callers are expected to perturb mu by one grid step rather than use the
// returned value.
struct Theta {
  double value = 0.0;
  bool indeterminate = false;
};

// theta(mu, r, h) with tan(2 theta) = r sin(2 pi mu) / (h - cos(2 pi mu)),
// branch fixed so that 2 theta is the two-argument arctangent in [0, pi].
// Requires 0 < mu <= 1/2.
Theta theta_continuum(double mu, const ModelParams& params);

// Mode angles theta_m at quasi-momenta mu_m = (2m+1)/(2N), m < (N-1)/2.
struct ModeAngles {
  std::vector<double> angles;
  std::vector<double> quasi_momenta;
  std::vector<bool> indeterminate;

  std::size_t size() const { return angles.size(); }
};

ModeAngles theta_modes(const ChainSpec& chain, const ModelParams& params);

// sin^2(theta(mu, r, h)) evaluated without a trig round trip.  The
// indeterminate locus is resolved by nudging mu, matching theta_continuum's
// contract for integration callers.
double sin_sq_theta(double mu, const ModelParams& params);

}  // namespace xy
