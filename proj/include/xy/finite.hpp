#pragma once

#include <complex>

#include "xy/model.hpp"
#include "xy/thermo.hpp"

namespace xy {

// Finite-N analogues of the thermodynamic-limit quantities, built from the
// closed-form mode angles.  The fermionic product formulas require even N;
// odd chains are rejected (the exact oracle remains available there).
struct FiniteGERecord {
  int n_sites = 0;
  double lambda_max = 0.0;  // entanglement eigenvalue, in (0, 1]
  double xi_max = 0.0;
  double epsilon_n = 0.0;   // GE per site, -(2/N) log2(lambda_max)
  double beta_g_n = 0.0;    // GP per site, (2 pi / N) sum_m sin^2 theta_m
  double beta_p_n = 0.0;
  std::complex<double> complex_ge_n;
};

// Overlap |<Phi(xi)|psi>| from the mode product
//   prod_m [cos theta_m cos^2(xi/2) + sin theta_m sin^2(xi/2) cot(pi mu_m)],
// computed as exp of a sum of logs.
double lambda_finite(const ChainSpec& chain, double xi,
                     const ModelParams& params);

// Maximizes lambda_finite over xi and fills the entanglement fields.
FiniteGERecord ge_per_site_finite(const ChainSpec& chain,
                                  const ModelParams& params,
                                  double opt_tol = 1e-10);

double gp_per_site_finite(const ChainSpec& chain, const ModelParams& params);

std::complex<double> complex_ge_finite(
    const ChainSpec& chain, const ModelParams& params,
    BetaPConvention convention = BetaPConvention::full_loop,
    double opt_tol = 1e-10);

// All finite-N quantities with a single xi optimization.
FiniteGERecord finite_record(
    const ChainSpec& chain, const ModelParams& params,
    BetaPConvention convention = BetaPConvention::full_loop,
    double opt_tol = 1e-10);

}  // namespace xy
