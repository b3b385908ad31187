#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "xy/model.hpp"

namespace xy {
namespace oracle {

// Basis convention: basis index b in [0, 2^N); site j (1-based) maps to bit
// N-j, so site 1 is the most significant position.  A clear bit is spin-up;
// the all-up reference state is index 0.

struct StateVector {
  int n_sites = 0;
  Eigen::VectorXcd amplitudes;  // length 2^N, unit norm
};

struct SpectrumSlice {
  int n_sites = 0;
  Eigen::VectorXd energies;             // ascending
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> parity;           // <prod_j sigma^z_j> per state
  int even_ground_index = 0;            // even-parity ground state
  double gap01 = 0.0;                   // E1 - E0 of the full spectrum
  bool near_degenerate = false;         // gap01 < 1e-10

  StateVector even_ground() const {
    return StateVector{n_sites, states[even_ground_index]};
  }
};

struct LoopSpec {
  double phi_extent = M_PI;  // pi or 2*pi
  int steps = 1024;          // K >= 64
  enum class Transport { parallel, bare };
  Transport transport = Transport::parallel;
};

struct FringeRecord {
  std::complex<double> amplitude;
  std::vector<std::pair<double, double>> samples;  // (f, I0)
  double extracted_visibility = 0.0;
  double extracted_phase = 0.0;
};

struct QGTensor {
  Eigen::Matrix2cd t;  // coordinates (r, h)
  double gap = 0.0;
  bool ill_conditioned = false;  // gap < 1e-3

  Eigen::Matrix2d metric_part() const { return t.real(); }
  Eigen::Matrix2d curvature_part() const { return -2.0 * t.imag(); }
};

enum class QGTMethod { sum_over_states, projector_derivative };

// H = -sum_j [ (1+r)/2 sx_j sx_{j+1} + (1-r)/2 sy_j sy_{j+1} + h sz_j ],
// periodic, real symmetric in this basis.  Requires 4 <= N <= 12.
Eigen::MatrixXd build_hamiltonian(const ChainSpec& chain,
                                  const ModelParams& params);

// Full dense diagonalization; returns the lowest n_states (>= 4) eigenpairs
// with parity labels.  Degenerate subspaces are rotated to parity eigenstates
// so the even-parity ground state is well defined.
SpectrumSlice ground_state(const ChainSpec& chain, const ModelParams& params,
                           int n_states = 4);

// Uniform product state  (cos(xi/2)|up> + sin(xi/2)|down>)^{tensor N}.
StateVector product_state(int n_sites, double xi);

// <Phi(xi)|psi> by sequential single-site contraction.
std::complex<double> overlap_with_product(const StateVector& state, double xi);

// (lambda_max, xi_max) maximizing |<Phi(xi)|psi>| over xi in [0, pi].
std::pair<double, double> exact_entanglement_eigenvalue(
    const StateVector& state, double opt_tol = 1e-10);

double expectation_sz(const StateVector& state);

// Discrete Pancharatnam phase of the z-rotation loop
// U_tot(phi) = prod_j exp(i sz_j phi / 2), closed by the overlap between the
// final and initial rays.  Sign convention anchored to the Bloch-sphere solid
// angle: a single spin at angle xi over a 2*pi extent yields
// 2 pi sin^2(xi/2) mod 2 pi.  Result in [0, 2 pi); discretization error
// O(K^-2) for parallel transport.
double pancharatnam_phase(const StateVector& state, const LoopSpec& loop);

struct InterferenceResult {
  std::complex<double> amplitude;  // A = |<Phi|psi>|^2 exp(i (phi_g - phi_p))
  double phi_g = 0.0;
  double phi_p = 0.0;
  double overlap_sq = 0.0;
};

// Interferometer amplitude with expectation-subtracted (parallel
// transporting) generators for both arms.
InterferenceResult interference_amplitude(const ChainSpec& chain,
                                          const ModelParams& params, double xi,
                                          const LoopSpec& loop);

// I0(f) = (1 + overlap_sq)/4 + Re(A e^{-if})/2 sampled on f_grid, then
// visibility and phase recovered by least-squares fit of a + b cos(f - c).
FringeRecord fringe_readout(std::complex<double> amplitude, double overlap_sq,
                            const std::vector<double>& f_grid);

// Quantum geometric tensor over (r, h) for the ground state, either by the
// explicit sum over excited states or by gauge-fixed central-difference
// derivative states projected off the ground state.
QGTensor qgt(const ChainSpec& chain, const ModelParams& params,
             QGTMethod method, double delta = 1e-4);

// Pancharatnam phase around the plaquette (r +/- delta/2, h +/- delta/2)
// divided by its area; orientation (r, h) right-handed unless reversed.
double berry_curvature_plaquette(const ChainSpec& chain,
                                 const ModelParams& params, double delta,
                                 bool reversed = false);

double fidelity(const ChainSpec& chain, const ModelParams& a,
                const ModelParams& b);

}  // namespace oracle
}  // namespace xy
