#include "xy/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "xy/optimize.hpp"

namespace xy {
namespace oracle {

namespace {

constexpr double kDegenerateGap = 1e-10;
constexpr double kQgtMinGap = 1e-6;

void check_size(const ChainSpec& chain) {
  chain.validate();
  if (chain.n_sites > 12)
    throw std::invalid_argument("exact oracle limited to N <= 12");
}

int popcount(long b) { return std::popcount(static_cast<unsigned long>(b)); }

double wrap_2pi(double phase) {
  phase = std::fmod(phase, 2.0 * M_PI);
  if (phase < 0.0) phase += 2.0 * M_PI;
  return phase;
}

// dH/dr = -1/2 sum_j (sx sx - sy sy): flips equal-spin neighbour pairs.
Eigen::MatrixXd build_dh_dr(const ChainSpec& chain) {
  const int n = chain.n_sites;
  const long dim = 1L << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (long b = 0; b < dim; ++b) {
    for (int j = 0; j < n; ++j) {
      const int p1 = n - 1 - j;
      const int p2 = n - 1 - (j + 1) % n;
      const long mask = (1L << p1) | (1L << p2);
      const bool equal = ((b >> p1) & 1L) == ((b >> p2) & 1L);
      if (equal) m(b ^ mask, b) += -1.0;
    }
  }
  return m;
}

Eigen::VectorXd dh_dh_diagonal(int n) {
  const long dim = 1L << n;
  Eigen::VectorXd d(dim);
  for (long b = 0; b < dim; ++b) d(b) = -(n - 2.0 * popcount(b));
  return d;
}

// Lowest real eigenpair data needed internally.
struct RealSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;  // columns
};

RealSpectrum solve(const ChainSpec& chain, const ModelParams& params) {
  const Eigen::MatrixXd h = build_hamiltonian(chain, params);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed");
  return RealSpectrum{es.eigenvalues(), es.eigenvectors()};
}

double parity_of(const Eigen::VectorXd& v) {
  double p = 0.0;
  for (long b = 0; b < v.size(); ++b)
    p += v(b) * v(b) * (popcount(b) % 2 == 0 ? 1.0 : -1.0);
  return p;
}

// Rotate groups of (numerically) degenerate eigenvectors into parity
// eigenstates; the spin-flip parity operator is diagonal and commutes with H.
void parity_rotate(RealSpectrum& sp) {
  const long dim = sp.vectors.rows();
  const double scale = std::max(1.0, sp.energies.cwiseAbs().maxCoeff());
  long i = 0;
  while (i < sp.energies.size()) {
    long j = i + 1;
    while (j < sp.energies.size() &&
           sp.energies(j) - sp.energies(i) < 1e-9 * scale)
      ++j;
    const long m = j - i;
    if (m > 1) {
      Eigen::MatrixXd block = sp.vectors.middleCols(i, m);
      Eigen::MatrixXd pblock(dim, m);
      for (long c = 0; c < m; ++c)
        for (long b = 0; b < dim; ++b)
          pblock(b, c) = block(b, c) * (popcount(b) % 2 == 0 ? 1.0 : -1.0);
      Eigen::MatrixXd pm = block.transpose() * pblock;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pm);
      sp.vectors.middleCols(i, m) = block * es.eigenvectors();
    }
    i = j;
  }
}

Eigen::VectorXd global_ground(const ChainSpec& chain, const ModelParams& params,
                              double min_gap, double* gap_out = nullptr) {
  RealSpectrum sp = solve(chain, params);
  const double gap = sp.energies(1) - sp.energies(0);
  if (gap_out) *gap_out = gap;
  if (gap < min_gap)
    throw std::runtime_error("ground state degenerate within tolerance");
  return sp.vectors.col(0);
}

// Probability of each total down-spin count d; the z-rotation loop acts on a
// basis state only through d, so Bargmann products reduce to these weights.
Eigen::VectorXd down_count_weights(const StateVector& state) {
  const int n = state.n_sites;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n + 1);
  for (long b = 0; b < state.amplitudes.size(); ++b)
    p(popcount(b)) += std::norm(state.amplitudes(b));
  return p;
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(const ChainSpec& chain,
                                  const ModelParams& params) {
  check_size(chain);
  params.validate();
  const int n = chain.n_sites;
  const long dim = 1L << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (long b = 0; b < dim; ++b) {
    h(b, b) = -params.h * (n - 2.0 * popcount(b));
    for (int j = 0; j < n; ++j) {
      const int p1 = n - 1 - j;
      const int p2 = n - 1 - (j + 1) % n;
      const long mask = (1L << p1) | (1L << p2);
      const bool equal = ((b >> p1) & 1L) == ((b >> p2) & 1L);
      // xx flips both spins with +1; yy with -1 (equal) / +1 (different).
      h(b ^ mask, b) += equal ? -params.r : -1.0;
    }
  }
  return h;
}

SpectrumSlice ground_state(const ChainSpec& chain, const ModelParams& params,
                           int n_states) {
  check_size(chain);
  if (n_states < 4) n_states = 4;
  RealSpectrum sp = solve(chain, params);
  parity_rotate(sp);
  SpectrumSlice out;
  out.n_sites = chain.n_sites;
  const long keep = std::min<long>(n_states, sp.energies.size());
  out.energies = sp.energies.head(keep);
  out.gap01 = sp.energies(1) - sp.energies(0);
  out.near_degenerate = out.gap01 < kDegenerateGap;
  out.even_ground_index = -1;
  for (long i = 0; i < keep; ++i) {
    out.states.push_back(sp.vectors.col(i).cast<std::complex<double>>());
    out.parity.push_back(parity_of(sp.vectors.col(i)));
    if (out.even_ground_index < 0 && out.parity.back() > 0.5)
      out.even_ground_index = static_cast<int>(i);
  }
  if (out.even_ground_index < 0)
    throw std::runtime_error(
        "no even-parity state among the requested lowest eigenpairs");
  return out;
}

StateVector product_state(int n_sites, double xi) {
  if (n_sites < 1) throw std::invalid_argument("product_state: N >= 1");
  const long dim = 1L << n_sites;
  const double c = std::cos(0.5 * xi);
  const double s = std::sin(0.5 * xi);
  StateVector st;
  st.n_sites = n_sites;
  st.amplitudes.resize(dim);
  for (long b = 0; b < dim; ++b) {
    const int k = popcount(b);
    st.amplitudes(b) = std::pow(c, n_sites - k) * std::pow(s, k);
  }
  return st;
}

std::complex<double> overlap_with_product(const StateVector& state, double xi) {
  const double c = std::cos(0.5 * xi);
  const double s = std::sin(0.5 * xi);
  Eigen::VectorXcd v = state.amplitudes;
  for (int site = 0; site < state.n_sites; ++site) {
    const long half = v.size() / 2;
    Eigen::VectorXcd w(half);
    for (long b = 0; b < half; ++b) w(b) = c * v(2 * b) + s * v(2 * b + 1);
    v.swap(w);
  }
  return v(0);
}

std::pair<double, double> exact_entanglement_eigenvalue(
    const StateVector& state, double opt_tol) {
  const MaxResult m = maximize_unimodal(
      [&](double xi) { return std::abs(overlap_with_product(state, xi)); },
      0.0, M_PI, 33, opt_tol);
  return {m.max, m.argmax};
}

double expectation_sz(const StateVector& state) {
  double sz = 0.0;
  for (long b = 0; b < state.amplitudes.size(); ++b)
    sz += std::norm(state.amplitudes(b)) *
          (state.n_sites - 2.0 * popcount(b));
  return sz;
}

double pancharatnam_phase(const StateVector& state, const LoopSpec& loop) {
  if (loop.steps < 64)
    throw std::invalid_argument("pancharatnam_phase: K must be >= 64");
  const int n = state.n_sites;
  const Eigen::VectorXd p = down_count_weights(state);
  const double sz = [&] {
    double v = 0.0;
    for (int d = 0; d <= n; ++d) v += p(d) * (n - 2.0 * d);
    return v;
  }();
  const bool pt = loop.transport == LoopSpec::Transport::parallel;
  const double delta = loop.phi_extent / loop.steps;

  auto step_overlap = [&](double dphi) {
    // <psi(phi)|psi(phi + dphi)>, independent of phi for this diagonal loop.
    std::complex<double> f = 0.0;
    for (int d = 0; d <= n; ++d)
      f += p(d) * std::polar(1.0, 0.5 * dphi * (n - 2.0 * d));
    if (pt) f *= std::polar(1.0, -0.5 * dphi * sz);
    return f;
  };

  const std::complex<double> f = step_overlap(delta);
  if (std::abs(f) < 1e-6)
    throw std::runtime_error(
        "pancharatnam_phase: ill-conditioned consecutive overlap");
  const std::complex<double> closing = step_overlap(loop.phi_extent);
  // arg[ prod_k <psi_{k+1}|psi_k> * <psi_0|psi_K> ]; this ordering matches
  // the Bloch-sphere solid-angle sign for the single-spin loop.
  return wrap_2pi(loop.steps * std::arg(std::conj(f)) + std::arg(closing));
}

InterferenceResult interference_amplitude(const ChainSpec& chain,
                                          const ModelParams& params, double xi,
                                          const LoopSpec& loop) {
  const SpectrumSlice slice = ground_state(chain, params);
  const StateVector psi = slice.even_ground();
  const StateVector phi = product_state(chain.n_sites, xi);
  InterferenceResult out;
  out.phi_g = pancharatnam_phase(psi, loop);
  out.phi_p = pancharatnam_phase(phi, loop);
  const std::complex<double> ov = overlap_with_product(psi, xi);
  out.overlap_sq = std::norm(ov);
  out.amplitude = std::polar(1.0, -out.phi_p) * std::conj(ov) *
                  std::polar(1.0, out.phi_g) * ov;
  if (std::abs(std::abs(out.amplitude) - out.overlap_sq) > 1e-10)
    throw std::logic_error("interference_amplitude: |A| != |<Phi|psi>|^2");
  return out;
}

FringeRecord fringe_readout(std::complex<double> amplitude, double overlap_sq,
                            const std::vector<double>& f_grid) {
  if (f_grid.size() < 3)
    throw std::invalid_argument("fringe_readout: need at least 3 f samples");
  FringeRecord rec;
  rec.amplitude = amplitude;
  // Normal equations for I = a + p cos f + q sin f.
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (const double f : f_grid) {
    const double i0 = 0.25 * (1.0 + overlap_sq) +
                      0.5 * std::real(amplitude * std::polar(1.0, -f));
    rec.samples.emplace_back(f, i0);
    const Eigen::Vector3d row(1.0, std::cos(f), std::sin(f));
    ata += row * row.transpose();
    atb += row * i0;
  }
  if (std::abs(ata.determinant()) < 1e-12)
    throw std::runtime_error("fringe_readout: degenerate f grid");
  const Eigen::Vector3d sol = ata.ldlt().solve(atb);
  rec.extracted_visibility = 2.0 * std::hypot(sol(1), sol(2));
  rec.extracted_phase = std::atan2(sol(2), sol(1));
  return rec;
}

QGTensor qgt(const ChainSpec& chain, const ModelParams& params,
             QGTMethod method, double delta) {
  check_size(chain);
  QGTensor out;
  if (method == QGTMethod::sum_over_states) {
    RealSpectrum sp = solve(chain, params);
    out.gap = sp.energies(1) - sp.energies(0);
    if (out.gap < kQgtMinGap)
      throw std::runtime_error("qgt: ground state degenerate");
    out.ill_conditioned = out.gap < 1e-3;
    const Eigen::VectorXd psi0 = sp.vectors.col(0);
    const Eigen::VectorXd dh = dh_dh_diagonal(chain.n_sites);
    const Eigen::MatrixXd dr = build_dh_dr(chain);
    const Eigen::VectorXd ar = sp.vectors.transpose() * (dr * psi0);
    const Eigen::VectorXd ah =
        sp.vectors.transpose() * dh.cwiseProduct(psi0).matrix();
    Eigen::Matrix2d t = Eigen::Matrix2d::Zero();
    for (long m = 1; m < sp.energies.size(); ++m) {
      const double denom = sp.energies(0) - sp.energies(m);
      t(0, 0) += ar(m) * ar(m) / (denom * denom);
      t(0, 1) += ar(m) * ah(m) / (denom * denom);
      t(1, 1) += ah(m) * ah(m) / (denom * denom);
    }
    t(1, 0) = t(0, 1);
    out.t = t.cast<std::complex<double>>();
    return out;
  }
  // Projector-derivative form with gauge-fixed central differences.
  const Eigen::VectorXd center =
      global_ground(chain, params, kQgtMinGap, &out.gap);
  out.ill_conditioned = out.gap < 1e-3;
  auto shifted = [&](double dr_, double dh_) {
    ModelParams p = params;
    p.r += dr_;
    p.h += dh_;
    Eigen::VectorXd v = global_ground(chain, p, kQgtMinGap);
    if (center.dot(v) < 0.0) v = -v;  // overlap with reference real positive
    return v;
  };
  const Eigen::VectorXd dpsi_r =
      (shifted(delta, 0.0) - shifted(-delta, 0.0)) / (2.0 * delta);
  const Eigen::VectorXd dpsi_h =
      (shifted(0.0, delta) - shifted(0.0, -delta)) / (2.0 * delta);
  auto project = [&](const Eigen::VectorXd& v) {
    return (v - center * center.dot(v)).eval();
  };
  const Eigen::VectorXd pr = project(dpsi_r);
  const Eigen::VectorXd ph = project(dpsi_h);
  Eigen::Matrix2d t;
  t(0, 0) = pr.dot(pr);
  t(0, 1) = pr.dot(ph);
  t(1, 0) = t(0, 1);
  t(1, 1) = ph.dot(ph);
  out.t = t.cast<std::complex<double>>();
  return out;
}

double berry_curvature_plaquette(const ChainSpec& chain,
                                 const ModelParams& params, double delta,
                                 bool reversed) {
  check_size(chain);
  const double dr = 0.5 * delta;
  std::vector<std::pair<double, double>> corners = {
      {params.r - dr, params.h - dr},
      {params.r + dr, params.h - dr},
      {params.r + dr, params.h + dr},
      {params.r - dr, params.h + dr}};
  if (reversed) std::reverse(corners.begin(), corners.end());
  std::vector<Eigen::VectorXd> states;
  for (const auto& [r, h] : corners) {
    ModelParams p = params;
    p.r = r;
    p.h = h;
    states.push_back(global_ground(chain, p, kQgtMinGap));
  }
  std::complex<double> prod = 1.0;
  for (int k = 0; k < 4; ++k)
    prod *= std::complex<double>(states[(k + 1) % 4].dot(states[k]));
  double phase = std::arg(prod);
  return phase / (delta * delta);
}

double fidelity(const ChainSpec& chain, const ModelParams& a,
                const ModelParams& b) {
  const Eigen::VectorXd va = global_ground(chain, a, kQgtMinGap);
  const Eigen::VectorXd vb = global_ground(chain, b, kQgtMinGap);
  return std::abs(va.dot(vb));
}

}  // namespace oracle
}  // namespace xy
