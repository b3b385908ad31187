#include "xy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "xy/finite.hpp"
#include "xy/oracle.hpp"

namespace xy {
namespace analysis {

namespace {

// Quadratic-interpolation derivative through three points (one-sided ends).
double three_point_derivative(double x0, double y0, double x1, double y1,
                              double x2, double y2, double at) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  // derivative of the interpolating parabola at `at`
  return d01 + curv * (2.0 * at - x0 - x1);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

CurveSamples derivative_curve(const CurveSamples& samples) {
  const auto& x = samples.abscissae;
  const auto& y = samples.ordinates;
  if (x.size() != y.size())
    throw std::invalid_argument("derivative_curve: length mismatch");
  if (x.size() < 3)
    throw std::invalid_argument("derivative_curve: need at least 3 points");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw std::invalid_argument("derivative_curve: abscissae not ascending");
  const std::size_t n = x.size();
  CurveSamples out;
  out.abscissae = x;
  out.quantity = "d(" + samples.quantity + ")/dh";
  out.ordinates.resize(n);
  out.ordinates[0] =
      three_point_derivative(x[0], y[0], x[1], y[1], x[2], y[2], x[0]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    out.ordinates[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
  out.ordinates[n - 1] = three_point_derivative(
      x[n - 3], y[n - 3], x[n - 2], y[n - 2], x[n - 1], y[n - 1], x[n - 1]);
  return out;
}

FeatureScan detect_critical_features(double r, CurveMode mode, int n_sites,
                                     const std::vector<double>& h_grid,
                                     const ThermoTolerances& tol) {
  if (h_grid.size() < 5)
    throw std::invalid_argument("detect_critical_features: grid too coarse");
  FeatureScan scan;
  scan.epsilon.abscissae = h_grid;
  scan.epsilon.quantity = "epsilon";
  scan.xi_max.abscissae = h_grid;
  scan.xi_max.quantity = "xi_max";
  for (const double h : h_grid) {
    ModelParams p{r, h};
    double eps = 0.0, xi = 0.0;
    switch (mode) {
      case CurveMode::thermo: {
        const GEResult g = ge_density(p, tol);
        eps = g.epsilon;
        xi = g.xi_max;
        break;
      }
      case CurveMode::finite: {
        const FiniteGERecord g =
            ge_per_site_finite(ChainSpec{n_sites}, p, tol.opt_xi);
        eps = g.epsilon_n;
        xi = g.xi_max;
        break;
      }
      case CurveMode::exact: {
        const auto slice = oracle::ground_state(ChainSpec{n_sites}, p);
        const auto [lam, xim] =
            oracle::exact_entanglement_eigenvalue(slice.even_ground(),
                                                  tol.opt_xi);
        eps = -2.0 / n_sites * std::log2(std::max(lam, 1e-300));
        xi = xim;
        break;
      }
    }
    scan.epsilon.ordinates.push_back(eps);
    scan.xi_max.ordinates.push_back(xi);
  }

  const CurveSamples deriv = derivative_curve(scan.epsilon);
  std::size_t peak_idx = 0;
  for (std::size_t i = 1; i < deriv.ordinates.size(); ++i)
    if (std::abs(deriv.ordinates[i]) > std::abs(deriv.ordinates[peak_idx]))
      peak_idx = i;
  scan.report.h_peak = h_grid[peak_idx];
  scan.report.peak_value = std::abs(deriv.ordinates[peak_idx]);

  // Smallest grid h from which xi_max stays below threshold.
  constexpr double kXiVanished = 1e-6;
  std::optional<std::size_t> hs_idx;
  for (std::size_t i = h_grid.size(); i-- > 0;) {
    if (scan.xi_max.ordinates[i] < kXiVanished)
      hs_idx = i;
    else
      break;
  }
  if (hs_idx && *hs_idx > 0) {
    scan.report.h_s_estimate = h_grid[*hs_idx];
    // Second-derivative jump test around h_s.
    const CurveSamples second = derivative_curve(deriv);
    const std::size_t i = *hs_idx;
    std::vector<double> neighbors;
    for (std::size_t j = 0; j < second.ordinates.size(); ++j) {
      if (j + 3 >= i && j <= i + 3) continue;  // exclude the kink window
      if (j + 15 >= i && j <= i + 15)
        neighbors.push_back(std::abs(second.ordinates[j]));
    }
    const double base = median(neighbors);
    double kink = 0.0;
    for (std::size_t j = (i >= 1 ? i - 1 : 0);
         j <= std::min(i + 1, second.ordinates.size() - 1); ++j)
      kink = std::max(kink, std::abs(second.ordinates[j]));
    scan.report.cusp_flag = base > 0.0 && kink > 10.0 * base;
  }
  return scan;
}

FiniteSizeScan finite_size_scan(double r, const std::vector<int>& n_list,
                                const std::vector<double>& h_grid,
                                const ThermoTolerances& tol) {
  FiniteSizeScan out;
  for (const int n : n_list) {
    if (n < 8 || n % 2 != 0)
      throw std::invalid_argument("finite_size_scan: even N >= 8 required");
    CurveSamples eps;
    eps.abscissae = h_grid;
    eps.quantity = "epsilon_N";
    for (const double h : h_grid)
      eps.ordinates.push_back(
          ge_per_site_finite(ChainSpec{n}, ModelParams{r, h}, tol.opt_xi)
              .epsilon_n);
    const CurveSamples deriv = derivative_curve(eps);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < deriv.ordinates.size(); ++i)
      if (std::abs(deriv.ordinates[i]) > std::abs(deriv.ordinates[peak]))
        peak = i;
    out.rows.push_back(
        ScanRow{n, h_grid[peak], std::abs(deriv.ordinates[peak])});
  }
  // Least-squares regression of peak value against ln N.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& row : out.rows) {
    const double x = std::log(static_cast<double>(row.n_sites));
    sx += x;
    sy += row.peak_value;
    sxx += x * x;
    sxy += x * row.peak_value;
  }
  const double m = static_cast<double>(out.rows.size());
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) > 1e-12) {
    out.slope_vs_log_n = (m * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope_vs_log_n * sx) / m;
  }
  return out;
}

std::vector<XXProbeRow> xx_singularity_probe(
    const std::vector<double>& r_sequence, const std::vector<double>& h_grid,
    BetaPConvention convention, const ThermoTolerances& tol) {
  std::vector<XXProbeRow> out;
  for (const double r : r_sequence) {
    CurveSamples db;
    db.abscissae = h_grid;
    db.quantity = "delta_beta";
    for (const double h : h_grid)
      db.ordinates.push_back(
          gp_delta(ModelParams{r, h}, convention, tol).delta_beta);
    const CurveSamples deriv = derivative_curve(db);
    std::size_t best = 0;
    for (std::size_t i = 1; i < deriv.ordinates.size(); ++i)
      if (std::abs(deriv.ordinates[i]) > std::abs(deriv.ordinates[best]))
        best = i;
    out.push_back(
        XXProbeRow{r, std::abs(deriv.ordinates[best]), h_grid[best]});
  }
  return out;
}

FubiniStudy fubini_study_check(double lambda_max) {
  if (!(lambda_max > 0.0 && lambda_max <= 1.0))
    throw std::domain_error("fubini_study_check: lambda must be in (0, 1]");
  const double d = std::acos(std::min(lambda_max, 1.0));
  return FubiniStudy{d, 1.0 - 0.5 * d * d};
}

ConventionProbeResult convention_probe(const ChainSpec& chain,
                                       const std::vector<double>& h_grid) {
  chain.validate();
  if (!chain.even() || chain.n_sites > 10)
    throw std::invalid_argument("convention_probe: even N <= 10 required");
  for (const double h : h_grid)
    if (!(h > 0.0 && h < 1.0))
      throw std::invalid_argument("convention_probe: h grid must lie in (0,1)");

  const int n = chain.n_sites;
  oracle::LoopSpec half_loop{M_PI, 1024, oracle::LoopSpec::Transport::parallel};
  oracle::LoopSpec full_loop{2.0 * M_PI, 1024,
                             oracle::LoopSpec::Transport::parallel};
  ConventionProbeResult res;
  for (const double h : h_grid) {
    const auto slice = oracle::ground_state(chain, ModelParams{0.0, h});
    const oracle::StateVector psi = slice.even_ground();
    // Per-site ground-state GP (extent pi), lifted through <Sz>; the total
    // phase is cross-checked against the discrete Pancharatnam product.
    const double beta_g_site =
        0.5 * M_PI * (1.0 - oracle::expectation_sz(psi) / n);
    const double total = oracle::pancharatnam_phase(psi, half_loop);
    if (std::abs(std::polar(1.0, n * beta_g_site) - std::polar(1.0, total)) >
        1e-6)
      throw std::runtime_error(
          "convention_probe: per-site lift disagrees with oracle phase");
    const auto [lam, xi_max] = oracle::exact_entanglement_eigenvalue(psi);
    // Product-state GP per site, measured on a single spin (no 2*pi wrap).
    const oracle::StateVector spin = oracle::product_state(1, xi_max);
    const double phi_p_half = oracle::pancharatnam_phase(spin, half_loop);
    const double phi_p_full = oracle::pancharatnam_phase(spin, full_loop);
    res.residual_half =
        std::max(res.residual_half, std::abs(beta_g_site - phi_p_half));
    res.residual_full =
        std::max(res.residual_full, std::abs(beta_g_site - phi_p_full));
  }
  const bool half_ok = res.residual_half < 1e-6;
  const bool full_ok = res.residual_full < 1e-6;
  if (!half_ok && !full_ok)
    throw std::runtime_error(
        "convention_probe: neither beta^p convention zeroes delta_beta on the "
        "XX line");
  res.discriminated = half_ok != full_ok;
  res.selected =
      half_ok ? BetaPConvention::half_loop : BetaPConvention::full_loop;
  return res;
}

}  // namespace analysis
}  // namespace xy
