#pragma once

#include <cmath>
#include <cstdlib>

namespace xy {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(F&& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - half * kGK15Nodes[i]);
    fv[14 - i] = f(c + half * kGK15Nodes[i]);
  }
  fv[7] = f(c);
  double resk = kGK15WeightsK[7] * fv[7];
  double resg = kGK15WeightsG[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    resk += kGK15WeightsK[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * (fv[i] + fv[14 - i]);
  }
  result = resk * half;
  err = std::abs((resk - resg) * half);
}

template <class F>
inline void adapt(F&& f, double a, double b, double tol, int depth,
                  int max_depth, double& sum, double& err_sum) {
  double r, e;
  gk15(f, a, b, r, e);
  // The Kronrod-Gauss difference bottoms out at roundoff (~eps * |integral|);
  // refining past that floor cannot reduce it and must not recurse.
  const double floor = 64.0 * 1e-16 * std::abs(r);
  if (e <= tol || e <= floor || depth >= max_depth) {
    sum += r;
    err_sum += e;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, sum, err_sum);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, sum, err_sum);
}

}  // namespace detail

// Adaptive Gauss-Kronrod on [a, b] to absolute tolerance abs_tol.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              int max_depth = 60) {
  QuadResult q;
  double err = 0.0;
  detail::adapt(f, a, b, abs_tol, 0, max_depth, q.value, err);
  q.error_estimate = err;
  q.converged = err <= 10.0 * abs_tol;
  return q;
}

// Integral over (0, b] with a geometrically graded mesh accumulating toward
// the lower endpoint (panel boundaries b/2^k), absorbing an integrable
// logarithmic singularity at 0.  Each panel is handled adaptively; the nodes
// never touch mu = 0.
template <class F>
QuadResult integrate_graded(F&& f, double b, double abs_tol, int levels = 60,
                            int max_depth = 60) {
  QuadResult q;
  double err = 0.0;
  double hi = b;
  const double panel_tol = abs_tol / (levels + 1);
  for (int k = 0; k < levels; ++k) {
    const double lo = hi * 0.5;
    detail::adapt(f, lo, hi, panel_tol, 0, max_depth, q.value, err);
    hi = lo;
  }
  // Remaining sliver [0, b/2^levels]; GK nodes are interior so an endpoint
  // log singularity is never evaluated, and its contribution is ~1e-17.
  detail::adapt(f, 0.0, hi, panel_tol, 0, max_depth, q.value, err);
  q.error_estimate = err;
  q.converged = err <= 10.0 * abs_tol;
  return q;
}

}  // namespace xy
