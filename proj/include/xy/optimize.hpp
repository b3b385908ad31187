#pragma once

#include <cmath>

namespace xy {

struct MaxResult {
  double argmax = 0.0;
  double max = 0.0;
};

// Deterministic 1D maximization on [a, b]: coarse scan on an equispaced grid
// followed by golden-section refinement of the bracketing interval.  Ties
// break toward the smaller argument.  The objective need only be unimodal on
// the bracket selected by the scan; the scan itself guards against secondary
// local maxima.
template <class F>
MaxResult maximize_unimodal(F&& f, double a, double b, int coarse_points = 33,
                            double tol = 1e-10) {
  if (coarse_points < 3) coarse_points = 3;
  int best = 0;
  double fbest = f(a);
  for (int i = 1; i < coarse_points; ++i) {
    const double x = a + (b - a) * i / (coarse_points - 1);
    const double fx = f(x);
    if (fx > fbest) {  // strict: ties stay at the smaller argument
      fbest = fx;
      best = i;
    }
  }
  const double step = (b - a) / (coarse_points - 1);
  double lo = a + step * (best - 1);
  double hi = a + step * (best + 1);
  if (lo < a) lo = a;
  if (hi > b) hi = b;

  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {  // tie toward smaller argument
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return MaxResult{x, f(x)};
}

}  // namespace xy
