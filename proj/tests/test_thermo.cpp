#include <cmath>
#include <doctest.h>
#include <limits>
#include <stdexcept>

#include "xy/thermo.hpp"

using xy::BetaPConvention;
using xy::ModelParams;

// Reference values below were frozen from 200-digit arbitrary-precision
// evaluations of the closed-form integrals.

TEST_CASE("ge_integrand log-safe evaluation near mu = 0") {
  CHECK(xy::ge_integrand(1e-6, 0.3, ModelParams{1.0, 0.5}) ==
        doctest::Approx(8.869035070134951404417629).epsilon(1e-14));
  CHECK_THROWS_AS((xy::ge_integrand(0.0, 0.3, ModelParams{1.0, 0.5})),
                  std::domain_error);
  CHECK_THROWS_AS((xy::ge_integrand(0.2, 3.5, ModelParams{1.0, 0.5})),
                  std::domain_error);
}

TEST_CASE("log_overlap_density reference value") {
  CHECK(xy::log_overlap_density(0.4, ModelParams{1.0, 1.2}) ==
        doctest::Approx(-0.030055079730332115642).epsilon(1e-10));
  // XX line at xi = 0 with h < 1: the overlap collapses (cos theta rounds to
  // ~6e-17 on the filled arc), so the log-density is far below any maximum.
  CHECK(xy::log_overlap_density(0.0, ModelParams{0.0, 0.5}) < -5.0);
}

TEST_CASE("ge_density anchors across the factorization field") {
  const xy::GEResult above = xy::ge_density(ModelParams{1.0, 1.2});
  CHECK(above.xi_max < 1e-6);  // beyond h_s the maximizer collapses to 0
  CHECK(above.epsilon == doctest::Approx(0.0817879233356132).epsilon(1e-9));

  const xy::GEResult mid = xy::ge_density(ModelParams{1.0, 0.8});
  CHECK(mid.xi_max == doctest::Approx(1.11089757486112).epsilon(1e-7));
  CHECK(mid.epsilon == doctest::Approx(0.0044470308958829).epsilon(1e-7));

  const xy::GEResult low = xy::ge_density(ModelParams{1.0, 0.5});
  CHECK(low.xi_max == doctest::Approx(1.30916685874727).epsilon(1e-7));
  CHECK(low.epsilon == doctest::Approx(0.000433177223734732).epsilon(1e-6));

  // h = 0 ground state is a product state: zero GE, xi_max = pi/2.
  const xy::GEResult zero = xy::ge_density(ModelParams{1.0, 0.0});
  CHECK(zero.epsilon == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(zero.xi_max == doctest::Approx(M_PI / 2).epsilon(1e-8));
}

TEST_CASE("ground-state geometric phase density anchors") {
  CHECK(xy::gp_density_ground(ModelParams{1.0, 0.0}) ==
        doctest::Approx(M_PI / 2).epsilon(1e-10));
  CHECK(xy::gp_density_ground(ModelParams{0.0, 0.5}) ==
        doctest::Approx(M_PI / 3).epsilon(1e-10));
  CHECK(xy::gp_density_ground(ModelParams{1.0, 0.8}) ==
        doctest::Approx(0.873245147781641815).epsilon(1e-10));
  CHECK(xy::gp_density_ground(ModelParams{1.0, 1.2}) ==
        doctest::Approx(0.325827069577444531).epsilon(1e-10));
  // On the XX line the density reduces to arccos(min(h, 1)).
  for (const double h : {0.1, 0.35, 0.9, 1.3}) {
    CHECK(xy::gp_density_ground(ModelParams{0.0, h}) ==
          doctest::Approx(std::acos(std::min(h, 1.0))).epsilon(1e-9));
  }
}

TEST_CASE("geometric-phase difference vanishes on the XX line (half loop)") {
  for (const double h : {0.25, 0.5, 0.75, 1.5}) {
    const xy::GPDensities d =
        xy::gp_delta(ModelParams{0.0, h}, BetaPConvention::half_loop);
    CHECK(std::abs(d.delta_beta) < 1e-8);
  }
  // The doubled closed form does not vanish below the transition.
  const xy::GPDensities full =
      xy::gp_delta(ModelParams{0.0, 0.5}, BetaPConvention::full_loop);
  CHECK(std::abs(full.delta_beta) > 0.1);
}

TEST_CASE("thermo_record is internally consistent") {
  const ModelParams p{0.6, 0.9};
  const xy::GeometricRecord rec =
      xy::thermo_record(p, BetaPConvention::half_loop);
  const xy::GEResult ge = xy::ge_density(p);
  CHECK(rec.epsilon == doctest::Approx(ge.epsilon).epsilon(1e-12));
  CHECK(rec.xi_max == doctest::Approx(ge.xi_max).epsilon(1e-9));
  const double s = std::sin(0.5 * rec.xi_max);
  CHECK(rec.beta_p == doctest::Approx(M_PI * s * s));
  CHECK(rec.delta_beta == doctest::Approx(rec.beta_g - rec.beta_p));
  CHECK(rec.eps_c.real() == doctest::Approx(rec.epsilon));
  CHECK(rec.eps_c.imag() ==
        doctest::Approx(-rec.delta_beta / std::log(2.0)));
  CHECK(xy::complex_ge_density(p, BetaPConvention::half_loop).value ==
        rec.eps_c);
}
