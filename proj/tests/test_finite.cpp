#include <cmath>
#include <doctest.h>
#include <stdexcept>

#include "xy/finite.hpp"
#include "xy/thermo.hpp"

using xy::ChainSpec;
using xy::ModelParams;

TEST_CASE("odd chains are rejected by the product formulas") {
  CHECK_THROWS_AS((xy::lambda_finite(ChainSpec{7}, 0.3, ModelParams{1.0, 0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS((xy::ge_per_site_finite(ChainSpec{5}, ModelParams{1.0, 0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS((xy::gp_per_site_finite(ChainSpec{9}, ModelParams{1.0, 0.5})),
                  std::invalid_argument);
  CHECK_THROWS_AS((xy::lambda_finite(ChainSpec{8}, -0.1, ModelParams{1.0, 0.5})),
                  std::domain_error);
}

TEST_CASE("per-mode log overlap converges to the thermodynamic density") {
  // (1/N) ln lambda_N(xi) is the midpoint rule for the mu-integral.
  const ModelParams p{1.0, 1.2};
  const double lam = xy::lambda_finite(ChainSpec{4096}, 0.4, p);
  CHECK(std::log(lam) / 4096 ==
        doctest::Approx(-0.030055079730332115642).epsilon(1e-6));
}

TEST_CASE("finite GE per site approaches the density") {
  const ModelParams p{1.0, 1.2};
  const double eps_inf = 0.0817879233356132;
  const double e2048 =
      xy::ge_per_site_finite(ChainSpec{2048}, p).epsilon_n;
  CHECK(e2048 == doctest::Approx(eps_inf).epsilon(1e-3));
  // Below the factorization field the midpoint sum converges slowly, so the
  // refinement is visible well above roundoff.
  const ModelParams q{1.0, 0.8};
  const double f_inf = 0.0044470308958829;
  const double f256 = xy::ge_per_site_finite(ChainSpec{256}, q).epsilon_n;
  const double f2048 = xy::ge_per_site_finite(ChainSpec{2048}, q).epsilon_n;
  CHECK(std::abs(f2048 - f_inf) < 0.5 * std::abs(f256 - f_inf));
}

TEST_CASE("finite geometric phase per site") {
  // N = 4, r = 1, h = 0: sin^2(3pi/8) + sin^2(pi/8) = 1.
  CHECK(xy::gp_per_site_finite(ChainSpec{4}, ModelParams{1.0, 0.0}) ==
        doctest::Approx(M_PI / 2).epsilon(1e-14));
  // Large-N value approaches the density integral.
  CHECK(xy::gp_per_site_finite(ChainSpec{4096}, ModelParams{1.0, 0.8}) ==
        doctest::Approx(0.873245147781641815).epsilon(1e-5));
}

TEST_CASE("XX chain maximizer is exactly the filling fraction") {
  // r = 0, h = 0.5, N = 8: one filled mode pair, sin^2(xi/2) = 1/4.
  const xy::FiniteGERecord rec =
      xy::ge_per_site_finite(ChainSpec{8}, ModelParams{0.0, 0.5});
  CHECK(rec.xi_max == doctest::Approx(M_PI / 3).epsilon(1e-8));
}

TEST_CASE("finite_record consistency") {
  const ChainSpec chain{12};
  const ModelParams p{0.8, 1.1};
  const xy::FiniteGERecord rec =
      xy::finite_record(chain, p, xy::BetaPConvention::half_loop);
  CHECK(rec.n_sites == 12);
  CHECK(rec.lambda_max ==
        doctest::Approx(xy::lambda_finite(chain, rec.xi_max, p))
            .epsilon(1e-12));
  CHECK(rec.epsilon_n ==
        doctest::Approx(-2.0 / 12 * std::log2(rec.lambda_max))
            .epsilon(1e-12));
  CHECK(rec.beta_g_n == doctest::Approx(xy::gp_per_site_finite(chain, p)));
  const double s = std::sin(0.5 * rec.xi_max);
  CHECK(rec.beta_p_n == doctest::Approx(M_PI * s * s));
  CHECK(rec.complex_ge_n.imag() ==
        doctest::Approx(-(rec.beta_g_n - rec.beta_p_n) / std::log(2.0)));
}
