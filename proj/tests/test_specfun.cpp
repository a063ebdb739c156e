#include "doctest.h"

#include <cmath>

#include "polycs/errors.hpp"
#include "polycs/specfun.hpp"
#include "test_helpers.hpp"

using namespace polycs;

TEST_CASE("ln_gamma at simple points") {
  CHECK(ln_gamma(1.0).log_abs == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ln_gamma(1.0).sign == 1.0);
  CHECK(ln_gamma(5.0).log_abs == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  // Gamma(-3/2) = 4 sqrt(pi)/3, positive.
  const SignedLogGamma g = ln_gamma(-1.5);
  CHECK(g.sign == 1.0);
  CHECK(g.log_abs ==
        doctest::Approx(std::log(4.0 * std::sqrt(M_PI) / 3.0)).epsilon(1e-13));
  // Gamma(-1/2) = -2 sqrt(pi), negative.
  CHECK(ln_gamma(-0.5).sign == -1.0);
}

TEST_CASE("ln_gamma poles") {
  CHECK_THROWS_AS(ln_gamma(0.0), PoleError);
  CHECK_THROWS_AS(ln_gamma(-3.0), PoleError);
}

TEST_CASE("ln_gamma recursion oracle") {
  // ln Gamma(x+1) = ln Gamma(x) + ln|x| with matching signs.
  for (const double x : {0.1, 0.7, 2.3, 17.5, -0.3, -2.7, -7.9, 41.25}) {
    const SignedLogGamma a = ln_gamma(x + 1.0);
    const SignedLogGamma b = ln_gamma(x);
    CHECK(a.log_abs == doctest::Approx(b.log_abs + std::log(std::abs(x)))
                           .epsilon(1e-12));
    CHECK(a.sign == doctest::Approx(b.sign * (x > 0 ? 1.0 : -1.0)));
  }
}

TEST_CASE("ln_gamma against the C library") {
  for (double x = 0.1; x <= 50.0; x += 0.7)
    CHECK(ln_gamma(x).log_abs ==
          doctest::Approx(std::lgamma(x)).epsilon(5e-14));
  for (double x = -49.75; x < 0.0; x += 1.0)
    CHECK(ln_gamma(x).log_abs ==
          doctest::Approx(std::lgamma(x)).epsilon(5e-13));
}

TEST_CASE("bessel_k half-order closed forms") {
  // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}.
  for (const double x : {1.0, 2.0}) {
    const double expected = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
    CHECK(bessel_k(0.5, x) == doctest::Approx(expected).epsilon(1e-12));
  }
  // K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x), from the recurrence.
  const double x = 2.0;
  const double expected =
      std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * (1.0 + 1.0 / x);
  CHECK(bessel_k(1.5, x) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bessel_k symmetry and recurrence") {
  CHECK(bessel_k(0.7, 1.3) == bessel_k(-0.7, 1.3));

  // K_{nu+1}(x) = K_{nu-1}(x) + (2 nu / x) K_nu(x).
  for (const double nu : {0.7, 1.0, 2.3}) {
    for (const double x : {0.05, 0.4, 1.3, 5.0, 18.0, 30.0}) {
      const double lhs = bessel_k(nu + 1.0, x);
      const double rhs = bessel_k(nu - 1.0, x) + 2.0 * nu / x * bessel_k(nu, x);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
    }
  }
  CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, -2.0), DomainError);
}

TEST_CASE("kummer_phi elementary closed forms") {
  CHECK(kummer_phi(1.7, 2.4, 0.0) == doctest::Approx(1.0));
  // Phi(1, 2, -r) = (1 - e^{-r})/r, valid in every evaluation regime.
  for (const double r : {1.0, 5.0, 20.0, 80.0, 600.0}) {
    const double expected = (1.0 - std::exp(-r)) / r;
    CHECK(kummer_phi(1.0, 2.0, -r) == doctest::Approx(expected).epsilon(1e-10));
  }
  // Polynomial case: Phi(-2, c, x) = 1 + (-2/c) x + ((-2)(-1)/(c(c+1))) x^2/2.
  const double c = 1.6, xx = -3.0;
  const double expected = 1.0 - 2.0 / c * xx + xx * xx / (c * (c + 1.0));
  CHECK(kummer_phi(-2.0, c, xx) == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(kummer_phi(1.0, 0.0, -1.0), PoleError);
  CHECK_THROWS_AS(kummer_phi(1.0, -2.0, -1.0), PoleError);
}

TEST_CASE("kummer transform consistency") {
  // Both evaluation paths agree where the direct series is still accurate.
  for (const double r : {3.0, 5.0, 7.0}) {
    const double direct = kummer_phi_series(2.2, 3.7, -r);
    const double transformed = std::exp(-r) * kummer_phi_series(1.5, 3.7, r);
    CHECK(direct == doctest::Approx(transformed).epsilon(1e-10));
    CHECK(kummer_phi(2.2, 3.7, -r) ==
          doctest::Approx(transformed).epsilon(1e-10));
  }
}

TEST_CASE("half-line quadrature examples") {
  const QuadratureResult simple =
      integrate_halfline([](double r) { return std::exp(-r); }, 1e-10);
  CHECK(simple.value == doctest::Approx(1.0).epsilon(1e-10));

  // Gamma-integral oracle: int r^3 e^{-2r} = 3!/2^4.
  const QuadratureResult moment = integrate_halfline(
      [](double r) { return r * r * r * std::exp(-2.0 * r); }, 1e-10);
  CHECK(moment.value == doctest::Approx(6.0 / 16.0).epsilon(1e-10));

  // int r K_{1/2}(2r) dr = pi / (8 sqrt(2)) by substituting the closed form.
  const QuadratureResult bk = integrate_halfline(
      [](double r) { return r <= 0.0 ? 0.0 : r * bessel_k(0.5, 2.0 * r); },
      1e-9);
  CHECK(bk.value == doctest::Approx(M_PI / (8.0 * std::sqrt(2.0))).epsilon(1e-8));

  // Algebraic decay: int dr/(1+r)^3 = 1/2.
  const QuadratureResult alg = integrate_halfline(
      [](double r) { return std::pow(1.0 + r, -3.0); }, 1e-9);
  CHECK(alg.value == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("quadrature refinement is consistent with its error estimate") {
  const auto f = [](double r) { return r * r * std::exp(-r) / (1.0 + r); };
  const QuadratureResult coarse = integrate_halfline(f, 1e-6);
  const QuadratureResult fine = integrate_halfline(f, 5e-7);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.error);
}

TEST_CASE("non-integrable tail is rejected") {
  CHECK_THROWS_AS(
      integrate_halfline([](double r) { return 1.0 / (1.0 + r); }, 1e-8),
      NonConvergentError);
}
