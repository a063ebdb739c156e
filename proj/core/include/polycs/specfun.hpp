#pragma once

#include <functional>

namespace polycs {

// log|Gamma(x)| together with the sign of Gamma(x).
struct SignedLogGamma {
  double log_abs = 0.0;
  double sign = 1.0;
};

// Lanczos approximation for x >= 0.5, reflection formula for x < 0.5.
// Throws PoleError at non-positive integers. Relative accuracy ~1e-14 on the
// log scale for |x| <= 50.
SignedLogGamma ln_gamma(double x);

// Gamma(x) by exponentiating ln_gamma; overflows to +-inf past x ~ 171.
double gamma_fn(double x);

// Modified Bessel function K_nu(x) for x > 0, any real nu, via the integral
// representation  K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
// evaluated with a refining trapezoid rule (the integrand is even and decays
// super-exponentially). Relative accuracy ~1e-12 for 0.05 <= x <= 30,
// |nu| <= 5. Throws DomainError for x <= 0.
double bessel_k(double nu, double x);

// Kummer confluent hypergeometric Phi(a, c, x) = 1F1(a; c; x) for x <= 0.
// Direct power series for small |x|; the Kummer transform
// Phi(a,c,-r) = exp(-r) Phi(c-a, c, r) for moderate r (the direct alternating
// series loses ~r/ln(10) digits to cancellation, so the switch happens well
// below the naive threshold); large-r asymptotic expansion beyond.
// Throws PoleError when c is a non-positive integer.
double kummer_phi(double a, double c, double x);

// Raw power series evaluation of Phi(a, c, x); exposed for the dual-path
// consistency checks. Accurate only for |x| small (cancellation grows like
// e^{|x|} for x < 0).
double kummer_phi_series(double a, double c, double x);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate plus certified tail bound
  int evaluations = 0;
};

// Integral of f over (0, inf) for integrands with exponential or
// algebraic-times-exponential (or plain algebraic, p > 1) decay. Adaptive
// Gauss-Kronrod 15(7) panels on [0, R]; R is grown until a certified tail
// bound (exponential or power-law majorant fitted from samples) fits in the
// tolerance budget. Mixed tolerance: error <= tol * max(1, |I|).
// Throws NonConvergentError when no tail certificate can be established.
QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    double tol);

}  // namespace polycs
