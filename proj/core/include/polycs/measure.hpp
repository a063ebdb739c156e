#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polycs/specfun.hpp"

namespace polycs {

// Radial density sigma(r) of a candidate resolution-of-identity measure,
// d(measure) = sigma(r) r dr dtheta.
struct MeasureSpec {
  std::function<double(double)> density;
  std::string label;
  std::vector<double> params;
};

// Target moment sequence mu_n = 2 pi int_0^inf sigma(r) r^{2n+1} dr, up to a
// common normalization fixed at n = 0.
struct MomentSequence {
  std::vector<double> values;
  std::string definition;
};

// Radial density whose moments are Gamma(n+1) Gamma(-2 phi + n) / Gamma(-2 phi):
//   sigma(r) = r^(-2 phi - 1) K_{|2 phi + 1|}(2 r),  phi < 0.
// The overall constant is fixed by the n = 0 moment during verification.
MeasureSpec bg_measure(double phi);

// mu_n = Gamma(n+1) Gamma(-2 phi + n) / Gamma(-2 phi), n = 0..n_max.
MomentSequence bg_moments(double phi, int n_max);

// mu_n = Gamma(n+1) Gamma(1/2 - eps + n) Gamma(3/2 - eps + n) /
//        (Gamma(1/2 - eps) Gamma(3/2 - eps)), n = 0..n_max.
MomentSequence quadratic_moments(double eps, int n_max);

struct MomentReport {
  std::vector<int> n;
  std::vector<double> computed;   // after normalization at n = 0
  std::vector<double> target;
  std::vector<double> rel_error;
  std::vector<double> quad_error; // scaled quadrature error estimates
};

// Computes 2 pi int sigma(r) r^{2n+1} dr by half-line quadrature for each n
// and reports relative errors against the target after normalizing at n = 0.
MomentReport verify_measure_moments(const MeasureSpec& measure,
                                    const MomentSequence& target, double tol);

// Relative error of the Mellin identity
//   int_0^inf r^{b-1} Phi(a, c, -r) dr
//     = Gamma(b) Gamma(c) Gamma(a-b) / (Gamma(a) Gamma(c-b))
// for 0 < b < a; quadrature on the left, log-Gamma on the right.
double kummer_mellin_check(double a, double b, double c);

// Candidate closed form for the cubic-moment measure:
//   sigma(r; p, a, c, s) = r^p Phi(a, c, -s r^2).
// Parameters are fixed by matching the moment ratios n = 0..3 of
// quadratic_moments(eps) (Gauss-Newton on log ratios, using the analytic
// Mellin transform of the candidate), then validated against n = 4..8.
// resolved = false marks the closed form unresolved; the moment data is
// still usable either way.
struct QuadraticMeasureFit {
  double p = 0.0, a = 0.0, c = 0.0, s = 1.0;
  std::vector<double> fit_rel_error;        // n = 1..3 ratio match
  std::vector<double> validation_rel_error; // n = 4..8 moments vs target
  bool resolved = false;
};
QuadraticMeasureFit fit_quadratic_measure(double eps);

// Analytic moments of the candidate density (via the Mellin transform of
// Phi), normalized at n = 0; NaN where the Mellin integral diverges.
// Used by the fit and exposed for tests.
std::vector<double> candidate_measure_moments(double p, double a, double c,
                                              double s, int n_max);

}  // namespace polycs
