#pragma once

#include <complex>
#include <optional>

#include "polycs/algebra.hpp"
#include "polycs/conjugate.hpp"

namespace polycs {

using Complex = std::complex<double>;

// Normalized coherent state over |j,m>, m = 0..truncation-1. The
// normalization constant is reported separately as log_norm (log of the
// unnormalized norm); all Gamma-laden constructions work in log space.
struct CoherentState {
  Complex eigenvalue{0.0, 0.0};
  StateVector coeffs;      // unit norm
  double log_norm = 0.0;   // ln of the norm before normalization
  int truncation = 0;
  double tail_bound = 0.0; // certified bound on the discarded |c|^2 fraction
};

// Displacement state U|j,0> with U = exp(xi N+ - conj(xi) N-).
struct PerelomovState {
  Complex xi{0.0, 0.0};
  StateVector coeffs;
  int truncation = 0;
};

// Dual (Yuen-type) state exp(nu N+)|j,0>: c_m = nu^m (prod_k e_k) / m!
// before normalization; eigenstate of the adjoint conjugate.
struct DualState {
  Complex nu{0.0, 0.0};
  StateVector coeffs;
  double log_norm = 0.0;
  int truncation = 0;
};

// Eigenstate of the lowering operator, N-|psi> = alpha|psi>, built by the
// stable recursion c_{m+1} = c_m alpha / e_{m+1}. The truncation N is chosen
// adaptively: the geometric ratio |alpha|/e_N must fall below 0.9 past the
// last growth point of e (certified via the root bound of the radicand
// polynomial when g is available), the discarded mass is bounded by tol^2,
// and the boundary coefficient is small enough that the eigenvalue residual
// is ~tol. Throws TailNotConvergentError if the rep dimension cannot certify
// the tail for this alpha.
CoherentState annihilation_cs(const LowestWeightRep& rep, Complex alpha,
                              double tol);

// Closed-form lowering-operator eigenstate of the pair-boson type rep with
// K0 eigenvalues -phi + m (phi < 0):
//   c_n ~ (sqrt(2) alpha)^n / sqrt(Gamma(n+1) Gamma(-2 phi + n)).
CoherentState closed_form_bg(double phi, Complex alpha, int N);

// Closed form for g(x) = -(x - eps)(x + 1/2)(x + 1 - eps), j = 1/2
// (eps < 1/2):  c_n ~ alpha^n / sqrt(Gamma(n+1/2-eps) Gamma(n+1)
// Gamma(n+3/2-eps)).
CoherentState closed_form_quadratic(double eps, Complex alpha, int N);

// exp(nu N+)|j,0> over the first N <= dim basis states. Throws
// NonNormalizableError when the coefficient magnitudes are still growing at
// the truncation edge (|nu| at or beyond the convergence radius).
DualState dual_cs(const LowestWeightRep& rep, Complex nu, int N);

// Matrix exponential (scaling and squaring) of xi N+ - conj(xi) N- applied
// to the lowest-weight vector. Throws TruncationError if the trailing
// coefficient exceeds 1e-10.
PerelomovState perelomov_cs(const LowestWeightRep& rep, Complex xi);

// Coefficients of exp(alpha Ntilde+)|j,0>, built by repeated application of
// the conjugate matrix. Must agree elementwise with annihilation_cs: the
// (j+k+alpha) numerators telescope into the n! of the exponential.
// Requires pair.alpha = 1 - j.
CoherentState exp_conjugate_cs(const ConjugatePair& pair, Complex alpha,
                               double tol);

struct StateStatistics {
  double mean_n0 = 0.0;
  double var_n0 = 0.0;
  // Mandel Q of the excitation number m = N0 - j; empty for the vacuum
  // (mean zero, Q undefined).
  std::optional<double> mandel_q;
};

// Moments of N0 in a normalized state; Q is computed w.r.t. the excitation
// number m.
StateStatistics state_statistics(const StateVector& coeffs, double j);

// ||N- psi - alpha psi|| with psi zero-padded to the rep dimension.
double annihilation_residual(const LowestWeightRep& rep,
                             const CoherentState& state);

// ||Ntilde+^dag psi - nu psi|| for a dual state, using the pair's conjugate.
double dual_adjoint_residual(const ConjugatePair& pair, const DualState& state);

}  // namespace polycs
