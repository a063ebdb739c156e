#pragma once

#include "polycs/algebra.hpp"

namespace polycs {

// Canonical conjugate of the lowering operator: Ntilde+ = N+ F(C, N0) with
// [N-, Ntilde+] = 1. An operator-valued function of N0 multiplying a ladder
// operator is evaluated at the N0 eigenvalue of the source state, so
// <m+1| Ntilde+ |m> = (j + m + alpha) / e_{m+1}.
struct ConjugatePair {
  double alpha = 0.0;
  OperatorMatrix matrix;  // Ntilde+
  LowestWeightRep rep;
};

// The sector constant alpha = 1 - j, the unique choice that extends
// [N-, Ntilde+] = 1 to the lowest-weight state.
double conjugate_shift(const LowestWeightRep& rep);

// Throws DivergentConjugateError on a terminating (finite-type) rep, where
// the conjugate diverges on the highest state.
ConjugatePair canonical_conjugate_matrix(const LowestWeightRep& rep,
                                         double alpha);

// max over interior states m = 0..dim-2 of ||([N-, Ntilde+] - 1)|m>||.
double ccr_residual(const ConjugatePair& pair);

// Adjoint relation: max interior ||([Ntilde+^dag, N+] - 1)|m>||.
double adjoint_ccr_residual(const ConjugatePair& pair);

// Mapping onto the undeformed algebra: Nbar- = N- G(C, N0) with
// [N+, Nbar-] = -2 b N0 (b = +1 target su(1,1), b = -1 target su(2)).
struct LieMapping {
  int b = 1;
  double epsilon = 0.0;
  OperatorMatrix matrix;  // Nbar-
};

// epsilon is fixed to b*j*(1-j) so the relation holds on the lowest state;
// off the vacuum it cancels identically.
LieMapping lie_mapping(const LowestWeightRep& rep, int b);
LieMapping lie_mapping_with_epsilon(const LowestWeightRep& rep, int b,
                                    double epsilon);

// max over interior states m = 0..dim-2 of ||([N+, Nbar-] + 2 b N0)|m>||.
double mapping_residual(const LieMapping& map, const LowestWeightRep& rep);

}  // namespace polycs
