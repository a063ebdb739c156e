#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "polycs/polynomial.hpp"

namespace polycs {

using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Structure polynomial f of a deformed Cartan-Weyl triple:
//   [H, E+-] = +-E+-,  [E+, E-] = f(H).
using StructurePolynomial = Polynomial;

// Casimir-shift polynomial g, with f(x) = g(x) - g(x-1) and C = E-E+ + g(H).
// g is determined by f only up to an additive constant; the constant is
// whatever the caller supplies, and C(j) = g(j-1) absorbs it consistently.
using CasimirShift = Polynomial;

// A deformed algebra, defined entirely by its Casimir shift g. Single source
// of truth for all downstream matrix elements.
struct AlgebraSpec {
  std::string name;
  CasimirShift g;
  std::string description;

  StructurePolynomial f() const;
};

// Truncated lowest-weight ladder representation on basis |j,m>, m = 0..dim-1:
//   N0|j,m> = (j+m)|j,m>
//   N-|j,m> = e_m |j,m-1>        (e_0 = 0)
//   N+|j,m> = e_{m+1} |j,m+1>
// with e_m = sqrt(C(j) - g(j+m-1)) when built from a CasimirShift.
struct LowestWeightRep {
  double j = 0.0;
  std::vector<double> n0;  // n0[m], m = 0..dim-1
  std::vector<double> e;   // e[0] = 0, e[m] = e_m

  // Present when the rep was built from an AlgebraSpec.
  std::optional<double> casimir;
  std::optional<CasimirShift> g;

  // The ladder genuinely terminates inside the space (finite type), as
  // opposed to being cut off by the truncation.
  bool terminated = false;

  int dim() const { return static_cast<int>(n0.size()); }
};

// f(x) = g(x) - g(x-1), exact polynomial identity.
StructurePolynomial difference_of_g(const CasimirShift& g);

// The g of degree deg(f)+1 with g(x) - g(x-1) = f(x) and g(0) = anchor.
CasimirShift solve_g(const StructurePolynomial& f, double anchor);

// C(j) = g(j-1).
double casimir_value(const CasimirShift& g, double j);

// Builds the unitary truncated rep; throws NonUnitaryError{m} if the radicand
// C(j) - g(j+m-1) is not strictly positive at some m < dim.
LowestWeightRep build_lowest_weight_rep(const AlgebraSpec& spec, double j,
                                        int dim);

struct GeneratorMatrices {
  OperatorMatrix n0;
  OperatorMatrix plus;
  OperatorMatrix minus;
};

// Dense matrices of N0, N+, N- on the truncated basis. N- = N+^T (real e_m)
// and annihilates the first basis vector.
GeneratorMatrices generator_matrices(const LowestWeightRep& rep);

struct ClosureReport {
  double max_residual = 0.0;
  int interior_dim = 0;
};

// Max over interior basis states (columns 0..dim-2) of
// ||([N+,N-] - f(N0))|m>||, relative to the operator scale
// max(1, |f|, e_m^2): the commutator entries grow like e_m^2, so an
// absolute residual would be dominated by benign rounding at large dims.
// The last state is excluded: commutator identities cannot hold on the
// truncation edge.
ClosureReport verify_closure(const LowestWeightRep& rep,
                             const StructurePolynomial& f);

// Max over the given columns of the Euclidean column norm of expr.
double max_column_norm(const OperatorMatrix& expr, int first_col,
                       int last_col);

}  // namespace polycs
