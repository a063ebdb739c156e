#include "polycs/conjugate.hpp"

#include <cmath>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

constexpr double kDivergenceTol = 1e-12;

// e_{dim}^2 = C - g(j + dim - 1), the radicand just past the stored ladder.
// Only computable for reps built from a CasimirShift.
double next_radicand(const LowestWeightRep& rep) {
  return *rep.casimir - (*rep.g)(rep.j + rep.dim() - 1.0);
}

}  // namespace

double conjugate_shift(const LowestWeightRep& rep) { return 1.0 - rep.j; }

ConjugatePair canonical_conjugate_matrix(const LowestWeightRep& rep,
                                         double alpha) {
  const int d = rep.dim();

  // A finite-type rep makes F(C, N0) diverge on the highest state.
  if (rep.terminated) throw DivergentConjugateError(d - 1);
  if (rep.g) {
    const double top = next_radicand(rep);
    if (std::abs(top) <= kDivergenceTol * std::max(1.0, rep.g->max_abs_coeff()))
      throw DivergentConjugateError(d - 1);
  }

  ConjugatePair pair;
  pair.alpha = alpha;
  pair.rep = rep;
  pair.matrix = OperatorMatrix::Zero(d, d);
  for (int m = 0; m + 1 < d; ++m) {
    const double em1 = rep.e[static_cast<std::size_t>(m + 1)];
    if (em1 <= kDivergenceTol) throw DivergentConjugateError(m);
    pair.matrix(m + 1, m) = (rep.j + m + alpha) / em1;
  }
  return pair;
}

double ccr_residual(const ConjugatePair& pair) {
  const int d = pair.rep.dim();
  const GeneratorMatrices gen = generator_matrices(pair.rep);
  const OperatorMatrix comm = gen.minus * pair.matrix -
                              pair.matrix * gen.minus -
                              OperatorMatrix::Identity(d, d);
  return max_column_norm(comm, 0, d - 2);
}

double adjoint_ccr_residual(const ConjugatePair& pair) {
  const int d = pair.rep.dim();
  const GeneratorMatrices gen = generator_matrices(pair.rep);
  const OperatorMatrix dag = pair.matrix.adjoint();
  const OperatorMatrix comm =
      dag * gen.plus - gen.plus * dag - OperatorMatrix::Identity(d, d);
  return max_column_norm(comm, 0, d - 2);
}

LieMapping lie_mapping(const LowestWeightRep& rep, int b) {
  return lie_mapping_with_epsilon(rep, b, b * rep.j * (1.0 - rep.j));
}

LieMapping lie_mapping_with_epsilon(const LowestWeightRep& rep, int b,
                                    double epsilon) {
  const int d = rep.dim();
  LieMapping map;
  map.b = b;
  map.epsilon = epsilon;
  map.matrix = OperatorMatrix::Zero(d, d);
  // Column m = 0 stays zero: Nbar- must annihilate the lowest state.
  for (int m = 1; m < d; ++m) {
    const double em = rep.e[static_cast<std::size_t>(m)];
    if (em <= kDivergenceTol) throw DivergentMappingError(m);
    const double x = rep.j + m;
    map.matrix(m - 1, m) = ((x * x - x) * b + epsilon) / em;
  }
  return map;
}

double mapping_residual(const LieMapping& map, const LowestWeightRep& rep) {
  const int d = rep.dim();
  const GeneratorMatrices gen = generator_matrices(rep);
  const OperatorMatrix expr = gen.plus * map.matrix - map.matrix * gen.plus +
                              2.0 * static_cast<double>(map.b) * gen.n0;
  return max_column_norm(expr, 0, d - 2);
}

}  // namespace polycs
