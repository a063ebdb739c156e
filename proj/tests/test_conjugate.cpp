#include "doctest.h"

#include <cmath>

#include "polycs/conjugate.hpp"
#include "polycs/errors.hpp"
#include "test_helpers.hpp"

using namespace polycs;
using namespace polycs::testing;

TEST_CASE("conjugate_shift sector constants") {
  const AlgebraSpec spec = su11_spec();
  CHECK(conjugate_shift(build_lowest_weight_rep(spec, 0.25, 8)) ==
        doctest::Approx(0.75));
  CHECK(conjugate_shift(build_lowest_weight_rep(spec, 0.75, 8)) ==
        doctest::Approx(0.25));
  CHECK(conjugate_shift(build_lowest_weight_rep(su11_bg_spec(), 1.0, 8)) ==
        doctest::Approx(0.0));
}

TEST_CASE("canonical conjugate matrix elements") {
  const LowestWeightRep rep = build_lowest_weight_rep(su11_bg_spec(), 1.0, 8);
  // alpha = 0 = 1 - j here: <1|Nt+|0> = (j + 0 + alpha)/e_1 = 1.
  const ConjugatePair pair = canonical_conjugate_matrix(rep, 0.0);
  CHECK(std::abs(pair.matrix(1, 0) - 1.0) <= 1e-14);

  // With alpha = 1 - j the first element is always 1/e_1.
  const LowestWeightRep quad =
      build_lowest_weight_rep(quadratic_spec(-0.5), 0.5, 8);
  const ConjugatePair qpair =
      canonical_conjugate_matrix(quad, conjugate_shift(quad));
  CHECK(std::abs(qpair.matrix(1, 0) - 1.0 / quad.e[1]) <= 1e-14);
}

TEST_CASE("finite-type rep diverges") {
  // Spin-1 ladder of g = x(x+1): builds at dim 3, but the conjugate is
  // undefined because the denominator vanishes on the highest state.
  const LowestWeightRep spin1 = build_lowest_weight_rep(su2_spec(), -1.0, 3);
  CHECK_THROWS_AS(canonical_conjugate_matrix(spin1, conjugate_shift(spin1)),
                  DivergentConjugateError);
}

TEST_CASE("ccr residual") {
  const LowestWeightRep rep = build_lowest_weight_rep(su11_bg_spec(), 1.0, 32);
  const ConjugatePair pair = canonical_conjugate_matrix(rep, 0.0);
  CHECK(ccr_residual(pair) <= 1e-12);

  // Minimal admissible dimension.
  const LowestWeightRep small = build_lowest_weight_rep(su11_bg_spec(), 1.0, 3);
  CHECK(ccr_residual(canonical_conjugate_matrix(small, 0.0)) <= 1e-12);
}

TEST_CASE("alpha shifts the vacuum component only") {
  const LowestWeightRep rep = build_lowest_weight_rep(su11_bg_spec(), 1.0, 16);
  const GeneratorMatrices gen = generator_matrices(rep);
  const ConjugatePair pair = canonical_conjugate_matrix(rep, 0.5);  // 1-j+0.5
  const OperatorMatrix comm = gen.minus * pair.matrix -
                              pair.matrix * gen.minus -
                              OperatorMatrix::Identity(16, 16);
  CHECK(comm.col(0).norm() == doctest::Approx(0.5).epsilon(1e-12));
  for (int m = 1; m <= 14; ++m) CHECK(comm.col(m).norm() <= 1e-12);
}

TEST_CASE("alpha cancellation property") {
  for (const double alpha : {-1.0, 0.0, 0.37, 2.0}) {
    const LowestWeightRep rep =
        build_lowest_weight_rep(quadratic_spec(0.0), 0.5, 16);
    const GeneratorMatrices gen = generator_matrices(rep);
    const ConjugatePair pair = canonical_conjugate_matrix(rep, alpha);
    const OperatorMatrix comm = gen.minus * pair.matrix -
                                pair.matrix * gen.minus -
                                OperatorMatrix::Identity(16, 16);
    for (int m = 1; m <= 14; ++m) CHECK(comm.col(m).norm() <= 1e-12);
  }
}

TEST_CASE("adjoint duality") {
  for (const AlgebraSpec& spec :
       {su11_bg_spec(), quadratic_spec(-0.5), higgs_spec(1.0, 0.1)}) {
    const double j = (spec.name == "quadratic") ? 0.5 : 1.0;
    const LowestWeightRep rep = build_lowest_weight_rep(spec, j, 24);
    const ConjugatePair pair =
        canonical_conjugate_matrix(rep, conjugate_shift(rep));
    CHECK(adjoint_ccr_residual(pair) <= 1e-12);
  }
}

TEST_CASE("specialization to (K0 + alpha)/(K- K+)") {
  for (const double j : {0.25, 0.75}) {
    const LowestWeightRep rep = build_lowest_weight_rep(su11_spec(), j, 16);
    const GeneratorMatrices gen = generator_matrices(rep);
    const double alpha = conjugate_shift(rep);
    const ConjugatePair pair = canonical_conjugate_matrix(rep, alpha);

    // F = (K0 + alpha)/(K- K+) evaluated on the source state.
    const OperatorMatrix kmkp = gen.minus * gen.plus;
    OperatorMatrix f_mat = OperatorMatrix::Zero(16, 16);
    for (int m = 0; m < 15; ++m)
      f_mat(m, m) = (rep.n0[static_cast<std::size_t>(m)] + alpha) /
                    kmkp(m, m).real();
    const OperatorMatrix expected = gen.plus * f_mat;
    CHECK((pair.matrix.leftCols(15) - expected.leftCols(15))
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
  }
}

TEST_CASE("lie mapping onto the undeformed ladder") {
  // For g = -x(x+1), b = +1, the mapping is the identity on N-.
  const LowestWeightRep rep = build_lowest_weight_rep(su11_spec(), 0.25, 16);
  const LieMapping map = lie_mapping(rep, 1);
  const GeneratorMatrices gen = generator_matrices(rep);
  CHECK((map.matrix - gen.minus).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK(mapping_residual(map, rep) <= 1e-12);
}

TEST_CASE("epsilon is fixed by the lowest state") {
  const LowestWeightRep rep = build_lowest_weight_rep(su11_bg_spec(), 1.0, 8);
  CHECK(lie_mapping(rep, 1).epsilon == doctest::Approx(0.0));  // j(1-j) = 0

  const LowestWeightRep quarter =
      build_lowest_weight_rep(su11_spec(), 0.25, 8);
  CHECK(lie_mapping(quarter, 1).epsilon ==
        doctest::Approx(0.25 * 0.75));
}

TEST_CASE("lie mapping residuals for deformed cases") {
  const LowestWeightRep quad =
      build_lowest_weight_rep(quadratic_spec(-0.5), 0.5, 24);
  CHECK(mapping_residual(lie_mapping(quad, 1), quad) <= 1e-12);

  const LowestWeightRep higgs =
      build_lowest_weight_rep(higgs_spec(1.0, 0.1), 1.0, 24);
  CHECK(mapping_residual(lie_mapping(higgs, 1), higgs) <= 1e-12);
}

TEST_CASE("epsilon cancellation off the vacuum") {
  const LowestWeightRep rep =
      build_lowest_weight_rep(quadratic_spec(-0.5), 0.5, 16);
  const GeneratorMatrices gen = generator_matrices(rep);
  for (const double shift : {-3.0, 1.0, 0.42}) {
    const double eps0 = 1 * rep.j * (1.0 - rep.j);
    const LieMapping map = lie_mapping_with_epsilon(rep, 1, eps0 + shift);
    const OperatorMatrix expr = gen.plus * map.matrix -
                                map.matrix * gen.plus + 2.0 * gen.n0;
    CHECK(expr.col(0).norm() == doctest::Approx(std::abs(shift)).epsilon(1e-10));
    for (int m = 1; m <= 14; ++m) CHECK(expr.col(m).norm() <= 1e-12);
  }
}

TEST_CASE("flipped target sign is detected") {
  const LowestWeightRep rep = build_lowest_weight_rep(su11_bg_spec(), 1.0, 12);
  LieMapping map = lie_mapping(rep, 1);
  map.b = -1;  // wrong target after construction
  // The residual expression becomes -4 N0 on the interior.
  double expected = 0.0;
  for (int m = 0; m <= rep.dim() - 2; ++m)
    expected = std::max(expected, 4.0 * std::abs(rep.n0[std::size_t(m)]));
  CHECK(mapping_residual(map, rep) == doctest::Approx(expected).epsilon(1e-10));
}
