#include "doctest.h"

#include <cmath>
#include <random>

#include "polycs/coherent.hpp"
#include "polycs/conjugate.hpp"
#include "polycs/errors.hpp"
#include "test_helpers.hpp"

using namespace polycs;
using namespace polycs::testing;

// Generative check across the non-compact branch: random Casimir shifts of
// degree 2..4 with negative leading coefficient, random lowest weights.
// Draws whose ladder terminates inside the window are skipped; every
// successfully built rep must satisfy the whole identity stack.
TEST_CASE("random non-compact shifts satisfy the ladder identities") {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> jdist(0.1, 2.0);

  int built = 0;
  int attempts = 0;
  while (built < 25 && attempts < 500) {
    ++attempts;
    const int deg = 2 + (attempts % 3);
    std::vector<double> gc(static_cast<std::size_t>(deg) + 1);
    for (double& x : gc) x = coef(rng());
    gc.back() = -std::abs(gc.back()) - 0.1;
    const AlgebraSpec spec{"random", CasimirShift{gc}, ""};
    const double j = jdist(rng());

    LowestWeightRep rep;
    try {
      rep = build_lowest_weight_rep(spec, j, 16);
    } catch (const NonUnitaryError&) {
      continue;
    }
    ++built;

    CHECK(verify_closure(rep, spec.f()).max_residual <= 1e-12);

    ConjugatePair pair;
    try {
      pair = canonical_conjugate_matrix(rep, conjugate_shift(rep));
    } catch (const DivergentConjugateError&) {
      continue;  // terminates just past the window
    }
    CHECK(ccr_residual(pair) <= 1e-12);
    CHECK(adjoint_ccr_residual(pair) <= 1e-12);
    for (const int b : {1, -1})
      CHECK(mapping_residual(lie_mapping(rep, b), rep) <= 1e-12);

    // Eigenstate and construction equivalence whenever the window can
    // certify the tail for this draw.
    try {
      const Complex alpha{0.2 * coef(rng()), 0.2 * coef(rng())};
      if (alpha == Complex{0.0, 0.0}) continue;
      const CoherentState direct = annihilation_cs(rep, alpha, 1e-12);
      const CoherentState via_exp = exp_conjugate_cs(pair, alpha, 1e-12);
      CHECK(annihilation_residual(rep, direct) <= 1e-10);
      CHECK(max_rel_diff(direct.coeffs, via_exp.coeffs) <= 1e-12);
    } catch (const TailNotConvergentError&) {
    }
  }
  REQUIRE(built == 25);
}
