#include "doctest.h"

#include <cmath>

#include "polycs/coherent.hpp"
#include "polycs/conjugate.hpp"
#include "polycs/errors.hpp"
#include "polycs/realizations.hpp"
#include "test_helpers.hpp"

using namespace polycs;
using namespace polycs::testing;

TEST_CASE("multimode fock indexing and mode operators") {
  const MultimodeFock space({2, 3});
  CHECK(space.dim() == 12);
  for (int i = 0; i < space.dim(); ++i)
    CHECK(space.index(space.occupation(i)) == i);

  const OperatorMatrix a = space.annihilator(1);
  const OperatorMatrix n = space.number_op(1);
  // a^dag a = n on the full space; a a^dag = n+1 away from the cutoff.
  CHECK((a.adjoint() * a - n).cwiseAbs().maxCoeff() <= 1e-14);
  const std::vector<int> occ{1, 2};
  const int idx = space.index(occ);
  CHECK(std::abs((a * OperatorMatrix::Identity(12, 12).col(idx)).norm() -
                 std::sqrt(2.0)) <= 1e-14);
}

TEST_CASE("trilinear generators") {
  const RealizedGenerators gen =
      trilinear_generators({3, 3, 3}, {1.0, 0.9, 0.8}, 0.1);
  CHECK(hermiticity_residual(gen) <= 1e-14);
  CHECK(ladder_commutator_residual(gen, 1.0) <= 1e-12);
  CHECK(charge_commutation_residual(gen) <= 1e-12);

  // N- annihilates the joint vacuum.
  CHECK(gen.minus.col(0).norm() == 0.0);

  // [N+, N-] commutes with N0 and both conserved charges on the interior.
  for (const OperatorMatrix* q : {&gen.n0, &gen.charges[0], &gen.charges[1]}) {
    const OperatorMatrix comm = gen.plus * gen.minus - gen.minus * gen.plus;
    CHECK(interior_residual(comm * (*q) - (*q) * comm, gen, 1) <= 1e-12);
  }
}

TEST_CASE("trilinear sector ladder from direct operator application") {
  const RealizedGenerators gen =
      trilinear_generators({5, 5, 5}, {1.0, 1.0, 1.0}, 0.1);
  // Through |q,0,0> with q = 2: N+ |q-m,m,m> has amplitude
  // sqrt(q-m) (m+1), so e_m = m sqrt(q - m + 1).
  const SectorReduction red = sector_reduce(gen, gen.charges, {2.0, 0.0});
  CHECK(red.rep.dim() == 3);
  CHECK(red.rep.e[1] == doctest::Approx(1.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(red.rep.e[2] == doctest::Approx(2.0 * std::sqrt(1.0)).epsilon(1e-12));
  CHECK(red.roundtrip_residual <= 1e-10);
  CHECK(red.rep.terminated);

  // A genuinely terminating ladder has no canonical conjugate.
  CHECK_THROWS_AS(canonical_conjugate_matrix(red.rep, conjugate_shift(red.rep)),
                  DivergentConjugateError);

  // e_1 = 1 for the sector through |1,0,0>.
  const SectorReduction one = sector_reduce(gen, gen.charges, {1.0, 0.0});
  CHECK(one.rep.e[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trilinear commutator closes quadratically per sector") {
  const RealizedGenerators gen =
      trilinear_generators({4, 4, 4}, {1.0, 0.9, 0.8}, 0.1);
  const std::vector<SectorFit> fits = commutator_sector_fits(gen, 2);
  CHECK(!fits.empty());
  for (const SectorFit& f : fits) CHECK(f.residual <= 1e-10);
}

TEST_CASE("anharmonic generators") {
  const RealizedGenerators gen = anharmonic_generators(6, 12);
  CHECK(hermiticity_residual(gen) <= 1e-14);
  // H commutes with the ladder exactly, cutoff edges included.
  CHECK((gen.h * gen.plus - gen.plus * gen.h).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((gen.h * gen.minus - gen.minus * gen.h).cwiseAbs().maxCoeff() <= 1e-12);
  // The ladder moves this N0 by two.
  CHECK(ladder_commutator_residual(gen, 2.0) <= 1e-12);
  // Structure polynomial and J-basis identities.
  CHECK(anharmonic_f_identity_residual(gen) <= 1e-12);
  CHECK(anharmonic_jbasis_residual(gen) <= 1e-12);
  // Vacuum is annihilated.
  CHECK(gen.minus.col(0).norm() == 0.0);
}

TEST_CASE("multiphoton generators") {
  const RealizedGenerators gen =
      multiphoton_generators(1, 2, {6, 6}, {1.0, 0.5}, 0.1);
  CHECK(hermiticity_residual(gen) <= 1e-14);
  CHECK((gen.plus - gen.minus.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ladder_commutator_residual(gen, 1.0) <= 1e-12);
  CHECK(charge_commutation_residual(gen) <= 1e-12);
  CHECK(gen.minus.col(0).norm() == 0.0);

  // Cross-construction: same modes, m = 1, n = 2 against the anharmonic
  // builder. The multiphoton N+ is the anharmonic N- and the Cartans are
  // related by N0_mp = H/6 - N0_anh/2.
  const RealizedGenerators anh = anharmonic_generators(6, 6);
  CHECK((gen.plus - anh.minus).cwiseAbs().maxCoeff() <= 1e-14);
  const OperatorMatrix expected_n0 = anh.h / 6.0 - anh.n0 / 2.0;
  CHECK((gen.n0 - expected_n0).cwiseAbs().maxCoeff() <= 1e-13);

  // Degree m+n-1 sectorwise polynomial closure.
  for (const SectorFit& f : commutator_sector_fits(gen, 2))
    CHECK(f.residual <= 1e-10);
}

TEST_CASE("beam-splitter case closes linearly") {
  const RealizedGenerators gen =
      multiphoton_generators(1, 1, {5, 5}, {1.0, 1.0}, 0.2);
  for (const SectorFit& f : commutator_sector_fits(gen, 1))
    CHECK(f.residual <= 1e-10);
}

TEST_CASE("dicke generators") {
  const RealizedGenerators gen = dicke_generators(2, 2, 8, 0.7, 1.0, 0.2);
  CHECK(hermiticity_residual(gen) <= 1e-14);
  CHECK(ladder_commutator_residual(gen, 1.0) <= 1e-12);
  CHECK(charge_commutation_residual(gen) <= 1e-12);

  // H = a N0 + b N+ + c N- + const exactly on every charge sector, with
  // a = 2 w - eps, b = c = kappa for n_photon = 2. The coefficients are
  // identifiable only on sectors where the ladder part is nonzero.
  for (const HSectorFit& f : h_decomposition_fits(gen)) {
    CHECK(f.residual <= 1e-10);
    if (f.sector_dim >= 3) {
      CHECK(f.a == doctest::Approx(2.0 * 1.0 - 0.7).epsilon(1e-9));
      CHECK(f.b == doctest::Approx(0.2).epsilon(1e-9));
      CHECK(f.c == doctest::Approx(0.2).epsilon(1e-9));
    }
  }

  // kappa = 0: H is diagonal and the fit is exact.
  const RealizedGenerators free = dicke_generators(2, 2, 8, 0.7, 1.0, 0.0);
  for (const HSectorFit& f : h_decomposition_fits(free))
    CHECK(f.residual <= 1e-12);
}

TEST_CASE("single-atom dicke closes quadratically per sector") {
  const RealizedGenerators gen = dicke_generators(1, 1, 8, 0.7, 1.0, 0.15);
  for (const SectorFit& f : commutator_sector_fits(gen, 2))
    CHECK(f.residual <= 1e-10);

  // Oracle: on |dn,k> the diagonal of [N+,N-] is k; on |up,k> it is -(k+1).
  const OperatorMatrix comm = gen.plus * gen.minus - gen.minus * gen.plus;
  const int atoms = 2;
  for (int k = 0; k <= 6; ++k) {
    const int down = k * atoms + 0;
    const int up = k * atoms + 1;
    CHECK(comm(down, down).real() == doctest::Approx(k).epsilon(1e-12));
    CHECK(comm(up, up).real() == doctest::Approx(-(k + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("multi-atom sector is not a single ladder") {
  const RealizedGenerators gen = dicke_generators(2, 1, 8, 0.7, 1.0, 0.2);
  // Q = S0 + n_field = 1 contains both |up dn,1>-type states and |up up,0>.
  CHECK_THROWS_AS(sector_reduce(gen, gen.charges, {1.0}), NonLadderError);
}

TEST_CASE("oscillator parity sectors") {
  const RealizedGenerators gen = oscillator_su11_generators(128);
  CHECK(hermiticity_residual(gen) <= 1e-14);
  CHECK(ladder_commutator_residual(gen, 1.0) <= 1e-12);

  const SectorReduction even = sector_reduce(gen, gen.charges, {1.0});
  CHECK(even.rep.j == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(conjugate_shift(even.rep) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(even.roundtrip_residual <= 1e-10);
  CHECK(!even.rep.terminated);

  const SectorReduction odd = sector_reduce(gen, gen.charges, {-1.0});
  CHECK(odd.rep.j == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(conjugate_shift(odd.rep) == doctest::Approx(0.25).epsilon(1e-12));

  // Extracted ladder elements match the abstract g = -x(x+1) rep.
  const LowestWeightRep abstract =
      build_lowest_weight_rep(su11_spec(), 0.25, even.rep.dim());
  for (int m = 1; m < even.rep.dim(); ++m)
    CHECK(even.rep.e[static_cast<std::size_t>(m)] ==
          doctest::Approx(abstract.e[static_cast<std::size_t>(m)])
              .epsilon(1e-11));
}

TEST_CASE("sector errors") {
  const RealizedGenerators gen = oscillator_su11_generators(16);
  CHECK_THROWS_AS(sector_reduce(gen, gen.charges, {3.0}), EmptySectorError);
  CHECK_THROWS_AS(sector_reduce(gen, gen.charges, {1.0, 1.0}), DomainError);
}

TEST_CASE("single-state sector yields a dim-1 rep") {
  const RealizedGenerators gen =
      trilinear_generators({3, 3, 3}, {1.0, 1.0, 1.0}, 0.1);
  // |0,0,0> is alone in its charge sector.
  const SectorReduction red = sector_reduce(gen, gen.charges, {0.0, 0.0});
  CHECK(red.rep.dim() == 1);
  // Downstream construction rejects it.
  CHECK_THROWS_AS(canonical_conjugate_matrix(red.rep, 1.0), Error);
}

TEST_CASE("coherent state built on an extracted rep maps back") {
  const RealizedGenerators gen = oscillator_su11_generators(128);
  const SectorReduction red = sector_reduce(gen, gen.charges, {1.0});
  const Complex alpha{0.6, 0.2};
  const CoherentState st = annihilation_cs(red.rep, alpha, 1e-12);

  StateVector full = StateVector::Zero(gen.dim());
  full += red.ladder.leftCols(st.coeffs.size()) * st.coeffs;
  CHECK((gen.minus * full - alpha * full).norm() <= 1e-8);
}

TEST_CASE("cutoff independence of interior residuals") {
  const RealizedGenerators small =
      trilinear_generators({4, 4, 4}, {1.0, 0.9, 0.8}, 0.1);
  const RealizedGenerators large =
      trilinear_generators({6, 6, 6}, {1.0, 0.9, 0.8}, 0.1);
  CHECK(std::abs(ladder_commutator_residual(small, 1.0) -
                 ladder_commutator_residual(large, 1.0)) <= 1e-12);
  CHECK(std::abs(charge_commutation_residual(small) -
                 charge_commutation_residual(large)) <= 1e-12);

  const RealizedGenerators dicke_small = dicke_generators(2, 2, 8, 0.7, 1.0, 0.2);
  const RealizedGenerators dicke_large = dicke_generators(2, 2, 10, 0.7, 1.0, 0.2);
  CHECK(std::abs(ladder_commutator_residual(dicke_small, 1.0) -
                 ladder_commutator_residual(dicke_large, 1.0)) <= 1e-12);
}
