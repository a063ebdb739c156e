#pragma once

#include <array>
#include <string>
#include <vector>

#include "polycs/algebra.hpp"

namespace polycs {

// Truncated multimode boson Fock space. Basis states are occupation tuples
// (n_0, ..., n_{k-1}) with 0 <= n_i <= cutoff_i, indexed lexicographically
// with the first mode most significant.
class MultimodeFock {
 public:
  explicit MultimodeFock(std::vector<int> cutoffs);

  int dim() const { return dim_; }
  int n_modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_[static_cast<std::size_t>(mode)]; }

  int index(const std::vector<int>& occ) const;
  std::vector<int> occupation(int idx) const;

  OperatorMatrix annihilator(int mode) const;
  OperatorMatrix number_op(int mode) const;

 private:
  std::vector<int> cutoffs_;
  std::vector<int> strides_;
  int dim_ = 0;
};

// n_atoms two-level atoms and a single truncated field mode.
// Basis index = field_occupation * 2^n_atoms + atom_bits (bit i set: atom i
// in the upper level). The atomic space carries no truncation.
class SpinBosonSpace {
 public:
  SpinBosonSpace(int n_atoms, int field_cutoff);

  int dim() const { return dim_; }
  int n_atoms() const { return n_atoms_; }
  int field_cutoff() const { return field_cutoff_; }

  OperatorMatrix field_annihilator() const;
  OperatorMatrix field_number() const;
  OperatorMatrix sigma0(int atom) const;       // diag(+1/2, -1/2) on atom i
  OperatorMatrix sigma_plus(int atom) const;   // raises atom i
  OperatorMatrix sigma0_total() const;

 private:
  int n_atoms_;
  int field_cutoff_;
  int dim_;
};

// Concrete generators on a truncated space, together with the conserved
// charges used for sector decomposition and a per-state edge distance:
// edge_distance[i] >= k means k successive generator applications starting
// from basis state i cannot touch any cutoff.
struct RealizedGenerators {
  OperatorMatrix n0, plus, minus, h;
  std::vector<OperatorMatrix> charges;  // diagonal in the computational basis
  std::vector<std::string> charge_names;
  std::vector<int> edge_distance;
  std::string kind;

  int dim() const { return static_cast<int>(n0.rows()); }
};

// Triboson generators: N+ = a_0 a_1^dag a_2^dag,
// N0 = (-n_0 + n_1 + n_2)/3, H = sum w_i n_i + kappa (N+ + N-).
// The 1/3 makes [N0, N±] = ±N± (N+ moves all three occupations).
// Conserved Manley-Rowe charges K1 = n_0 + n_1, K2 = n_1 - n_2.
RealizedGenerators trilinear_generators(const std::array<int, 3>& cutoffs,
                                        const std::array<double, 3>& w,
                                        double kappa);

// Anisotropic oscillator pair, m = 1, n = 2:
//   H  = (n_a + 1/2) + (n_b + 1/2)/2,    N0 = (n_a + 1/2) - (n_b + 1/2)/2,
//   N+ = a^dag b^2,  N- = N+^dag.
// [H, N±] = 0 and [N+, N-] = -3 N0^2 + 2 H N0 + H^2 - 3/4 hold exactly.
// Note the ladder step here is [N0, N±] = ±2 N±.
RealizedGenerators anharmonic_generators(int cutoff_a, int cutoff_b);

// General two-mode multiphoton generators: N+ = a_0^m (a_1^dag)^n,
// N0 = (n_1 - n_0)/(m+n), H = w_0 n_0 + w_1 n_1 + kappa (N+ + N-).
// Conserved charge Q = n n_0 + m n_1.
RealizedGenerators multiphoton_generators(int m, int n,
                                          const std::array<int, 2>& cutoffs,
                                          const std::array<double, 2>& w,
                                          double kappa);

// n-photon Dicke generators: N+ = (sum_i sigma_-(i)) (a^dag)^n, N- = N+^dag,
// N0 = (n_field - S0)/(n+1) with S0 = sum_i sigma_0(i),
// H = eps S0 + w1 n_field + kappa (N+ + N-), charge Q = n S0 + n_field.
// With these conventions [N0, N±] = ±N± and H = a N0 + b N+ + c N- + const
// holds exactly on every charge sector.
RealizedGenerators dicke_generators(int n_atoms, int n_photon,
                                    int field_cutoff, double eps_atom,
                                    double w1, double kappa);

// One-oscillator realization K- = a^2/2, K+ = (a^dag)^2/2, K0 = (2n+1)/4,
// with parity as the conserved charge. The parity sectors carry the two
// lowest weights j = 1/4 and j = 3/4.
RealizedGenerators oscillator_su11_generators(int cutoff);

// max over columns with edge_distance >= depth of the column norm of expr.
double interior_residual(const OperatorMatrix& expr,
                         const RealizedGenerators& gen, int depth);

// Interior residual of [N0, N±] ∓ step N± (step 1 for all builders except
// anharmonic, where the ladder moves N0 by 2).
double ladder_commutator_residual(const RealizedGenerators& gen, double step);

// Interior residual of [Q, X] over all charges Q and X in {N+, N-, H}.
double charge_commutation_residual(const RealizedGenerators& gen);

double hermiticity_residual(const RealizedGenerators& gen);

// Anharmonic identities (exact on the interior).
double anharmonic_f_identity_residual(const RealizedGenerators& gen);
double anharmonic_jbasis_residual(const RealizedGenerators& gen);

// Per-sector polynomial fit of diag([N+, N-]) against diag(N0) over interior
// states; off-diagonal leakage of the commutator inside the sector counts
// toward the residual.
struct SectorFit {
  std::vector<double> charge_values;
  int sector_dim = 0;
  int interior_count = 0;
  int degree = 0;
  std::vector<double> poly;  // ascending coefficients
  double residual = 0.0;
};
std::vector<SectorFit> commutator_sector_fits(const RealizedGenerators& gen,
                                              int degree);

// Per-sector least-squares decomposition H = a N0 + b N+ + c N- + const.
struct HSectorFit {
  std::vector<double> charge_values;
  int sector_dim = 0;
  double a = 0.0, b = 0.0, c = 0.0, constant = 0.0;
  double residual = 0.0;  // max abs entry of the sector block mismatch
};
std::vector<HSectorFit> h_decomposition_fits(const RealizedGenerators& gen);

// C = N- N+ + g(N0) as a matrix (N0 must be diagonal).
OperatorMatrix casimir_matrix(const RealizedGenerators& gen,
                              const CasimirShift& g);

// Restricts the generators to a joint charge eigenspace, orthonormalizes the
// ladder grown from the N- kernel state, and extracts an abstract rep.
struct SectorReduction {
  LowestWeightRep rep;
  Eigen::MatrixXcd ladder;  // dim x L, orthonormal ladder vectors as columns
  double roundtrip_residual = 0.0;
  int sector_dim = 0;
};
SectorReduction sector_reduce(const RealizedGenerators& gen,
                              const std::vector<OperatorMatrix>& charges,
                              const std::vector<double>& eigtuple);

}  // namespace polycs
