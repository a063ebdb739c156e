#include "polycs/realizations.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

OperatorMatrix matrix_power(const OperatorMatrix& a, int k) {
  OperatorMatrix out = OperatorMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = (out * a).eval();
  return out;
}

// Per-state edge distance for a multimode space: floor((cutoff - n)/deg)
// minimized over all modes with deg > 0.
std::vector<int> edge_distances(const MultimodeFock& space,
                                const std::vector<int>& degrees) {
  std::vector<int> dist(static_cast<std::size_t>(space.dim()),
                        std::numeric_limits<int>::max());
  for (int i = 0; i < space.dim(); ++i) {
    const std::vector<int> occ = space.occupation(i);
    for (int m = 0; m < space.n_modes(); ++m) {
      const int deg = degrees[static_cast<std::size_t>(m)];
      if (deg <= 0) continue;
      dist[static_cast<std::size_t>(i)] =
          std::min(dist[static_cast<std::size_t>(i)],
                   (space.cutoff(m) - occ[static_cast<std::size_t>(m)]) / deg);
    }
  }
  return dist;
}

}  // namespace

MultimodeFock::MultimodeFock(std::vector<int> cutoffs)
    : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw DomainError("MultimodeFock needs >= 1 mode");
  strides_.assign(cutoffs_.size(), 1);
  dim_ = 1;
  for (std::size_t m = cutoffs_.size(); m-- > 0;) {
    if (cutoffs_[m] < 1) throw DomainError("mode cutoff must be >= 1");
    strides_[m] = dim_;
    dim_ *= cutoffs_[m] + 1;
  }
}

int MultimodeFock::index(const std::vector<int>& occ) const {
  int idx = 0;
  for (std::size_t m = 0; m < cutoffs_.size(); ++m) idx += occ[m] * strides_[m];
  return idx;
}

std::vector<int> MultimodeFock::occupation(int idx) const {
  std::vector<int> occ(cutoffs_.size());
  for (std::size_t m = 0; m < cutoffs_.size(); ++m) {
    occ[m] = idx / strides_[m];
    idx %= strides_[m];
  }
  return occ;
}

OperatorMatrix MultimodeFock::annihilator(int mode) const {
  OperatorMatrix a = OperatorMatrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    std::vector<int> occ = occupation(i);
    const int n = occ[static_cast<std::size_t>(mode)];
    if (n == 0) continue;
    occ[static_cast<std::size_t>(mode)] = n - 1;
    a(index(occ), i) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

OperatorMatrix MultimodeFock::number_op(int mode) const {
  OperatorMatrix n = OperatorMatrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    n(i, i) = occupation(i)[static_cast<std::size_t>(mode)];
  return n;
}

SpinBosonSpace::SpinBosonSpace(int n_atoms, int field_cutoff)
    : n_atoms_(n_atoms), field_cutoff_(field_cutoff) {
  if (n_atoms < 1) throw DomainError("SpinBosonSpace needs >= 1 atom");
  if (field_cutoff < 1) throw DomainError("field cutoff must be >= 1");
  dim_ = (field_cutoff_ + 1) << n_atoms_;
}

OperatorMatrix SpinBosonSpace::field_annihilator() const {
  const int atoms = 1 << n_atoms_;
  OperatorMatrix a = OperatorMatrix::Zero(dim_, dim_);
  for (int nf = 1; nf <= field_cutoff_; ++nf)
    for (int s = 0; s < atoms; ++s)
      a((nf - 1) * atoms + s, nf * atoms + s) = std::sqrt(static_cast<double>(nf));
  return a;
}

OperatorMatrix SpinBosonSpace::field_number() const {
  const int atoms = 1 << n_atoms_;
  OperatorMatrix n = OperatorMatrix::Zero(dim_, dim_);
  for (int nf = 0; nf <= field_cutoff_; ++nf)
    for (int s = 0; s < atoms; ++s) n(nf * atoms + s, nf * atoms + s) = nf;
  return n;
}

OperatorMatrix SpinBosonSpace::sigma0(int atom) const {
  const int atoms = 1 << n_atoms_;
  OperatorMatrix sz = OperatorMatrix::Zero(dim_, dim_);
  for (int nf = 0; nf <= field_cutoff_; ++nf)
    for (int s = 0; s < atoms; ++s) {
      const int i = nf * atoms + s;
      sz(i, i) = (s >> atom & 1) ? 0.5 : -0.5;
    }
  return sz;
}

OperatorMatrix SpinBosonSpace::sigma_plus(int atom) const {
  const int atoms = 1 << n_atoms_;
  OperatorMatrix sp = OperatorMatrix::Zero(dim_, dim_);
  for (int nf = 0; nf <= field_cutoff_; ++nf)
    for (int s = 0; s < atoms; ++s) {
      if (s >> atom & 1) continue;  // already up
      const int i = nf * atoms + s;
      sp(nf * atoms + (s | (1 << atom)), i) = 1.0;
    }
  return sp;
}

OperatorMatrix SpinBosonSpace::sigma0_total() const {
  OperatorMatrix s = OperatorMatrix::Zero(dim_, dim_);
  for (int a = 0; a < n_atoms_; ++a) s += sigma0(a);
  return s;
}

RealizedGenerators trilinear_generators(const std::array<int, 3>& cutoffs,
                                        const std::array<double, 3>& w,
                                        double kappa) {
  for (int c : cutoffs)
    if (c < 2) throw DomainError("trilinear cutoffs must be >= 2");
  const MultimodeFock space({cutoffs[0], cutoffs[1], cutoffs[2]});
  const OperatorMatrix a0 = space.annihilator(0);
  const OperatorMatrix a1 = space.annihilator(1);
  const OperatorMatrix a2 = space.annihilator(2);
  const OperatorMatrix n0op = space.number_op(0);
  const OperatorMatrix n1op = space.number_op(1);
  const OperatorMatrix n2op = space.number_op(2);

  RealizedGenerators gen;
  gen.kind = "trilinear";
  gen.plus = a0 * a1.adjoint() * a2.adjoint();
  gen.minus = gen.plus.adjoint();
  gen.n0 = (-n0op + n1op + n2op) / 3.0;
  gen.h = w[0] * n0op + w[1] * n1op + w[2] * n2op + kappa * (gen.plus + gen.minus);
  gen.charges = {n0op + n1op, n1op - n2op};
  gen.charge_names = {"K1", "K2"};
  gen.edge_distance = edge_distances(space, {1, 1, 1});
  return gen;
}

RealizedGenerators anharmonic_generators(int cutoff_a, int cutoff_b) {
  if (cutoff_a < 4 || cutoff_b < 4)
    throw DomainError("anharmonic cutoffs must be >= 4");
  const MultimodeFock space({cutoff_a, cutoff_b});
  const OperatorMatrix a = space.annihilator(0);
  const OperatorMatrix b = space.annihilator(1);
  const OperatorMatrix na = space.number_op(0);
  const OperatorMatrix nb = space.number_op(1);
  const OperatorMatrix id = OperatorMatrix::Identity(space.dim(), space.dim());

  RealizedGenerators gen;
  gen.kind = "anharmonic";
  gen.plus = a.adjoint() * b * b;
  gen.minus = gen.plus.adjoint();
  gen.n0 = (na + 0.5 * id) - 0.5 * (nb + 0.5 * id);
  gen.h = (na + 0.5 * id) + 0.5 * (nb + 0.5 * id);
  gen.charges = {gen.h};
  gen.charge_names = {"H"};
  gen.edge_distance = edge_distances(space, {1, 2});
  return gen;
}

RealizedGenerators multiphoton_generators(int m, int n,
                                          const std::array<int, 2>& cutoffs,
                                          const std::array<double, 2>& w,
                                          double kappa) {
  if (m < 1 || n < 1) throw DomainError("multiphoton requires m, n >= 1");
  if (cutoffs[0] < m + n || cutoffs[1] < m + n)
    throw DomainError("multiphoton cutoffs must be >= m + n");
  const MultimodeFock space({cutoffs[0], cutoffs[1]});
  const OperatorMatrix a0 = space.annihilator(0);
  const OperatorMatrix a1 = space.annihilator(1);
  const OperatorMatrix n0op = space.number_op(0);
  const OperatorMatrix n1op = space.number_op(1);

  RealizedGenerators gen;
  gen.kind = "multiphoton";
  gen.plus = matrix_power(a0, m) * matrix_power(a1.adjoint(), n);
  gen.minus = gen.plus.adjoint();
  gen.n0 = (n1op - n0op) / static_cast<double>(m + n);
  gen.h = w[0] * n0op + w[1] * n1op + kappa * (gen.plus + gen.minus);
  gen.charges = {static_cast<double>(n) * n0op + static_cast<double>(m) * n1op};
  gen.charge_names = {"Q"};
  gen.edge_distance = edge_distances(space, {m, n});
  return gen;
}

RealizedGenerators dicke_generators(int n_atoms, int n_photon,
                                    int field_cutoff, double eps_atom,
                                    double w1, double kappa) {
  if (n_atoms < 1) throw DomainError("dicke requires n_atoms >= 1");
  if (n_photon < 1) throw DomainError("dicke requires n_photon >= 1");
  if (field_cutoff < n_photon + 1)
    throw DomainError("dicke requires field_cutoff >= n_photon + 1");
  const SpinBosonSpace space(n_atoms, field_cutoff);
  const OperatorMatrix a = space.field_annihilator();
  const OperatorMatrix nf = space.field_number();
  const OperatorMatrix s0 = space.sigma0_total();

  OperatorMatrix sigma_minus_total =
      OperatorMatrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < n_atoms; ++i)
    sigma_minus_total += space.sigma_plus(i).adjoint();

  RealizedGenerators gen;
  gen.kind = "dicke";
  gen.plus = sigma_minus_total * matrix_power(a.adjoint(), n_photon);
  gen.minus = gen.plus.adjoint();
  gen.n0 = (nf - s0) / static_cast<double>(n_photon + 1);
  gen.h = eps_atom * s0 + w1 * nf + kappa * (gen.plus + gen.minus);
  gen.charges = {static_cast<double>(n_photon) * s0 + nf};
  gen.charge_names = {"Q"};

  // Only the field mode is truncated; the atomic space is exact.
  gen.edge_distance.assign(static_cast<std::size_t>(space.dim()),
                           std::numeric_limits<int>::max());
  const int atoms = 1 << n_atoms;
  for (int nff = 0; nff <= field_cutoff; ++nff)
    for (int s = 0; s < atoms; ++s)
      gen.edge_distance[static_cast<std::size_t>(nff * atoms + s)] =
          (field_cutoff - nff) / n_photon;
  return gen;
}

RealizedGenerators oscillator_su11_generators(int cutoff) {
  if (cutoff < 3) throw DomainError("oscillator cutoff must be >= 3");
  const MultimodeFock space({cutoff});
  const OperatorMatrix a = space.annihilator(0);
  const OperatorMatrix n = space.number_op(0);
  const OperatorMatrix id = OperatorMatrix::Identity(space.dim(), space.dim());

  RealizedGenerators gen;
  gen.kind = "oscillator-su11";
  gen.minus = 0.5 * a * a;
  gen.plus = gen.minus.adjoint();
  gen.n0 = 0.25 * (2.0 * n + id);
  gen.h = n + 0.5 * id;

  OperatorMatrix parity = OperatorMatrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < space.dim(); ++i) parity(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  gen.charges = {parity};
  gen.charge_names = {"parity"};
  gen.edge_distance = edge_distances(space, {2});
  return gen;
}

double interior_residual(const OperatorMatrix& expr,
                         const RealizedGenerators& gen, int depth) {
  double worst = 0.0;
  for (int c = 0; c < gen.dim(); ++c)
    if (gen.edge_distance[static_cast<std::size_t>(c)] >= depth)
      worst = std::max(worst, expr.col(c).norm());
  return worst;
}

double ladder_commutator_residual(const RealizedGenerators& gen, double step) {
  const OperatorMatrix up =
      gen.n0 * gen.plus - gen.plus * gen.n0 - step * gen.plus;
  const OperatorMatrix dn =
      gen.n0 * gen.minus - gen.minus * gen.n0 + step * gen.minus;
  return std::max(interior_residual(up, gen, 1), interior_residual(dn, gen, 1));
}

double charge_commutation_residual(const RealizedGenerators& gen) {
  double worst = 0.0;
  for (const OperatorMatrix& q : gen.charges)
    for (const OperatorMatrix* x : {&gen.plus, &gen.minus, &gen.h})
      worst = std::max(worst,
                       interior_residual(q * (*x) - (*x) * q, gen, 1));
  return worst;
}

double hermiticity_residual(const RealizedGenerators& gen) {
  return (gen.h - gen.h.adjoint()).cwiseAbs().maxCoeff();
}

double anharmonic_f_identity_residual(const RealizedGenerators& gen) {
  const int d = gen.dim();
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix comm = gen.plus * gen.minus - gen.minus * gen.plus;
  const OperatorMatrix rhs = -3.0 * gen.n0 * gen.n0 +
                             2.0 * gen.h * gen.n0 + gen.h * gen.h -
                             0.75 * id;
  return interior_residual(comm - rhs, gen, 1);
}

double anharmonic_jbasis_residual(const RealizedGenerators& gen) {
  const int d = gen.dim();
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const OperatorMatrix jp = inv_sqrt3 * gen.plus;
  const OperatorMatrix jm = -inv_sqrt3 * gen.minus;
  const OperatorMatrix j0 = gen.n0 - gen.h / 3.0;
  const OperatorMatrix lhs = jp * jm - jm * jp;
  const OperatorMatrix rhs =
      j0 * j0 + 0.25 * id - (4.0 / 9.0) * gen.h * gen.h;
  return interior_residual(lhs - rhs, gen, 1);
}

namespace {

std::map<std::vector<long long>, std::vector<int>> charge_sectors(
    const RealizedGenerators& gen, bool interior_only) {
  std::map<std::vector<long long>, std::vector<int>> sectors;
  for (int i = 0; i < gen.dim(); ++i) {
    if (interior_only && gen.edge_distance[static_cast<std::size_t>(i)] < 1)
      continue;
    std::vector<long long> key;
    key.reserve(gen.charges.size());
    for (const OperatorMatrix& q : gen.charges)
      key.push_back(llround(q(i, i).real() * 1e9));
    sectors[key].push_back(i);
  }
  return sectors;
}

std::vector<double> key_to_values(const std::vector<long long>& key) {
  std::vector<double> v;
  v.reserve(key.size());
  for (long long k : key) v.push_back(static_cast<double>(k) * 1e-9);
  return v;
}

}  // namespace

std::vector<SectorFit> commutator_sector_fits(const RealizedGenerators& gen,
                                              int degree) {
  const OperatorMatrix comm = gen.plus * gen.minus - gen.minus * gen.plus;
  std::vector<SectorFit> fits;
  for (const auto& [key, members] : charge_sectors(gen, true)) {
    SectorFit fit;
    fit.charge_values = key_to_values(key);
    fit.sector_dim = static_cast<int>(members.size());
    fit.interior_count = fit.sector_dim;
    fit.degree = degree;

    const int rows = fit.sector_dim;
    Eigen::MatrixXd vand(rows, degree + 1);
    Eigen::VectorXd y(rows);
    double offdiag = 0.0;
    for (int r = 0; r < rows; ++r) {
      const int i = members[static_cast<std::size_t>(r)];
      const double x = gen.n0(i, i).real();
      double pw = 1.0;
      for (int k = 0; k <= degree; ++k) {
        vand(r, k) = pw;
        pw *= x;
      }
      y(r) = comm(i, i).real();
      // Anything off the diagonal cannot be a polynomial in N0.
      double leak = comm.col(i).norm();
      leak = std::sqrt(std::max(0.0, leak * leak - std::norm(comm(i, i))));
      offdiag = std::max(offdiag, leak);
    }
    const Eigen::VectorXd c = vand.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd res = vand * c - y;
    fit.poly.assign(c.data(), c.data() + c.size());
    fit.residual = std::max(res.cwiseAbs().maxCoeff(), offdiag);
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::vector<HSectorFit> h_decomposition_fits(const RealizedGenerators& gen) {
  std::vector<HSectorFit> fits;
  for (const auto& [key, members] : charge_sectors(gen, false)) {
    const int s = static_cast<int>(members.size());
    HSectorFit fit;
    fit.charge_values = key_to_values(key);
    fit.sector_dim = s;

    // Least squares over the sector block entries, real and imaginary parts
    // stacked: H_s = a N0_s + b N+_s + c N-_s + d I.
    Eigen::MatrixXd basis(2 * s * s, 4);
    Eigen::VectorXd target(2 * s * s);
    int row = 0;
    for (int rr = 0; rr < s; ++rr)
      for (int cc = 0; cc < s; ++cc) {
        const int i = members[static_cast<std::size_t>(rr)];
        const int k = members[static_cast<std::size_t>(cc)];
        const std::complex<double> vals[4] = {
            gen.n0(i, k), gen.plus(i, k), gen.minus(i, k),
            (i == k) ? std::complex<double>{1.0, 0.0}
                     : std::complex<double>{0.0, 0.0}};
        for (int p = 0; p < 4; ++p) {
          basis(row, p) = vals[p].real();
          basis(row + 1, p) = vals[p].imag();
        }
        target(row) = gen.h(i, k).real();
        target(row + 1) = gen.h(i, k).imag();
        row += 2;
      }
    const Eigen::VectorXd x = basis.colPivHouseholderQr().solve(target);
    fit.a = x(0);
    fit.b = x(1);
    fit.c = x(2);
    fit.constant = x(3);
    fit.residual = (basis * x - target).cwiseAbs().maxCoeff();
    fits.push_back(std::move(fit));
  }
  return fits;
}

OperatorMatrix casimir_matrix(const RealizedGenerators& gen,
                              const CasimirShift& g) {
  const int d = gen.dim();
  OperatorMatrix offdiag = gen.n0;
  offdiag.diagonal().setZero();
  if (offdiag.cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("casimir_matrix requires a diagonal N0");
  OperatorMatrix g_of_n0 = OperatorMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) g_of_n0(i, i) = g(gen.n0(i, i).real());
  return gen.minus * gen.plus + g_of_n0;
}

SectorReduction sector_reduce(const RealizedGenerators& gen,
                              const std::vector<OperatorMatrix>& charges,
                              const std::vector<double>& eigtuple) {
  if (charges.size() != eigtuple.size())
    throw DomainError("sector_reduce: one eigenvalue per charge required");
  const int d = gen.dim();

  for (const OperatorMatrix& q : charges) {
    OperatorMatrix offdiag = q;
    offdiag.diagonal().setZero();
    if (offdiag.cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("sector_reduce: charges must be diagonal in the "
                        "computational basis");
    for (const OperatorMatrix* x : {&gen.plus, &gen.minus})
      if (interior_residual(q * (*x) - (*x) * q, gen, 1) > 1e-10)
        throw DomainError("sector_reduce: charge does not commute with the "
                          "generators on the interior");
  }

  std::vector<int> sector;
  for (int i = 0; i < d; ++i) {
    bool match = true;
    for (std::size_t k = 0; k < charges.size(); ++k)
      if (std::abs(charges[k](i, i).real() - eigtuple[k]) > 1e-9) {
        match = false;
        break;
      }
    if (match) sector.push_back(i);
  }
  if (sector.empty()) throw EmptySectorError();
  const int s = static_cast<int>(sector.size());

  OperatorMatrix minus_s(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c)
      minus_s(r, c) = gen.minus(sector[static_cast<std::size_t>(r)],
                                sector[static_cast<std::size_t>(c)]);

  Eigen::JacobiSVD<OperatorMatrix> svd(minus_s, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv(0));
  int kernel_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-10 * scale) ++kernel_dim;
  if (kernel_dim == 0) throw NoLowestWeightError();

  StateVector v0 = StateVector::Zero(d);
  const auto null_dir = svd.matrixV().col(sv.size() - 1);
  for (int r = 0; r < s; ++r)
    v0(sector[static_cast<std::size_t>(r)]) = null_dir(r);
  v0.normalize();

  // Grow the ladder with twice-iterated Gram-Schmidt. Silence before
  // spanning the sector means several ladders live in it.
  std::vector<StateVector> ladder{v0};
  std::vector<double> e_list;
  while (static_cast<int>(ladder.size()) < s) {
    StateVector w = gen.plus * ladder.back();
    const double raw = w.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const StateVector& v : ladder) w -= v.dot(w) * v;
    const double nrm = w.norm();
    if (nrm < 1e-10 * std::max(1.0, raw) || nrm < 1e-12) break;
    ladder.push_back(w / nrm);
    e_list.push_back(nrm);
  }
  const int L = static_cast<int>(ladder.size());
  const int defect = s - L;
  if (defect > 0) throw NonLadderError(defect);

  SectorReduction red;
  red.sector_dim = s;
  red.ladder = Eigen::MatrixXcd(d, L);
  for (int m = 0; m < L; ++m) red.ladder.col(m) = ladder[static_cast<std::size_t>(m)];

  LowestWeightRep rep;
  rep.n0.resize(static_cast<std::size_t>(L));
  rep.e.assign(static_cast<std::size_t>(L), 0.0);
  double dispersion = 0.0;
  for (int m = 0; m < L; ++m) {
    const StateVector& v = ladder[static_cast<std::size_t>(m)];
    const double mean = (v.adjoint() * gen.n0 * v)(0).real();
    const double mean2 = (gen.n0 * v).squaredNorm();
    rep.n0[static_cast<std::size_t>(m)] = mean;
    dispersion = std::max(dispersion, std::sqrt(std::abs(mean2 - mean * mean)));
  }
  rep.j = rep.n0[0];
  for (int m = 1; m < L; ++m)
    rep.e[static_cast<std::size_t>(m)] = e_list[static_cast<std::size_t>(m - 1)];

  // The ladder spans the sector, so N+ on the top state has no new
  // direction left: genuine termination when the top state is clear of
  // every cutoff, a truncation artifact otherwise.
  bool clear = true;
  const StateVector& top = ladder.back();
  for (int i = 0; i < d; ++i)
    if (std::abs(top(i)) > 1e-8 &&
        gen.edge_distance[static_cast<std::size_t>(i)] < 1) {
      clear = false;
      break;
    }
  rep.terminated = clear;

  // Round trip: restricted matrices vs the abstract ladder matrices.
  double rt = dispersion;
  if (L >= 2) {
    const GeneratorMatrices abs_gen = generator_matrices(rep);
    const Eigen::MatrixXcd r0 = red.ladder.adjoint() * gen.n0 * red.ladder;
    const Eigen::MatrixXcd rp = red.ladder.adjoint() * gen.plus * red.ladder;
    const Eigen::MatrixXcd rm = red.ladder.adjoint() * gen.minus * red.ladder;
    rt = std::max(rt, (r0 - abs_gen.n0).cwiseAbs().maxCoeff());
    rt = std::max(rt, (rp - abs_gen.plus).cwiseAbs().maxCoeff());
    rt = std::max(rt, (rm - abs_gen.minus).cwiseAbs().maxCoeff());
  }
  red.roundtrip_residual = rt;
  red.rep = std::move(rep);
  return red;
}

}  // namespace polycs
