#include "polycs/algebra.hpp"

#include <cmath>

#include "polycs/errors.hpp"

namespace polycs {

StructurePolynomial AlgebraSpec::f() const { return difference_of_g(g); }

StructurePolynomial difference_of_g(const CasimirShift& g) {
  return g - g.shifted(-1.0);
}

CasimirShift solve_g(const StructurePolynomial& f, double anchor) {
  // g has degree d+1 where d = deg f. Unknown coefficients b_1..b_{d+1}
  // (b_0 = anchor contributes nothing to the difference). The difference
  // g(x) - g(x-1) is linear in the b's; match coefficients of f.
  const int d = f.degree();
  if (d < 0) return CasimirShift{std::vector<double>{anchor}};
  const int n = d + 1;  // unknowns b_1..b_n

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (int k = 0; k < n; ++k) rhs(k) = f.coeff(k);

  for (int col = 1; col <= n; ++col) {
    // Contribution of b_col * (x^col - (x-1)^col) to each power of x.
    std::vector<double> mono(static_cast<std::size_t>(col) + 1, 0.0);
    mono.back() = 1.0;
    const Polynomial xc{std::move(mono)};
    const Polynomial diff = xc - xc.shifted(-1.0);  // degree col-1
    for (int row = 0; row < n; ++row) A(row, col - 1) = diff.coeff(row);
  }

  const Eigen::VectorXd b = A.colPivHouseholderQr().solve(rhs);
  std::vector<double> gc(static_cast<std::size_t>(n) + 1, 0.0);
  gc[0] = anchor;
  for (int k = 1; k <= n; ++k) gc[static_cast<std::size_t>(k)] = b(k - 1);
  return CasimirShift{std::move(gc)};
}

double casimir_value(const CasimirShift& g, double j) { return g(j - 1.0); }

LowestWeightRep build_lowest_weight_rep(const AlgebraSpec& spec, double j,
                                        int dim) {
  if (dim < 2) throw DomainError("representation dimension must be >= 2");

  LowestWeightRep rep;
  rep.j = j;
  rep.g = spec.g;
  rep.casimir = casimir_value(spec.g, j);
  rep.n0.resize(static_cast<std::size_t>(dim));
  rep.e.assign(static_cast<std::size_t>(dim), 0.0);

  const double cj = *rep.casimir;
  for (int m = 0; m < dim; ++m) rep.n0[static_cast<std::size_t>(m)] = j + m;
  for (int m = 1; m < dim; ++m) {
    const double radicand = cj - spec.g(j + m - 1.0);
    if (radicand <= 0.0) throw NonUnitaryError(m, radicand);
    rep.e[static_cast<std::size_t>(m)] = std::sqrt(radicand);
  }
  return rep;
}

GeneratorMatrices generator_matrices(const LowestWeightRep& rep) {
  const int d = rep.dim();
  GeneratorMatrices gen;
  gen.n0 = OperatorMatrix::Zero(d, d);
  gen.plus = OperatorMatrix::Zero(d, d);
  gen.minus = OperatorMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m)
    gen.n0(m, m) = rep.n0[static_cast<std::size_t>(m)];
  for (int m = 1; m < d; ++m) {
    gen.plus(m, m - 1) = rep.e[static_cast<std::size_t>(m)];
    gen.minus(m - 1, m) = rep.e[static_cast<std::size_t>(m)];
  }
  return gen;
}

double max_column_norm(const OperatorMatrix& expr, int first_col,
                       int last_col) {
  double worst = 0.0;
  for (int c = first_col; c <= last_col; ++c)
    worst = std::max(worst, expr.col(c).norm());
  return worst;
}

ClosureReport verify_closure(const LowestWeightRep& rep,
                             const StructurePolynomial& f) {
  const int d = rep.dim();
  if (d < 3) throw DomainError("verify_closure needs dim >= 3");
  const GeneratorMatrices gen = generator_matrices(rep);

  OperatorMatrix fof_n0 = OperatorMatrix::Zero(d, d);
  double scale = 1.0;
  for (int m = 0; m < d; ++m) {
    fof_n0(m, m) = f(rep.n0[static_cast<std::size_t>(m)]);
    if (m <= d - 2) scale = std::max(scale, std::abs(fof_n0(m, m).real()));
    const double e2 = rep.e[static_cast<std::size_t>(m)] *
                      rep.e[static_cast<std::size_t>(m)];
    scale = std::max(scale, e2);
  }

  const OperatorMatrix comm =
      gen.plus * gen.minus - gen.minus * gen.plus - fof_n0;

  ClosureReport report;
  report.interior_dim = d - 1;
  report.max_residual = max_column_norm(comm, 0, d - 2) / scale;
  return report;
}

}  // namespace polycs
