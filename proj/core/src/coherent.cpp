#include "polycs/coherent.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polycs/errors.hpp"
#include "polycs/specfun.hpp"

namespace polycs {

namespace {

constexpr double kGeometricRatio = 0.9;  // 1 - margin, margin = 0.1

// Index past which e_m is guaranteed non-decreasing. When the rep carries g,
// the radicand C - g(j+m-1) is a polynomial in m whose derivative has no
// roots beyond its Cauchy bound; otherwise fall back to the first index from
// which the stored e is non-decreasing.
int monotone_start(const LowestWeightRep& rep) {
  if (rep.g) {
    Polynomial radicand =
        Polynomial{std::vector<double>{*rep.casimir}} - rep.g->shifted(rep.j - 1.0);
    const double bound = radicand.derivative().root_bound();
    return static_cast<int>(std::ceil(bound)) + 1;
  }
  int start = rep.dim() - 1;
  while (start > 1 && rep.e[static_cast<std::size_t>(start - 1)] <=
                          rep.e[static_cast<std::size_t>(start)])
    --start;
  return start;
}

// e_m, extended past the stored ladder through g when available.
double ladder_element(const LowestWeightRep& rep, int m) {
  if (m < rep.dim()) return rep.e[static_cast<std::size_t>(m)];
  if (!rep.g) return std::numeric_limits<double>::quiet_NaN();
  const double radicand = *rep.casimir - (*rep.g)(rep.j + m - 1.0);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

StateVector normalized_from_log(const std::vector<double>& log_abs,
                                const std::vector<double>& phase) {
  const double peak = *std::max_element(log_abs.begin(), log_abs.end());
  StateVector c(static_cast<Eigen::Index>(log_abs.size()));
  double norm2 = 0.0;
  for (std::size_t n = 0; n < log_abs.size(); ++n) {
    const double mag = std::exp(log_abs[n] - peak);
    c(static_cast<Eigen::Index>(n)) =
        mag * Complex(std::cos(phase[n]), std::sin(phase[n]));
    norm2 += mag * mag;
  }
  c /= std::sqrt(norm2);
  return c;
}

CoherentState vacuum_state(Complex eigenvalue, int n_keep) {
  CoherentState st;
  st.eigenvalue = eigenvalue;
  st.coeffs = StateVector::Zero(std::max(1, n_keep));
  st.coeffs(0) = 1.0;
  st.truncation = static_cast<int>(st.coeffs.size());
  st.tail_bound = 0.0;
  return st;
}

// Geometric tail indicator for a fixed-N closed form: bound on the discarded
// |c|^2 fraction when the terminal ratio is below one, +inf otherwise.
double fixed_n_tail(const StateVector& c, double ratio) {
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  const double last2 = std::norm(c(c.size() - 1));
  return last2 * ratio * ratio / (1.0 - ratio * ratio);
}

}  // namespace

CoherentState annihilation_cs(const LowestWeightRep& rep, Complex alpha,
                              double tol) {
  if (!(tol > 0.0)) throw DomainError("annihilation_cs requires tol > 0");
  if (alpha == Complex{0.0, 0.0}) return vacuum_state(alpha, 1);

  const int dim = rep.dim();
  const int safe = monotone_start(rep);
  const double mag = std::abs(alpha);

  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(dim));
  c.push_back(1.0);
  double total = 1.0;
  double rescale_log = 0.0;
  int kept = -1;
  double tail = 0.0;

  for (int m = 1; m < dim; ++m) {
    c.push_back(c.back() * alpha / rep.e[static_cast<std::size_t>(m)]);
    total += std::norm(c.back());
    if (total > 1e300) {
      const double s = std::sqrt(total);
      for (Complex& x : c) x /= s;
      rescale_log += std::log(s);
      total = 1.0;
    }

    const double e_next = ladder_element(rep, m + 1);
    if (std::isnan(e_next) || e_next <= 0.0) continue;
    const double q = mag / e_next;
    if (m + 1 < safe || q > kGeometricRatio) continue;
    const double boundary =
        std::abs(c.back()) * (1.0 + mag) / ((1.0 - q) * std::sqrt(total));
    if (boundary <= tol) {
      kept = m;
      tail = std::norm(c.back()) * q * q / ((1.0 - q * q) * total);
      break;
    }
  }
  if (kept < 0)
    throw TailNotConvergentError(
        "annihilation_cs: no certified truncation within dim=" +
        std::to_string(dim) + " for |alpha|=" + std::to_string(mag));

  CoherentState st;
  st.eigenvalue = alpha;
  st.truncation = kept + 1;
  st.tail_bound = tail;
  st.coeffs = StateVector(kept + 1);
  const double norm = std::sqrt(total);
  for (int m = 0; m <= kept; ++m)
    st.coeffs(m) = c[static_cast<std::size_t>(m)] / norm;
  st.log_norm = rescale_log + std::log(norm);
  return st;
}

CoherentState closed_form_bg(double phi, Complex alpha, int N) {
  if (phi >= 0.0) throw DomainError("closed_form_bg requires phi < 0");
  if (N < 1) throw DomainError("closed_form_bg requires N >= 1");
  if (alpha == Complex{0.0, 0.0}) return vacuum_state(alpha, N);

  const double lmag = std::log(std::sqrt(2.0) * std::abs(alpha));
  const double theta = std::arg(alpha);
  std::vector<double> la(static_cast<std::size_t>(N));
  std::vector<double> ph(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    la[static_cast<std::size_t>(n)] =
        n * lmag - 0.5 * (ln_gamma(n + 1.0).log_abs +
                          ln_gamma(n - 2.0 * phi).log_abs);
    ph[static_cast<std::size_t>(n)] = n * theta;
  }

  CoherentState st;
  st.eigenvalue = alpha;
  st.truncation = N;
  st.coeffs = normalized_from_log(la, ph);
  const double ratio =
      (N >= 2) ? std::exp(la[static_cast<std::size_t>(N - 1)] -
                          la[static_cast<std::size_t>(N - 2)])
               : 0.0;
  st.tail_bound = fixed_n_tail(st.coeffs, ratio);
  return st;
}

CoherentState closed_form_quadratic(double eps, Complex alpha, int N) {
  if (eps >= 0.5) throw DomainError("closed_form_quadratic requires eps < 1/2");
  if (N < 1) throw DomainError("closed_form_quadratic requires N >= 1");
  if (alpha == Complex{0.0, 0.0}) return vacuum_state(alpha, N);

  const double lmag = std::log(std::abs(alpha));
  const double theta = std::arg(alpha);
  std::vector<double> la(static_cast<std::size_t>(N));
  std::vector<double> ph(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    la[static_cast<std::size_t>(n)] =
        n * lmag - 0.5 * (ln_gamma(n + 0.5 - eps).log_abs +
                          ln_gamma(n + 1.0).log_abs +
                          ln_gamma(n + 1.5 - eps).log_abs);
    ph[static_cast<std::size_t>(n)] = n * theta;
  }

  CoherentState st;
  st.eigenvalue = alpha;
  st.truncation = N;
  st.coeffs = normalized_from_log(la, ph);
  const double ratio =
      (N >= 2) ? std::exp(la[static_cast<std::size_t>(N - 1)] -
                          la[static_cast<std::size_t>(N - 2)])
               : 0.0;
  st.tail_bound = fixed_n_tail(st.coeffs, ratio);
  return st;
}

DualState dual_cs(const LowestWeightRep& rep, Complex nu, int N) {
  if (N < 1 || N > rep.dim())
    throw DomainError("dual_cs requires 1 <= N <= rep dim");

  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(N));
  c.push_back(1.0);
  double total = 1.0;
  double rescale_log = 0.0;
  double last_rate = 0.0;
  for (int m = 1; m < N; ++m) {
    c.push_back(c.back() * nu * rep.e[static_cast<std::size_t>(m)] /
                static_cast<double>(m));
    last_rate = std::abs(c[static_cast<std::size_t>(m)]) /
                std::max(std::abs(c[static_cast<std::size_t>(m - 1)]),
                         std::numeric_limits<double>::min());
    total += std::norm(c.back());
    if (total > 1e300) {
      const double s = std::sqrt(total);
      for (Complex& x : c) x /= s;
      rescale_log += std::log(s);
      total = 1.0;
    }
  }
  if (N >= 3 && last_rate >= 1.0) throw NonNormalizableError(last_rate);

  DualState st;
  st.nu = nu;
  st.truncation = N;
  st.coeffs = StateVector(N);
  const double norm = std::sqrt(total);
  for (int m = 0; m < N; ++m)
    st.coeffs(m) = c[static_cast<std::size_t>(m)] / norm;
  st.log_norm = rescale_log + std::log(norm);
  return st;
}

PerelomovState perelomov_cs(const LowestWeightRep& rep, Complex xi) {
  const int d = rep.dim();
  const GeneratorMatrices gen = generator_matrices(rep);
  const OperatorMatrix a = xi * gen.plus - std::conj(xi) * gen.minus;
  const OperatorMatrix u = a.exp();

  PerelomovState st;
  st.xi = xi;
  st.truncation = d;
  st.coeffs = u.col(0);
  const double trailing = std::abs(st.coeffs(d - 1));
  if (trailing >= 1e-10)
    throw TruncationError("perelomov_cs: state leaked past truncation "
                          "(trailing coefficient " +
                          std::to_string(trailing) + ")");
  return st;
}

CoherentState exp_conjugate_cs(const ConjugatePair& pair, Complex alpha,
                               double tol) {
  if (!(tol > 0.0)) throw DomainError("exp_conjugate_cs requires tol > 0");
  const LowestWeightRep& rep = pair.rep;
  if (std::abs(pair.alpha - conjugate_shift(rep)) > 1e-12)
    throw DomainError("exp_conjugate_cs requires a pair built with alpha = 1 - j");
  if (alpha == Complex{0.0, 0.0}) return vacuum_state(alpha, 1);

  const int dim = rep.dim();
  const int safe = monotone_start(rep);
  const double mag = std::abs(alpha);

  StateVector term = StateVector::Zero(dim);
  term(0) = 1.0;
  StateVector psi = term;

  int kept = -1;
  double tail = 0.0;
  for (int n = 1; n < dim; ++n) {
    term = (alpha / static_cast<double>(n)) * (pair.matrix * term).eval();
    psi += term;

    const double e_next = ladder_element(rep, n + 1);
    if (std::isnan(e_next) || e_next <= 0.0) continue;
    const double q = mag / e_next;
    if (n + 1 < safe || q > kGeometricRatio) continue;
    const double boundary =
        term.norm() * (1.0 + mag) / ((1.0 - q) * psi.norm());
    if (boundary <= tol) {
      kept = n;
      const double t2 = term.squaredNorm() / psi.squaredNorm();
      tail = t2 * q * q / (1.0 - q * q);
      break;
    }
  }
  if (kept < 0)
    throw TailNotConvergentError(
        "exp_conjugate_cs: no certified truncation within dim=" +
        std::to_string(dim) + " for |alpha|=" + std::to_string(mag));

  CoherentState st;
  st.eigenvalue = alpha;
  st.truncation = kept + 1;
  st.tail_bound = tail;
  st.coeffs = psi.head(kept + 1);
  const double norm = st.coeffs.norm();
  st.coeffs /= norm;
  st.log_norm = std::log(norm);
  return st;
}

StateStatistics state_statistics(const StateVector& coeffs, double j) {
  double mean_m = 0.0;
  double mean_m2 = 0.0;
  for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
    const double p = std::norm(coeffs(m));
    mean_m += m * p;
    mean_m2 += static_cast<double>(m) * m * p;
  }
  StateStatistics stats;
  stats.mean_n0 = j + mean_m;
  stats.var_n0 = std::max(0.0, mean_m2 - mean_m * mean_m);
  if (mean_m > 1e-300)
    stats.mandel_q = (stats.var_n0 - mean_m) / mean_m;
  return stats;
}

double annihilation_residual(const LowestWeightRep& rep,
                             const CoherentState& state) {
  const int d = rep.dim();
  StateVector psi = StateVector::Zero(d);
  psi.head(state.coeffs.size()) = state.coeffs;
  const GeneratorMatrices gen = generator_matrices(rep);
  return (gen.minus * psi - state.eigenvalue * psi).norm();
}

double dual_adjoint_residual(const ConjugatePair& pair,
                             const DualState& state) {
  const int d = pair.rep.dim();
  StateVector psi = StateVector::Zero(d);
  psi.head(state.coeffs.size()) = state.coeffs;
  const StateVector lhs = pair.matrix.adjoint() * psi;
  return (lhs - state.nu * psi).norm();
}

}  // namespace polycs
