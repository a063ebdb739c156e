#include "polycs/measure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double gamma_log(double x) { return ln_gamma(x).log_abs; }

}  // namespace

MeasureSpec bg_measure(double phi) {
  if (phi >= 0.0) throw DomainError("bg_measure requires phi < 0");
  const double exponent = -2.0 * phi - 1.0;
  const double order = std::abs(2.0 * phi + 1.0);
  MeasureSpec spec;
  spec.label = "bg";
  spec.params = {phi};
  spec.density = [exponent, order](double r) {
    if (r <= 0.0) return 0.0;
    const double k = bessel_k(order, 2.0 * r);
    return (k == 0.0) ? 0.0 : std::pow(r, exponent) * k;
  };
  return spec;
}

MomentSequence bg_moments(double phi, int n_max) {
  if (phi >= 0.0) throw DomainError("bg_moments requires phi < 0");
  MomentSequence seq;
  seq.definition = "Gamma(n+1) Gamma(-2phi+n) / Gamma(-2phi)";
  const double base = gamma_log(-2.0 * phi);
  for (int n = 0; n <= n_max; ++n)
    seq.values.push_back(
        std::exp(gamma_log(n + 1.0) + gamma_log(n - 2.0 * phi) - base));
  return seq;
}

MomentSequence quadratic_moments(double eps, int n_max) {
  if (eps >= 0.5) throw DomainError("quadratic_moments requires eps < 1/2");
  MomentSequence seq;
  seq.definition =
      "Gamma(n+1) Gamma(1/2-eps+n) Gamma(3/2-eps+n) / "
      "(Gamma(1/2-eps) Gamma(3/2-eps))";
  const double base = gamma_log(0.5 - eps) + gamma_log(1.5 - eps);
  for (int n = 0; n <= n_max; ++n)
    seq.values.push_back(std::exp(gamma_log(n + 1.0) +
                                  gamma_log(n + 0.5 - eps) +
                                  gamma_log(n + 1.5 - eps) - base));
  return seq;
}

MomentReport verify_measure_moments(const MeasureSpec& measure,
                                    const MomentSequence& target, double tol) {
  if (target.values.size() < 2)
    throw DomainError("verify_measure_moments needs >= 2 target moments");

  MomentReport report;
  std::vector<double> raw;
  std::vector<double> raw_err;
  for (std::size_t n = 0; n < target.values.size(); ++n) {
    const auto integrand = [&](double r) {
      const double d = measure.density(r);
      return (d == 0.0) ? 0.0
                        : kTwoPi * d * std::pow(r, 2.0 * static_cast<double>(n) + 1.0);
    };
    const QuadratureResult q = integrate_halfline(integrand, tol);
    raw.push_back(q.value);
    raw_err.push_back(q.error);
  }

  const double scale = target.values[0] / raw[0];
  for (std::size_t n = 0; n < target.values.size(); ++n) {
    report.n.push_back(static_cast<int>(n));
    report.computed.push_back(raw[n] * scale);
    report.target.push_back(target.values[n]);
    report.rel_error.push_back(
        std::abs(raw[n] * scale - target.values[n]) /
        std::abs(target.values[n]));
    report.quad_error.push_back(std::abs(raw_err[n] * scale));
  }
  return report;
}

double kummer_mellin_check(double a, double b, double c) {
  if (!(b > 0.0) || !(b < a))
    throw DomainError("kummer_mellin_check requires 0 < b < a");
  if (c - b <= 0.0 && c - b == std::floor(c - b))
    throw DomainError("kummer_mellin_check: c - b at a Gamma pole");

  const SignedLogGamma lb = ln_gamma(b);
  const SignedLogGamma lc = ln_gamma(c);
  const SignedLogGamma lab = ln_gamma(a - b);
  const SignedLogGamma la = ln_gamma(a);
  const SignedLogGamma lcb = ln_gamma(c - b);
  const double rhs = lb.sign * lc.sign * lab.sign * la.sign * lcb.sign *
                     std::exp(lb.log_abs + lc.log_abs + lab.log_abs -
                              la.log_abs - lcb.log_abs);

  const auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    return std::pow(r, b - 1.0) * kummer_phi(a, c, -r);
  };
  const double lhs = integrate_halfline(integrand, 1e-9).value;
  return std::abs(lhs - rhs) / std::abs(rhs);
}

namespace {

// Signed log of the candidate's n-th raw moment (constants independent of n
// dropped): -B_n ln s + lnG(B_n) + lnG(a - B_n) - lnG(c - B_n), B_n = n+1+p/2.
bool candidate_log_moment(double p, double a, double c, double s, int n,
                          double& log_abs, double& sign) {
  const double bn = n + 1.0 + 0.5 * p;
  if (!(bn > 0.0) || !(a - bn > 0.0)) return false;  // Mellin integral diverges
  const double cb = c - bn;
  if (cb <= 0.0 && cb == std::floor(cb)) return false;
  const SignedLogGamma g1 = ln_gamma(bn);
  const SignedLogGamma g2 = ln_gamma(a - bn);
  const SignedLogGamma g3 = ln_gamma(cb);
  log_abs = -bn * std::log(s) + g1.log_abs + g2.log_abs - g3.log_abs;
  sign = g1.sign * g2.sign * g3.sign;
  return true;
}

}  // namespace

std::vector<double> candidate_measure_moments(double p, double a, double c,
                                              double s, int n_max) {
  std::vector<double> out;
  double l0 = 0.0, s0 = 1.0;
  if (!candidate_log_moment(p, a, c, s, 0, l0, s0))
    throw DomainError("candidate moments undefined at n = 0");
  for (int n = 0; n <= n_max; ++n) {
    double ln = 0.0, sn = 1.0;
    if (!candidate_log_moment(p, a, c, s, n, ln, sn)) {
      // Mellin integral diverges at this n; NaN marks the moment undefined.
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(sn * s0 * std::exp(ln - l0));
  }
  return out;
}

QuadraticMeasureFit fit_quadratic_measure(double eps) {
  const MomentSequence target = quadratic_moments(eps, 8);
  double ratio_target[3];
  for (int n = 0; n < 3; ++n)
    ratio_target[n] = target.values[static_cast<std::size_t>(n) + 1] /
                      target.values[static_cast<std::size_t>(n)];

  // The candidate's moment ratio is rho_n = B_n (c - 1 - B_n) /
  // (s (a - 1 - B_n)) with B_n = B0 + n, B0 = 1 + p/2. For fixed B0 the
  // three ratio-match equations (B0+n)(C-n) = s R_n (A-n), with
  // A = a - 1 - B0 and C = c - 1 - B0, are linear in (C, t, s) where
  // t = s A. Scan B0, solve exactly, and keep the candidate whose
  // validation moments n = 4..8 come closest to the target.
  const auto evaluate = [&](double b0, QuadraticMeasureFit& out) -> bool {
    Eigen::Matrix3d lhs;
    Eigen::Vector3d rhs;
    for (int n = 0; n < 3; ++n) {
      lhs(n, 0) = b0 + n;                          // C
      lhs(n, 1) = -ratio_target[n];                // t = s A
      lhs(n, 2) = static_cast<double>(n) * ratio_target[n];  // s
      rhs(n) = static_cast<double>(n) * (b0 + n);
    }
    const Eigen::ColPivHouseholderQR<Eigen::Matrix3d> qr(lhs);
    if (qr.rank() < 3) return false;
    const Eigen::Vector3d sol = qr.solve(rhs);
    const double C = sol(0), t = sol(1), s = sol(2);
    if (!(s > 0.0) || !std::isfinite(t) || !std::isfinite(C)) return false;
    const double A = t / s;
    out.p = 2.0 * (b0 - 1.0);
    out.s = s;
    out.a = A + 1.0 + b0;
    out.c = C + 1.0 + b0;

    out.fit_rel_error.clear();
    for (int n = 0; n < 3; ++n) {
      const double bn = b0 + n;
      const double rho = bn * (C - n) / (s * (A - n));
      if (!(rho > 0.0) || !std::isfinite(rho)) return false;
      out.fit_rel_error.push_back(std::abs(rho / ratio_target[n] - 1.0));
    }

    out.validation_rel_error.clear();
    const std::vector<double> cand =
        candidate_measure_moments(out.p, out.a, out.c, out.s, 8);
    for (int n = 4; n <= 8; ++n) {
      const double tv = target.values[static_cast<std::size_t>(n)];
      const double cv = cand[static_cast<std::size_t>(n)];
      out.validation_rel_error.push_back(
          std::isnan(cv) ? std::numeric_limits<double>::infinity()
                         : std::abs(cv - tv) / std::abs(tv));
    }
    return true;
  };

  QuadraticMeasureFit best;
  double best_score = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double b0 = 0.25; b0 <= 12.0; b0 += 0.25) {
    QuadraticMeasureFit trial;
    if (!evaluate(b0, trial)) continue;
    double score = 0.0;
    for (double e : trial.validation_rel_error) score = std::max(score, e);
    if (!found || score < best_score) {
      best = trial;
      best_score = score;
      found = true;
    }
  }
  if (!found) {
    best.fit_rel_error.assign(3, std::numeric_limits<double>::infinity());
    best.validation_rel_error.assign(5,
                                     std::numeric_limits<double>::infinity());
    best.resolved = false;
    return best;
  }

  bool fit_ok = true;
  for (double e : best.fit_rel_error) fit_ok = fit_ok && e <= 1e-6;
  bool validated = true;
  for (double e : best.validation_rel_error) validated = validated && e <= 1e-4;
  best.resolved = fit_ok && validated;
  return best;
}

}  // namespace polycs
