#pragma once

#include <complex>
#include <random>

#include "polycs/algebra.hpp"

namespace polycs::testing {

// g(x) = -x(x+1)/2, the pair-boson ladder convention (lowest weight j = -phi).
inline AlgebraSpec su11_bg_spec() {
  return AlgebraSpec{"su11-bg", CasimirShift{{0.0, -0.5, -0.5}}, ""};
}

// g(x) = -x(x+1), the undeformed convention with [K+, K-] = -2 K0.
inline AlgebraSpec su11_spec() {
  return AlgebraSpec{"su11", CasimirShift{{0.0, -1.0, -1.0}}, ""};
}

// g(x) = -(x - eps)(x + 1/2)(x + 1 - eps), lowest weight j = 1/2.
inline AlgebraSpec quadratic_spec(double eps) {
  const Polynomial f1{{-eps, 1.0}};
  const Polynomial f2{{0.5, 1.0}};
  const Polynomial f3{{1.0 - eps, 1.0}};
  return AlgebraSpec{"quadratic", -1.0 * (f1 * f2 * f3), ""};
}

// Non-compact cubic deformation g(x) = -(c x(x+1) + h x^2(x+1)^2).
inline AlgebraSpec higgs_spec(double c, double h) {
  const Polynomial x1{{0.0, 1.0}};
  const Polynomial x2{{1.0, 1.0}};
  return AlgebraSpec{"higgs", -1.0 * (c * (x1 * x2) + h * (x1 * x1 * x2 * x2)),
                     ""};
}

// su(2)-type compact case g(x) = +x(x+1); lowest weight j = -s terminates
// after 2s+1 states.
inline AlgebraSpec su2_spec() {
  return AlgebraSpec{"su2", CasimirShift{{0.0, 1.0, 1.0}}, ""};
}

inline double max_rel_diff(const StateVector& a, const StateVector& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = std::max({std::abs(a(i)), std::abs(b(i)), 1e-280});
    worst = std::max(worst, std::abs(a(i) - b(i)) / scale);
  }
  return worst;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240817);
  return gen;
}

}  // namespace polycs::testing
