#include "polycs/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace polycs {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) {
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

int Polynomial::degree() const { return static_cast<int>(c_.size()) - 1; }

double Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

Polynomial Polynomial::shifted(double dx) const {
  // In-place Taylor shift by repeated synthetic division.
  std::vector<double> c = c_;
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < n; ++i)
    for (int k = n - 2; k >= i; --k) c[k] += dx * c[k + 1];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

double Polynomial::root_bound() const {
  if (c_.size() <= 1) return 0.0;
  const double lead = std::abs(c_.back());
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < c_.size(); ++k)
    m = std::max(m, std::abs(c_[k]) / lead);
  return 1.0 + m;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::almost_equal(const Polynomial& other, double tol) const {
  const std::size_t n = std::max(c_.size(), other.c_.size());
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(coeff(static_cast<int>(k)) -
                 other.coeff(static_cast<int>(k))) > tol)
      return false;
  return true;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial{};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c = p.c_;
  for (double& x : c) x *= s;
  return Polynomial(std::move(c));
}

}  // namespace polycs
