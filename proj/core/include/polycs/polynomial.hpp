#pragma once

#include <initializer_list>
#include <vector>

namespace polycs {

// Real polynomial in one variable, coefficients stored in ascending powers.
// Evaluation uses Horner's rule; identity checks compare coefficients rather
// than samples.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  double operator()(double x) const;

  // Degree of the trimmed polynomial; -1 for the zero polynomial.
  int degree() const;
  const std::vector<double>& coeffs() const { return c_; }
  double coeff(int k) const;  // 0 beyond the stored degree

  Polynomial shifted(double dx) const;  // p(x + dx), Taylor shift
  Polynomial derivative() const;

  // Cauchy bound: every real root r satisfies |r| <= bound.
  double root_bound() const;

  double max_abs_coeff() const;
  bool almost_equal(const Polynomial& other, double tol) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);

 private:
  void trim();
  std::vector<double> c_;
};

}  // namespace polycs
