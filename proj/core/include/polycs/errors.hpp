#pragma once

#include <stdexcept>
#include <string>

namespace polycs {

// Base class for all polycs errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual ~Error() = default;
  virtual std::string name() const { return "Error"; }
};

// Radicand C(j) - g(j+m-1) is not strictly positive at ladder step m: the
// representation terminates (or is non-unitary) at that truncation.
class NonUnitaryError : public Error {
 public:
  std::string name() const override { return "NonUnitaryError"; }
  NonUnitaryError(int m, double radicand)
      : Error("non-unitary ladder at m=" + std::to_string(m) +
              " (radicand " + std::to_string(radicand) + " <= 0)"),
        m_(m) {}
  int step() const { return m_; }

 private:
  int m_;
};

// The conjugate's denominator vanishes: finite-dimensional representation,
// the conjugate diverges on the highest state.
class DivergentConjugateError : public Error {
 public:
  std::string name() const override { return "DivergentConjugateError"; }
  explicit DivergentConjugateError(int m)
      : Error("canonical conjugate diverges at state m=" + std::to_string(m)),
        m_(m) {}
  int state() const { return m_; }

 private:
  int m_;
};

class DivergentMappingError : public Error {
 public:
  std::string name() const override { return "DivergentMappingError"; }
  explicit DivergentMappingError(int m)
      : Error("Lie mapping diverges at state m=" + std::to_string(m)), m_(m) {}
  int state() const { return m_; }

 private:
  int m_;
};

// Geometric tail certificate could not be established within the available
// basis: the eigenvalue is too large for the truncation budget.
class TailNotConvergentError : public Error {
 public:
  std::string name() const override { return "TailNotConvergentError"; }
  explicit TailNotConvergentError(const std::string& what) : Error(what) {}
};

// State leaked past the truncation (trailing coefficient too large).
class TruncationError : public Error {
 public:
  std::string name() const override { return "TruncationError"; }
  explicit TruncationError(const std::string& what) : Error(what) {}
};

// Dual-state norm diverges within the requested truncation.
class NonNormalizableError : public Error {
 public:
  std::string name() const override { return "NonNormalizableError"; }
  explicit NonNormalizableError(double growth_rate)
      : Error("dual state not normalizable (terminal |c_m| growth rate " +
              std::to_string(growth_rate) + " >= 1)"),
        rate_(growth_rate) {}
  double growth_rate() const { return rate_; }

 private:
  double rate_;
};

class DomainError : public Error {
 public:
  std::string name() const override { return "DomainError"; }
  explicit DomainError(const std::string& what) : Error(what) {}
};

class PoleError : public Error {
 public:
  std::string name() const override { return "PoleError"; }
  explicit PoleError(double x)
      : Error("pole at non-positive integer argument x=" + std::to_string(x)) {}
};

class NonConvergentError : public Error {
 public:
  std::string name() const override { return "NonConvergentError"; }
  explicit NonConvergentError(const std::string& what) : Error(what) {}
};

class EmptySectorError : public Error {
 public:
  std::string name() const override { return "EmptySectorError"; }
  EmptySectorError() : Error("joint charge eigenspace is empty") {}
};

class NoLowestWeightError : public Error {
 public:
  std::string name() const override { return "NoLowestWeightError"; }
  NoLowestWeightError() : Error("no lowering-operator kernel in sector") {}
};

// Sector is not a single irreducible ladder.
class NonLadderError : public Error {
 public:
  std::string name() const override { return "NonLadderError"; }
  explicit NonLadderError(int defect)
      : Error("sector is not a single ladder (defect dimension " +
              std::to_string(defect) + ")"),
        defect_(defect) {}
  int defect() const { return defect_; }

 private:
  int defect_;
};

class ParseError : public Error {
 public:
  std::string name() const override { return "ParseError"; }
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace polycs
