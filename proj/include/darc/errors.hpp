#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace darc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid input (zero polynomial where a nonzero one is required, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// An operation that requires a not-identically-zero function received one.
class ZeroFunctionError : public Error {
 public:
  using Error::Error;
};

// Evaluation too close to a pole; carries the offending pole.
class PoleProximityError : public Error {
 public:
  PoleProximityError(const std::string& msg, std::complex<double> pole)
      : Error(msg), pole(pole) {}
  std::complex<double> pole;
};

// Function has a pole inside the closed unit disk.
class NotAnalyticError : public Error {
 public:
  NotAnalyticError(const std::string& msg, std::complex<double> pole)
      : Error(msg), pole(pole) {}
  std::complex<double> pole;
};

// log-weight is not integrable over the requested arc (vanishes on a set of
// positive measure, e.g. 1-|s|^2 for a finite Blaschke product).
class NonIntegrableWeightError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature detected a divergent refinement.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Schwarz kernel evaluated on the arc carrying the weight.
class KernelPoleError : public Error {
 public:
  using Error::Error;
};

// Caller picked the general construction for a finite Blaschke product, or the
// diagonal embedding for a non-Blaschke input.
class WrongBranchError : public Error {
 public:
  using Error::Error;
};

// A check was invoked on inputs that violate its hypothesis.
class HypothesisViolatedError : public Error {
 public:
  using Error::Error;
};

// det S vanishes at a reflected sample point; carries the boundary angle.
class WitnessSingularError : public Error {
 public:
  WitnessSingularError(const std::string& msg, double angle)
      : Error(msg), angle(angle) {}
  double angle;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An entry fails the structural requirements a certification relies on.
class CertificationImpossibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace darc
