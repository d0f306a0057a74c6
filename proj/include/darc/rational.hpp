#pragma once

#include <vector>

#include <darc/poly.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * Rational function num/den in lowest observed terms.
 *
 * Construction normalizes the denominator to be monic, cancels numerator and
 * denominator roots that agree to high accuracy, and caches the remaining
 * denominator roots as the pole list. Throws DegenerateInputError when the
 * denominator is the zero polynomial.
 */
class Rational {
 public:
  Rational() : num_(Poly()), den_(Poly::constant(Complex(1.0))) {}
  Rational(Poly num, Poly den);
  explicit Rational(Poly num) : Rational(std::move(num), Poly::constant(Complex(1.0))) {}

  static Rational constant(Complex c) { return Rational(Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::vector<Complex>& poles() const { return poles_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() == 0 && den_.degree() == 0; }

  // Guards against evaluation within 1e-12 of a pole (PoleProximityError).
  Complex eval(Complex z) const;
  // No pole guard; intended for boundary sampling where poles were already
  // checked to be off the circle.
  Complex eval_unchecked(Complex z) const { return num_.eval(z) / den_.eval(z); }

  // f#(z) = conj(f(1 / conj z)): coefficient reversal + conjugation in both
  // numerator and denominator, with a z-power balancing the degree mismatch.
  Rational para_conjugate() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator*(Complex s) const;
  Rational operator-() const;

  // Throws ZeroFunctionError when dividing by the zero function.
  Rational operator/(const Rational& o) const;

  bool approx_equal(const Rational& o, double tol) const;

 private:
  Poly num_;
  Poly den_;
  std::vector<Complex> poles_;
};

}  // namespace darc
