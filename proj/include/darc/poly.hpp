#pragma once

#include <span>
#include <vector>

#include <darc/types.hpp>

namespace darc {

/**
 * Dense univariate polynomial with complex coefficients.
 *
 * Coefficients are stored in ascending degree order. Construction trims the
 * leading end so that the stored leading coefficient is nonzero (the zero
 * polynomial is stored as the single coefficient 0).
 */
class Poly {
 public:
  Poly() : c_(CoeffVec::Zero(1)) {}
  explicit Poly(CoeffVec c);
  explicit Poly(std::initializer_list<Complex> c);

  static Poly constant(Complex c);
  static Poly monomial(int k, Complex lead = Complex(1.0));
  static Poly from_roots(std::span<const Complex> roots, Complex lead = Complex(1.0));

  bool is_zero() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const CoeffVec& coeffs() const { return c_; }
  Complex coeff(int k) const;
  Complex leading() const { return c_(c_.size() - 1); }
  double max_abs_coeff() const;

  Complex eval(Complex z) const;  // Horner
  Poly derivative() const;

  // coeff k of the result is conj(coeff(degree - k)); realizes
  // z^degree * conj(f(1/conj z)) for the stored degree.
  Poly reversed_conjugate() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex s) const;
  Poly operator-() const;

  bool approx_equal(const Poly& o, double tol) const;

 private:
  CoeffVec c_;
};

/**
 * All complex roots of p, with multiplicity (returned size == degree).
 *
 * Companion-matrix eigenvalues, polished by Newton steps, then clustered with
 * radius 1e-8; a cluster is replaced by its centroid with the cluster size as
 * multiplicity. Throws DegenerateInputError for the zero polynomial.
 */
std::vector<Complex> poly_roots(const Poly& p);

}  // namespace darc
