#include <darc/rational.hpp>

#include <algorithm>
#include <cmath>

#include <darc/errors.hpp>

namespace darc {

namespace {

// Match numerator roots against denominator roots and drop agreeing pairs.
// Rebuild both polynomials from the surviving roots only when at least one
// pair cancelled, so exact input coefficients are otherwise preserved.
void cancel_common_roots(Poly& num, Poly& den) {
  if (num.is_zero() || den.degree() == 0) return;
  std::vector<Complex> nr = poly_roots(num);
  std::vector<Complex> dr = poly_roots(den);
  std::vector<bool> used(nr.size(), false);
  std::vector<Complex> dr_kept;
  bool any = false;
  for (Complex r : dr) {
    bool matched = false;
    for (size_t i = 0; i < nr.size(); ++i) {
      if (used[i]) continue;
      if (std::abs(nr[i] - r) < 1e-10 * (1.0 + std::abs(r))) {
        used[i] = true;
        matched = true;
        any = true;
        break;
      }
    }
    if (!matched) dr_kept.push_back(r);
  }
  if (!any) return;
  std::vector<Complex> nr_kept;
  for (size_t i = 0; i < nr.size(); ++i)
    if (!used[i]) nr_kept.push_back(nr[i]);
  Complex nl = num.leading();
  Complex dl = den.leading();
  num = Poly::from_roots(nr_kept, nl);
  den = Poly::from_roots(dr_kept, dl);
}

}  // namespace

Rational::Rational(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DegenerateInputError("rational function with zero denominator");
  cancel_common_roots(num_, den_);
  // Monic denominator normalization keeps representations comparable.
  Complex lead = den_.leading();
  den_ = den_ * (Complex(1.0) / lead);
  num_ = num_ * (Complex(1.0) / lead);
  if (den_.degree() > 0) poles_ = poly_roots(den_);
}

Complex Rational::eval(Complex z) const {
  for (Complex p : poles_) {
    if (std::abs(z - p) < 1e-12)
      throw PoleProximityError("evaluation point within 1e-12 of a pole", p);
  }
  return num_.eval(z) / den_.eval(z);
}

Rational Rational::para_conjugate() const {
  // For f = n/d with deg n = a, deg d = b:
  //   conj(f(1/conj z)) = z^(b-a) revconj(n)(z) / revconj(d)(z).
  Poly rn = num_.reversed_conjugate();
  Poly rd = den_.reversed_conjugate();
  int a = num_.degree(), b = den_.degree();
  if (num_.is_zero()) return Rational();
  if (b >= a) return Rational(Poly::monomial(b - a) * rn, rd);
  return Rational(rn, Poly::monomial(a - b) * rd);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator*(Complex s) const { return Rational(num_ * s, den_); }

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw ZeroFunctionError("division by the zero function");
  return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::approx_equal(const Rational& o, double tol) const {
  // Cross-multiplied comparison tolerates different normalizations.
  Poly lhs = num_ * o.den_;
  Poly rhs = o.num_ * den_;
  return lhs.approx_equal(rhs, tol);
}

}  // namespace darc
