#include <darc/schur.hpp>

#include <algorithm>
#include <cmath>

#include <darc/errors.hpp>
#include <darc/poly.hpp>

namespace darc {

namespace {

double mod_at(const Rational& f, double theta) {
  return std::abs(f.eval_unchecked(unit_circle(theta)));
}

// Golden-section search for the extremum of |f| on [lo, hi]; sign = +1 for a
// maximum, -1 for a minimum. Returns the extremal modulus.
double golden_extremum(const Rational& f, double lo, double hi, double sign) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = sign * mod_at(f, x1), f2 = sign * mod_at(f, x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = sign * mod_at(f, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = sign * mod_at(f, x1);
    }
  }
  return sign * std::max(f1, f2);
}

void require_analytic_closed_disk(const Rational& f, const char* what) {
  for (Complex p : f.poles()) {
    if (std::abs(p) <= 1.0 + 1e-13)
      throw NotAnalyticError(std::string(what) + ": pole inside the closed unit disk", p);
  }
}

}  // namespace

double sup_circle_modulus(const Rational& f, double cert_tol) {
  constexpr int n = 4096;
  std::vector<double> vals(n);
  int argmax = 0;
  for (int k = 0; k < n; ++k) {
    vals[k] = mod_at(f, kTwoPi * k / n);
    if (vals[k] > vals[argmax]) argmax = k;
  }
  const double h = kTwoPi / n;
  auto bracket_max = [&](int k) {
    return golden_extremum(f, (k - 1) * h, (k + 1) * h, +1.0);
  };
  double sup = bracket_max(argmax);
  const double gate = 1.0 - 10.0 * cert_tol;
  int refined = 0;
  for (int k = 0; k < n && refined < 64; ++k) {
    if (k == argmax || vals[k] <= gate) continue;
    if (vals[k] >= vals[(k + n - 1) % n] && vals[k] >= vals[(k + 1) % n]) {
      sup = std::max(sup, bracket_max(k));
      ++refined;
    }
  }
  return sup;
}

SchurCertificate certify_schur(const Rational& f, double cert_tol) {
  require_analytic_closed_disk(f, "schur certification");
  constexpr int n = 4096;
  std::vector<double> vals(n);
  int argmax = 0, argmin = 0;
  for (int k = 0; k < n; ++k) {
    vals[k] = mod_at(f, kTwoPi * k / n);
    if (vals[k] > vals[argmax]) argmax = k;
    if (vals[k] < vals[argmin]) argmin = k;
  }
  const double h = kTwoPi / n;
  double sup = golden_extremum(f, (argmax - 1) * h, (argmax + 1) * h, +1.0);
  const double gate = 1.0 - 10.0 * cert_tol;
  int refined = 0;
  for (int k = 0; k < n && refined < 64; ++k) {
    if (k == argmax || vals[k] <= gate) continue;
    if (vals[k] >= vals[(k + n - 1) % n] && vals[k] >= vals[(k + 1) % n]) {
      sup = std::max(sup, golden_extremum(f, (k - 1) * h, (k + 1) * h, +1.0));
      ++refined;
    }
  }
  double inf = golden_extremum(f, (argmin - 1) * h, (argmin + 1) * h, -1.0);
  inf = std::min(inf, vals[argmin]);

  SchurCertificate cert;
  cert.sup_bound = sup;
  cert.is_schur = sup <= 1.0 + cert_tol;
  double unimodular_dev = std::max(std::abs(sup - 1.0), std::abs(inf - 1.0));
  cert.is_finite_blaschke = cert.is_schur && unimodular_dev <= cert_tol;
  cert.log_integrable_full_circle = !cert.is_finite_blaschke;
  return cert;
}

std::pair<Rational, Rational> inner_outer(const Rational& f) {
  if (f.is_zero()) throw ZeroFunctionError("inner-outer factorization of the zero function");
  require_analytic_closed_disk(f, "inner-outer factorization");
  const Poly& num = f.num();
  const Poly& den = f.den();
  int origin_power = 0;
  std::vector<Complex> interior, boundary_or_outside;
  if (num.degree() > 0) {
    for (Complex r : poly_roots(num)) {
      if (std::abs(r) <= 1e-8)
        ++origin_power;
      else if (std::abs(r) < 1.0 - 1e-8)
        interior.push_back(r);
      else
        boundary_or_outside.push_back(r);
    }
  }
  // Unimodular phase chosen so the outer factor is positive at the origin.
  Complex w = num.leading();
  for (Complex b : boundary_or_outside) w *= -b;
  w /= den.eval(Complex(0.0));
  Complex phi = w / std::abs(w);

  Poly inner_num = Poly::from_roots(interior, phi) * Poly::monomial(origin_power);
  Poly reflected = Poly::constant(Complex(1.0));
  for (Complex a : interior) reflected = reflected * Poly{Complex(1.0), -std::conj(a)};
  Poly outer_num = Poly::from_roots(boundary_or_outside, std::conj(phi) * num.leading()) * reflected;
  return {Rational(inner_num, reflected), Rational(outer_num, den)};
}

std::pair<Rational, Rational> nevanlinna_split(const Rational& g, double cert_tol) {
  if (g.is_zero()) throw ZeroFunctionError("nevanlinna split of the zero function");
  Poly num2 = Poly::constant(Complex(1.0));
  Poly den2 = Poly::constant(Complex(1.0));
  for (Complex b : g.poles()) {
    if (std::abs(b) <= 1e-8) {
      num2 = num2 * Poly::monomial(1);
    } else if (std::abs(b) < 1.0 - 1e-8) {
      num2 = num2 * Poly{-b, Complex(1.0)};
      den2 = den2 * Poly{Complex(1.0), -std::conj(b)};
    } else {
      // Pole on or outside the circle: linear factor vanishing there,
      // normalized to boundary sup 1 and positive at the origin.
      Complex phase = -std::conj(b) / std::abs(b);
      double scale = 1.0 + std::abs(b);
      num2 = num2 * Poly{-b * phase / scale, phase / scale};
    }
  }
  Rational g2(num2, den2);
  Rational g1 = g * g2;
  SchurCertificate c1 = certify_schur(g1, cert_tol);
  if (c1.sup_bound > 1.0) {
    Complex lam((1.0 - 1e-12) / c1.sup_bound);
    g1 = g1 * lam;
    g2 = g2 * lam;
    c1 = certify_schur(g1, cert_tol);
  }
  SchurCertificate c2 = certify_schur(g2, cert_tol);
  if (!c1.is_schur || !c2.is_schur)
    throw DegenerateInputError("nevanlinna factors failed contractivity certification");
  return {g1, g2};
}

std::pair<Poly, Poly> boundary_squared_modulus_polys(const Rational& f) {
  Poly a = f.num() * f.num().reversed_conjugate() * Poly::monomial(f.den().degree());
  Poly b = f.den() * f.den().reversed_conjugate() * Poly::monomial(f.num().degree());
  return {a, b};
}

std::optional<double> constant_squared_modulus(const Rational& f) {
  if (f.is_zero()) return 0.0;
  auto [a, b] = boundary_squared_modulus_polys(f);
  int idx = 0;
  double best = 0.0;
  for (int k = 0; k <= b.degree(); ++k) {
    if (std::abs(b.coeff(k)) > best) {
      best = std::abs(b.coeff(k));
      idx = k;
    }
  }
  Complex c = a.coeff(idx) / b.coeff(idx);
  if (std::abs(c.imag()) > 1e-12 * (1.0 + std::abs(c)) || c.real() <= 0.0) return std::nullopt;
  if (!a.approx_equal(b * Complex(c.real()), 1e-12)) return std::nullopt;
  return c.real();
}

std::vector<double> unit_modulus_angles(const Rational& f) {
  auto [a, b] = boundary_squared_modulus_polys(f);
  Poly d = b - a;
  std::vector<double> out;
  if (d.is_zero() || d.degree() == 0) return out;
  for (Complex r : poly_roots(d)) {
    if (std::abs(std::abs(r) - 1.0) < 1e-9) {
      double ang = std::arg(r);
      if (ang < 0.0) ang += kTwoPi;
      if (ang > kTwoPi - 1e-9) ang = 0.0;
      out.push_back(ang);
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double ang : out) {
    if (uniq.empty() || ang - uniq.back() > 1e-9) uniq.push_back(ang);
  }
  if (uniq.size() > 1 && (uniq.front() + kTwoPi) - uniq.back() <= 1e-9) uniq.pop_back();
  return uniq;
}

}  // namespace darc
