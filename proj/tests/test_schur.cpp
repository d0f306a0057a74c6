#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include <darc/errors.hpp>
#include <darc/schur.hpp>
#include <darc/types.hpp>

using darc::Complex;
using darc::Poly;
using darc::Rational;

namespace {

Rational half_z() { return Rational(Poly{Complex(0.0), Complex(0.5)}); }

Rational blaschke(Complex a) {
  return Rational(Poly{-a, Complex(1.0)}, Poly{Complex(1.0), -std::conj(a)});
}

double boundary_gap(const Rational& a, const Rational& b, int samples = 512) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Complex t = darc::unit_circle(darc::kTwoPi * k / samples + 0.017);
    worst = std::max(worst, std::abs(a.eval_unchecked(t) - b.eval_unchecked(t)));
  }
  return worst;
}

}  // namespace

TEST_CASE("certification of z/2") {
  auto cert = darc::certify_schur(half_z());
  CHECK(cert.is_schur);
  CHECK(!cert.is_finite_blaschke);
  CHECK(cert.log_integrable_full_circle);
  CHECK(std::abs(cert.sup_bound - 0.5) < 1e-12);
}

TEST_CASE("certification of a disk automorphism") {
  auto cert = darc::certify_schur(blaschke(Complex(0.5)));
  CHECK(cert.is_schur);
  CHECK(cert.is_finite_blaschke);
  CHECK(!cert.log_integrable_full_circle);
  CHECK(std::abs(cert.sup_bound - 1.0) < 1e-10);
}

TEST_CASE("certification of a product of automorphisms") {
  Rational b = blaschke(Complex(0.3, 0.4)) * blaschke(Complex(-0.1, 0.6)) * blaschke(Complex(0.0));
  auto cert = darc::certify_schur(b);
  CHECK(cert.is_schur);
  CHECK(cert.is_finite_blaschke);
}

TEST_CASE("certification rejects expanding functions and interior poles") {
  Rational two_z(Poly{Complex(0.0), Complex(2.0)});
  auto cert = darc::certify_schur(two_z);
  CHECK(!cert.is_schur);
  CHECK(std::abs(cert.sup_bound - 2.0) < 1e-10);

  Rational pole_inside(Poly{Complex(1.0)}, Poly{Complex(-0.5), Complex(1.0)});
  CHECK_THROWS_AS(darc::certify_schur(pole_inside), darc::NotAnalyticError);
}

TEST_CASE("sup with an off-grid peak is refined") {
  // 0.9 + 0.1 z^3 peaks where z^3 = 1; peak value exactly 1.
  Rational f(Poly{Complex(0.9), Complex(0.0), Complex(0.0), Complex(0.1)});
  double sup = darc::sup_circle_modulus(f);
  CHECK(std::abs(sup - 1.0) < 1e-11);
  auto cert = darc::certify_schur(f);
  CHECK(cert.is_schur);
  CHECK(!cert.is_finite_blaschke);
}

TEST_CASE("inner-outer splits a zero at the origin from an outer linear factor") {
  // f = z(2-z)/3: inner z, outer (2-z)/3.
  Rational f(Poly{Complex(0.0), Complex(2.0 / 3.0), Complex(-1.0 / 3.0)});
  auto [inner, outer] = darc::inner_outer(f);
  CHECK(boundary_gap(inner, Rational(Poly{Complex(0.0), Complex(1.0)})) < 1e-12);
  CHECK(boundary_gap(outer, Rational(Poly{Complex(2.0 / 3.0), Complex(-1.0 / 3.0)})) < 1e-12);
}

TEST_CASE("inner-outer of a pure automorphism") {
  Rational f = blaschke(Complex(0.5));
  auto [inner, outer] = darc::inner_outer(f);
  CHECK(boundary_gap(inner, f) < 1e-11);
  CHECK(boundary_gap(outer, Rational::constant(Complex(1.0))) < 1e-11);
}

TEST_CASE("inner-outer of a zero-free function is trivial") {
  Rational f(Poly{Complex(2.0 / 3.0), Complex(-1.0 / 3.0)});  // (2-z)/3
  auto [inner, outer] = darc::inner_outer(f);
  CHECK(inner.is_constant());
  CHECK(boundary_gap(inner, Rational::constant(Complex(1.0))) < 1e-12);
  CHECK(boundary_gap(outer, f) < 1e-12);
}

TEST_CASE("inner-outer normalizes the outer factor positive at the origin") {
  Rational f = Rational(Poly{Complex(0.0, -2.0 / 3.0), Complex(0.0, 1.0 / 3.0)});  // i(z-2)/3
  auto [inner, outer] = darc::inner_outer(f);
  Complex o0 = outer.eval(Complex(0.0));
  CHECK(o0.real() > 0.0);
  CHECK(std::abs(o0.imag()) < 1e-14);
  CHECK(std::abs(std::abs(inner.eval_unchecked(darc::unit_circle(1.234))) - 1.0) < 1e-12);
}

TEST_CASE("inner-outer roundtrip on a mixed function") {
  // Zeros inside (0.3+0.2i), at origin, on the circle (1), outside (3); poles outside.
  Poly num = Poly::from_roots(
      std::vector<Complex>{Complex(0.3, 0.2), Complex(0.0), Complex(1.0), Complex(3.0)},
      Complex(0.05, 0.02));
  Poly den = Poly::from_roots(std::vector<Complex>{Complex(2.0, 1.0), Complex(-1.8, 0.4)});
  Rational f(num, den);
  auto [inner, outer] = darc::inner_outer(f);
  for (int k = 0; k < 256; ++k) {
    Complex t = darc::unit_circle(darc::kTwoPi * k / 256 + 0.01);
    CHECK(std::abs(std::abs(inner.eval_unchecked(t)) - 1.0) < 1e-10);
    Complex prod = inner.eval_unchecked(t) * outer.eval_unchecked(t);
    CHECK(std::abs(prod - f.eval_unchecked(t)) < 1e-10);
  }
  // outer factor zero-free in the open disk
  for (Complex r : darc::poly_roots(outer.num())) CHECK(std::abs(r) >= 1.0 - 1e-9);
  CHECK_THROWS_AS(darc::inner_outer(Rational()), darc::ZeroFunctionError);
}

TEST_CASE("nevanlinna split with a pole at the origin") {
  Rational g = half_z().para_conjugate();  // 1/(2z)
  auto [g1, g2] = darc::nevanlinna_split(g);
  CHECK(boundary_gap(g1, Rational::constant(Complex(0.5))) < 1e-12);
  CHECK(boundary_gap(g2, Rational(Poly{Complex(0.0), Complex(1.0)})) < 1e-12);
}

TEST_CASE("nevanlinna split of a constant is trivial") {
  auto [g1, g2] = darc::nevanlinna_split(Rational::constant(Complex(0.75)));
  CHECK(boundary_gap(g1, Rational::constant(Complex(0.75))) < 1e-14);
  CHECK(boundary_gap(g2, Rational::constant(Complex(1.0))) < 1e-14);
}

TEST_CASE("nevanlinna split with an exterior pole gives a contractive denominator") {
  // g = (1/4)/(1 - z/2): exterior pole at 2.
  Rational g(Poly{Complex(0.25)}, Poly{Complex(1.0), Complex(-0.5)});
  auto [g1, g2] = darc::nevanlinna_split(g);
  // Denominator factor (2-z)/3: boundary sup exactly 1, positive at origin.
  CHECK(boundary_gap(g2, Rational(Poly{Complex(2.0 / 3.0), Complex(-1.0 / 3.0)})) < 1e-12);
  CHECK(boundary_gap(g1, Rational::constant(Complex(1.0 / 6.0))) < 1e-12);
  CHECK(darc::certify_schur(g1).is_schur);
  CHECK(darc::certify_schur(g2).is_schur);
}

TEST_CASE("nevanlinna split rescales a large quotient") {
  Rational g = Rational::constant(Complex(100.0));
  auto [g1, g2] = darc::nevanlinna_split(g);
  CHECK(darc::certify_schur(g1).is_schur);
  CHECK(darc::certify_schur(g2).is_schur);
  Complex z(0.4, 0.3);
  CHECK(std::abs(g1.eval(z) / g2.eval(z) - Complex(100.0)) < 1e-9);
}

TEST_CASE("nevanlinna split with mixed interior and exterior poles") {
  // g = 1/(z(1-z/2)): poles at 0 and 2.
  Rational g(Poly{Complex(1.0)}, Poly{Complex(0.0), Complex(1.0), Complex(-0.5)});
  auto [g1, g2] = darc::nevanlinna_split(g);
  CHECK(darc::certify_schur(g1).is_schur);
  CHECK(darc::certify_schur(g2).is_schur);
  for (int k = 0; k < 64; ++k) {
    Complex t = darc::unit_circle(darc::kTwoPi * k / 64 + 0.05);
    CHECK(std::abs(g1.eval_unchecked(t) / g2.eval_unchecked(t) - g.eval_unchecked(t)) < 1e-10);
  }
  CHECK_THROWS_AS(darc::nevanlinna_split(Rational()), darc::ZeroFunctionError);
}

TEST_CASE("constant squared modulus detection") {
  auto c = darc::constant_squared_modulus(half_z());
  REQUIRE(c.has_value());
  CHECK(std::abs(*c - 0.25) < 1e-14);

  auto cb = darc::constant_squared_modulus(blaschke(Complex(0.3, -0.2)));
  REQUIRE(cb.has_value());
  CHECK(std::abs(*cb - 1.0) < 1e-12);

  auto cs = darc::constant_squared_modulus(blaschke(Complex(0.5)) * Complex(0.6));
  REQUIRE(cs.has_value());
  CHECK(std::abs(*cs - 0.36) < 1e-12);

  CHECK(!darc::constant_squared_modulus(Rational(Poly{Complex(2.0 / 3.0), Complex(-1.0 / 3.0)}))
             .has_value());
  CHECK(!darc::constant_squared_modulus(Rational(Poly{Complex(0.0), Complex(0.5), Complex(0.5)}))
             .has_value());
}

TEST_CASE("angles of unimodular boundary values") {
  // s = z(1+z)/2: |s| = |cos(theta/2)|, equal to 1 only at theta = 0.
  Rational s(Poly{Complex(0.0), Complex(0.5), Complex(0.5)});
  auto angles = darc::unit_modulus_angles(s);
  REQUIRE(angles.size() == 1);
  CHECK(std::abs(angles[0]) < 1e-9);

  // s = z/2 never has unit modulus.
  CHECK(darc::unit_modulus_angles(half_z()).empty());

  // (z^2 - 1)/2 + something reaching 1 at two angles:
  // s = (1+z^2)/2 has |s| = |cos(theta)|, unit at 0 and pi.
  Rational s2(Poly{Complex(0.5), Complex(0.0), Complex(0.5)});
  auto a2 = darc::unit_modulus_angles(s2);
  REQUIRE(a2.size() == 2);
  CHECK(std::abs(a2[0] - 0.0) < 1e-9);
  CHECK(std::abs(a2[1] - darc::kPi) < 1e-9);
}
