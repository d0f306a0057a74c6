#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <vector>

#include <darc/errors.hpp>
#include <darc/poly.hpp>

using darc::Complex;
using darc::Poly;

namespace {

std::vector<Complex> sorted_by_real(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("construction trims leading zeros") {
  Poly p{Complex(1.0), Complex(2.0), Complex(0.0), Complex(0.0)};
  CHECK(p.degree() == 1);
  CHECK(p.coeff(0) == Complex(1.0));
  CHECK(p.coeff(1) == Complex(2.0));
  CHECK(p.coeff(5) == Complex(0.0));

  Poly z{Complex(0.0), Complex(0.0)};
  CHECK(z.is_zero());
  CHECK(z.degree() == 0);
}

TEST_CASE("evaluation matches direct expansion") {
  // p(z) = 2 - 3z + z^3
  Poly p{Complex(2.0), Complex(-3.0), Complex(0.0), Complex(1.0)};
  Complex z(0.7, -0.4);
  Complex expect = 2.0 - 3.0 * z + z * z * z;
  CHECK(std::abs(p.eval(z) - expect) < 1e-15);
  CHECK(std::abs(p.eval(Complex(0.0)) - Complex(2.0)) < 1e-15);
}

TEST_CASE("arithmetic and derivative") {
  Poly a{Complex(1.0), Complex(1.0)};             // 1 + z
  Poly b{Complex(-1.0), Complex(0.0), Complex(2.0)};  // -1 + 2z^2
  Poly prod = a * b;
  // (1 + z)(-1 + 2z^2) = -1 - z + 2z^2 + 2z^3
  CHECK(prod.approx_equal(Poly{Complex(-1.0), Complex(-1.0), Complex(2.0), Complex(2.0)}, 1e-15));
  Poly sum = a + b;
  CHECK(sum.approx_equal(Poly{Complex(0.0), Complex(1.0), Complex(2.0)}, 1e-15));
  Poly d = prod.derivative();
  CHECK(d.approx_equal(Poly{Complex(-1.0), Complex(4.0), Complex(6.0)}, 1e-15));
  CHECK(Poly::constant(Complex(5.0)).derivative().is_zero());
}

TEST_CASE("reversed conjugate is a degree-preserving involution") {
  Poly p{Complex(1.0, 2.0), Complex(-0.5, 0.25), Complex(3.0, -1.0)};
  Poly r = p.reversed_conjugate();
  CHECK(r.coeff(0) == std::conj(p.coeff(2)));
  CHECK(r.coeff(1) == std::conj(p.coeff(1)));
  CHECK(r.coeff(2) == std::conj(p.coeff(0)));
  CHECK(r.reversed_conjugate().approx_equal(p, 1e-15));
}

TEST_CASE("quadratic roots in closed form") {
  // 3z^2 - 7z + 2 = (3z - 1)(z - 2), roots 1/3 and 2.
  Poly p{Complex(2.0), Complex(-7.0), Complex(3.0)};
  auto r = sorted_by_real(poly_roots(p));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - Complex(1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(r[1] - Complex(2.0)) < 1e-12);
}

TEST_CASE("companion roots recover scattered complex roots") {
  std::vector<Complex> roots{Complex(0.3, 0.4), Complex(-1.5, 0.0), Complex(0.0, -2.0),
                             Complex(2.5, 1.0)};
  Poly p = Poly::from_roots(roots, Complex(0.0, 3.0));
  auto r = sorted_by_real(poly_roots(p));
  auto expect = sorted_by_real(roots);
  REQUIRE(r.size() == expect.size());
  for (size_t i = 0; i < r.size(); ++i) CHECK(std::abs(r[i] - expect[i]) < 1e-9);
}

TEST_CASE("multiple roots are clustered to their centroid") {
  std::vector<Complex> roots{Complex(0.5, 0.0), Complex(0.5, 0.0), Complex(0.5, 0.0)};
  Poly p = Poly::from_roots(roots);
  auto r = poly_roots(p);
  REQUIRE(r.size() == 3);
  for (Complex x : r) CHECK(std::abs(x - Complex(0.5)) < 1e-9);
  // All three entries are the identical clustered value.
  CHECK(r[0] == r[1]);
  CHECK(r[1] == r[2]);
}

TEST_CASE("double root beside a simple root") {
  std::vector<Complex> roots{Complex(0.4, 0.2), Complex(0.4, 0.2), Complex(-2.0, 0.0)};
  Poly p = Poly::from_roots(roots, Complex(2.0, -1.0));
  auto r = sorted_by_real(poly_roots(p));
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[0] - Complex(-2.0)) < 1e-10);
  CHECK(std::abs(r[1] - Complex(0.4, 0.2)) < 1e-8);
  CHECK(r[1] == r[2]);
}

TEST_CASE("roots of linear and constant polynomials") {
  Poly lin{Complex(1.0), Complex(-2.0)};  // 1 - 2z
  auto r = poly_roots(lin);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - Complex(0.5)) < 1e-15);
  CHECK(poly_roots(Poly::constant(Complex(4.0))).empty());
  CHECK_THROWS_AS(poly_roots(Poly()), darc::DegenerateInputError);
}

TEST_CASE("roots near the unit circle stay accurate") {
  std::vector<Complex> roots{std::polar(1.0, 0.3), std::polar(1.0, -1.1), std::polar(0.99, 2.0)};
  Poly p = Poly::from_roots(roots);
  auto r = poly_roots(p);
  REQUIRE(r.size() == 3);
  for (Complex expect : roots) {
    double best = 1e9;
    for (Complex got : r) best = std::min(best, std::abs(got - expect));
    CHECK(best < 1e-10);
  }
}
