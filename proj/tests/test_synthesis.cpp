#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include <darc/errors.hpp>
#include <darc/schwarz.hpp>
#include <darc/synthesis.hpp>

using darc::AnalyticElement;
using darc::CircleArc;
using darc::Complex;
using darc::kPi;
using darc::kTwoPi;
using darc::Matrix2Fn;
using darc::Poly;
using darc::Rational;
using darc::SynthesisConfig;

namespace {

Complex C(double re, double im = 0.0) { return Complex(re, im); }

Rational half_z() { return Rational(Poly{C(0.0), C(0.5)}); }
Rational half_const() { return Rational(Poly{C(0.5)}); }
Rational zero_fn() { return Rational(Poly{C(0.0)}); }
Rational singular_schur() { return Rational(Poly{C(0.0), C(0.5), C(0.5)}); }
Rational automorphism_half() {
  return Rational(Poly{C(-0.5), C(1.0)}, Poly{C(1.0), C(-0.5)});
}
// lambda * Blaschke * outer: interior zero, pole outside, non-constant modulus
Rational mixed_schur() {
  Rational b(Poly{C(-0.3), C(1.0)}, Poly{C(1.0), C(-0.3)});
  Rational o(Poly{C(2.0 / 3.0), C(-1.0 / 3.0)});
  return b * o * C(0.9);
}

}  // namespace

TEST_CASE("pseudocontinuation of a rational function is the function itself") {
  Rational s = mixed_schur();
  Rational cont = darc::pseudocontinuation(s);
  CHECK(cont.approx_equal(s, 1e-15));
  // exterior reflection identity for a Blaschke factor: 1/conj(b(1/conj z)) = b(z)
  Rational b = automorphism_half();
  Complex zeta(1.7, 0.4);
  Complex reflected = 1.0 / std::conj(b.eval(1.0 / std::conj(zeta)));
  CHECK(std::abs(reflected - b.eval(zeta)) < 1e-12);
}

TEST_CASE("reflected pair (g, h)") {
  auto [g, h] = darc::reflected_pair(half_z());
  CHECK(g.approx_equal(Rational(Poly{C(1.0)}, Poly{C(0.0), C(2.0)}), 1e-14));
  CHECK(h.approx_equal(Rational(Poly{C(0.75)}), 1e-14));

  auto [g0, h0] = darc::reflected_pair(zero_fn());
  CHECK(g0.is_zero());
  CHECK(h0.approx_equal(Rational(Poly{C(1.0)}), 1e-14));

  auto [gc, hc] = darc::reflected_pair(half_const());
  CHECK(gc.approx_equal(half_const(), 1e-14));
  CHECK(hc.approx_equal(Rational(Poly{C(0.75)}), 1e-14));

  // on the circle h equals the boundary defect 1 - |s|^2
  Rational s = mixed_schur();
  auto [gm, hm] = darc::reflected_pair(s);
  for (int k = 0; k < 64; ++k) {
    Complex t = darc::unit_circle(kTwoPi * (k + 0.5) / 64.0);
    double defect = 1.0 - std::norm(s.eval(t));
    CHECK(std::abs(hm.eval(t) - C(defect)) < 1e-10);
  }
}

TEST_CASE("unimodular multiplier p") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);

  auto [g, h] = darc::reflected_pair(half_z());
  AnalyticElement p = darc::unimodular_multiplier(g, h, half, cfg);
  CHECK(p.factors().empty());
  CHECK(p.rational_part().approx_equal(Rational(Poly{C(0.0), C(1.0)}), 1e-14));
  CHECK(std::abs(p.eval(C(0.5)) - C(0.5)) < 1e-14);

  auto [g0, h0] = darc::reflected_pair(zero_fn());
  AnalyticElement p0 = darc::unimodular_multiplier(g0, h0, half, cfg);
  CHECK(p0.factors().empty());
  CHECK(std::abs(p0.eval(C(0.3)) - C(1.0)) < 1e-14);

  auto [gc, hc] = darc::reflected_pair(half_const());
  AnalyticElement pc = darc::unimodular_multiplier(gc, hc, half, cfg);
  CHECK(std::abs(pc.eval(C(0.3, 0.2)) - C(1.0)) < 1e-14);

  // |p| = 1 radially on the arc for an input with interior zeros and a pole
  Rational s = mixed_schur();
  auto [gm, hm] = darc::reflected_pair(s);
  AnalyticElement pm = darc::unimodular_multiplier(gm, hm, half, cfg);
  double rho = 1.0 - 1e-5;
  for (int k = 1; k < 8; ++k) {
    Complex z = std::polar(rho, kPi * k / 8.0);
    CHECK(std::abs(std::abs(pm.eval(z)) - 1.0) < 1e-3);
  }

  CHECK_THROWS_AS(darc::unimodular_multiplier(gm, zero_fn(), half, cfg),
                  darc::WrongBranchError);
}

TEST_CASE("first column closed forms") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);

  auto [g, h] = darc::reflected_pair(half_z());
  darc::FirstColumn col = darc::first_column(half_z(), g, h, half, cfg);
  for (Complex z : {C(0.0), C(0.3), C(-0.2, 0.4)}) {
    CHECK(std::abs(col.s11.eval(z) - C(-0.5)) < 1e-12);
    Complex sigma = darc::sigma_arc_eval(half_z(), half, z, cfg.quad);
    CHECK(std::abs(col.s21.eval(z) - 0.75 * z / sigma) < 1e-10);
    CHECK(std::abs(col.sigma.eval(z) - sigma) < 1e-12);
  }

  auto [g0, h0] = darc::reflected_pair(zero_fn());
  darc::FirstColumn col0 = darc::first_column(zero_fn(), g0, h0, half, cfg);
  CHECK(col0.s11.is_zero());
  CHECK(std::abs(col0.s21.eval(C(0.4, 0.1)) - C(1.0)) < 1e-14);
  CHECK(std::abs(col0.sigma.eval(C(0.4, 0.1)) - C(1.0)) < 1e-14);

  auto [gc, hc] = darc::reflected_pair(half_const());
  darc::FirstColumn colc = darc::first_column(half_const(), gc, hc, half, cfg);
  CHECK(std::abs(colc.s11.eval(C(0.2)) - C(-0.5)) < 1e-12);
  // |s21| = sqrt(3)/2 radially on the arc
  Complex z = std::polar(1.0 - 1e-5, 0.5 * kPi);
  CHECK(std::abs(std::abs(colc.s21.eval(z)) - std::sqrt(3.0) / 2.0) < 1e-3);
}

TEST_CASE("unitary embedding: full-circle closed form") {
  SynthesisConfig cfg;
  darc::SynthesizedMatrix out =
      darc::synthesize_unitary(half_z(), CircleArc::full_circle(), cfg);
  const double rt3h = std::sqrt(3.0) / 2.0;
  for (Complex z : {C(0.0), C(0.5), std::polar(1.0, 2.1), std::polar(1.0, -0.4)}) {
    Eigen::Matrix2cd m = out.S.eval(z);
    CHECK(std::abs(m(0, 0) - C(-0.5)) < 1e-14);
    CHECK(std::abs(m(0, 1) - C(rt3h)) < 1e-14);
    CHECK(std::abs(m(1, 0) - rt3h * z) < 1e-14);
    CHECK(std::abs(m(1, 1) - 0.5 * z) < 1e-14);
  }
  // unitary on the whole circle, evaluated exactly at |z| = 1
  for (int k = 0; k < 16; ++k) {
    Complex t = darc::unit_circle(kTwoPi * (k + 0.5) / 16.0);
    Eigen::Matrix2cd m = out.S.eval(t);
    Eigen::Matrix2cd res = m.adjoint() * m - Eigen::Matrix2cd::Identity();
    CHECK(res.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("unitary embedding: trivial and error branches") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);

  darc::SynthesizedMatrix out0 = darc::synthesize_unitary(zero_fn(), half, cfg);
  Eigen::Matrix2cd m = out0.S.eval(C(0.0, 0.7));
  CHECK(std::abs(m(0, 0)) < 1e-14);
  CHECK(std::abs(m(0, 1) - C(1.0)) < 1e-14);
  CHECK(std::abs(m(1, 0) - C(1.0)) < 1e-14);
  CHECK(std::abs(m(1, 1)) < 1e-14);

  CHECK_THROWS_AS(darc::synthesize_unitary(automorphism_half(), half, cfg),
                  darc::WrongBranchError);
  CHECK_THROWS_AS(darc::synthesize_unitary(Rational(Poly{C(0.0), C(2.0)}), half, cfg),
                  darc::HypothesisViolatedError);
}

TEST_CASE("unitary embedding: boundary identities on the arc") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);
  darc::SynthesizedMatrix out = darc::synthesize_unitary(half_z(), half, cfg);
  double rho = 1.0 - 1e-5;
  for (int k = 1; k < 16; ++k) {
    Complex z = std::polar(rho, kPi * k / 16.0);
    Eigen::Matrix2cd m = out.S.eval(z);
    // column sums and orthogonality of the unitarity computation
    double col1 = std::norm(m(0, 0)) + std::norm(m(1, 0));
    double col2 = std::norm(m(0, 1)) + std::norm(m(1, 1));
    Complex cross = std::conj(m(0, 0)) * m(0, 1) + std::conj(m(1, 0)) * m(1, 1);
    CHECK(std::abs(col1 - 1.0) < 1e-3);
    CHECK(std::abs(col2 - 1.0) < 1e-3);
    CHECK(std::abs(cross) < 1e-3);
  }
  // contractive entries off the arc as well
  for (int k = 1; k < 8; ++k) {
    Complex z = std::polar(rho, kPi + kPi * k / 8.0);
    Eigen::Matrix2cd m = out.S.eval(z);
    CHECK(m.cwiseAbs().maxCoeff() <= 1.0 + 1e-3);
  }
  // determinant bounded away from zero at interior points
  for (int k = 0; k < 20; ++k) {
    Complex z = std::polar(0.8 * (k + 1) / 21.0, 0.37 * k);
    CHECK(std::abs(out.S.eval(z).determinant()) > 1e-6);
  }
}

TEST_CASE("unitary embedding with singular boundary weight") {
  SynthesisConfig cfg;
  CircleArc arc = CircleArc::make(0.5, 2.5);
  Rational s = singular_schur();
  darc::SynthesizedMatrix out = darc::synthesize_unitary(s, arc, cfg);
  double rho = 1.0 - 1e-5;
  for (int k = 1; k < 10; ++k) {
    Complex z = std::polar(rho, 0.5 + 2.0 * k / 10.0);
    Eigen::Matrix2cd m = out.S.eval(z);
    Eigen::Matrix2cd res = m.adjoint() * m - Eigen::Matrix2cd::Identity();
    CHECK(res.cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("diagonal embedding for unimodular inputs") {
  Rational b = automorphism_half();
  Rational z_inner(Poly{C(0.0), C(1.0)});
  Matrix2Fn m = darc::diagonal_embedding(b, z_inner);
  Complex z(0.3, -0.2);
  CHECK(std::abs(m.eval(z)(0, 0) - z) < 1e-14);
  CHECK(std::abs(m.eval(z)(1, 1) - b.eval(z)) < 1e-14);
  CHECK(std::abs(m.eval(z)(0, 1)) == 0.0);
  for (int k = 0; k < 16; ++k) {
    Complex t = darc::unit_circle(kTwoPi * k / 16.0 + 0.05);
    Eigen::Matrix2cd u = m.eval(t);
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }
  Matrix2Fn m3 = darc::diagonal_embedding(Rational(Poly{C(0.0), C(0.0), C(0.0), C(1.0)}),
                                          Rational(Poly{C(1.0)}));
  CHECK(std::abs(m3.eval(C(0.5))(1, 1) - C(0.125)) < 1e-14);

  CHECK_THROWS_AS(darc::diagonal_embedding(half_z(), z_inner), darc::WrongBranchError);
  CHECK_THROWS_AS(darc::diagonal_embedding(b, half_z()), darc::WrongBranchError);
}

TEST_CASE("damping factor r") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);
  AnalyticElement r = darc::damping_factor(half_z(), half, cfg);
  // r(0) = eps^{1/2} * (3/4)^{1/4}
  CHECK(std::abs(r.eval(C(0.0)) - C(0.46530242955104983)) < 1e-12);

  AnalyticElement rfull = darc::damping_factor(half_z(), CircleArc::full_circle(), cfg);
  CHECK(rfull.factors().empty());
  CHECK(std::abs(rfull.eval(C(0.77, 0.1)) - C(1.0)) < 1e-14);

  // |r| = 1 radially on the arc; |r|^2 = eps^2 (1 - |s|^2) off it
  double rho = 1.0 - 1e-5;
  for (int k = 1; k < 8; ++k) {
    Complex on = std::polar(rho, kPi * k / 8.0);
    CHECK(std::abs(std::abs(r.eval(on)) - 1.0) < 1e-3);
    Complex off = std::polar(rho, kPi + kPi * k / 8.0);
    double expect = cfg.eps * cfg.eps * (1.0 - std::norm(half_z().eval(off / rho)));
    CHECK(std::abs(std::norm(r.eval(off)) - expect) < 1e-3);
  }

  SynthesisConfig bad = cfg;
  bad.eps = 0.4;
  CHECK_THROWS_AS(darc::damping_factor(half_z(), half, bad), darc::DomainError);
}

TEST_CASE("contractive embedding") {
  SynthesisConfig cfg;
  CircleArc half = CircleArc::make(0.0, kPi);
  darc::ContractiveMatrix out = darc::synthesize_contractive(half_z(), half, cfg);

  // v22 is s itself
  CHECK(out.V.a22.rational_part().approx_equal(half_z(), 1e-14));

  // unitary on the arc
  double rho = 1.0 - 1e-5;
  for (int k = 1; k < 8; ++k) {
    Complex z = std::polar(rho, kPi * k / 8.0);
    Eigen::Matrix2cd m = out.V.eval(z);
    CHECK((m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-3);
  }

  // on the complement: w22 = (1 - eps^2)(1 - |s|^2) = 45/64, and I - V*V PSD
  double rho2 = 1.0 - 1e-7;
  for (int k = 1; k < 8; ++k) {
    Complex z = std::polar(rho2, kPi + kPi * k / 8.0);
    Eigen::Matrix2cd m = out.V.eval(z);
    Eigen::Matrix2cd w = Eigen::Matrix2cd::Identity() - m.adjoint() * m;
    CHECK(std::abs(w(1, 1) - C(45.0 / 64.0)) < 1e-3);
    double tr = w.trace().real();
    double det = w.determinant().real();
    double lambda_min = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
    CHECK(lambda_min > -1e-3);
  }

  // full circle: V coincides with S
  darc::ContractiveMatrix vf =
      darc::synthesize_contractive(half_z(), CircleArc::full_circle(), cfg);
  Complex z(0.4, -0.3);
  CHECK((vf.V.eval(z) - vf.base.S.eval(z)).cwiseAbs().maxCoeff() < 1e-14);

  SynthesisConfig bad = cfg;
  bad.eps = 1.0 / 3.0;
  CHECK_THROWS_AS(darc::synthesize_contractive(half_z(), half, bad), darc::DomainError);
}
