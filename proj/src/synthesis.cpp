#include <darc/synthesis.hpp>

#include <memory>
#include <optional>

#include <darc/errors.hpp>
#include <darc/schwarz.hpp>

namespace darc {

namespace {

// f = (inner1*outer1)/(inner2*outer2) with all four factors Schur and the
// quotient parts certified contractive
struct SchurParts {
  Rational inner1, outer1, inner2, outer2;
};

SchurParts split_schur_parts(const Rational& f, double cert_tol) {
  auto [f1, f2] = nevanlinna_split(f, cert_tol);
  auto [i1, o1] = inner_outer(f1);
  auto [i2, o2] = inner_outer(f2);
  return {i1, o1, i2, o2};
}

void require_defect_nonzero(const Rational& h) {
  if (h.is_zero())
    throw WrongBranchError(
        "1 - g*s vanishes identically: the input has unimodular boundary values, "
        "use the diagonal embedding");
}

}  // namespace

Rational pseudocontinuation(const Rational& s) { return s; }

std::pair<Rational, Rational> reflected_pair(const Rational& s) {
  Rational g = s.para_conjugate();
  Rational h = Rational(Poly{Complex(1.0)}) - g * s;
  return {g, h};
}

AnalyticElement unimodular_multiplier(const Rational& g, const Rational& h,
                                      const CircleArc& arc, const SynthesisConfig& cfg) {
  require_defect_nonzero(h);
  std::optional<CircleArc> comp = arc_complement(arc);
  AnalyticElement p;
  p.set_label("p");
  auto add_denominator_parts = [&](const Rational& f) {
    SchurParts parts = split_schur_parts(f, cfg.cert_tol);
    p.multiply_rational(parts.inner2);
    if (comp) p.multiply_exp(LogWeight::abs_squared(parts.outer2), *comp, +1.0, cfg.quad);
  };
  if (!g.is_zero()) add_denominator_parts(g);
  add_denominator_parts(h);
  return p;
}

FirstColumn first_column(const Rational& s, const Rational& g, const Rational& h,
                         const CircleArc& arc, const SynthesisConfig& cfg) {
  require_defect_nonzero(h);
  std::optional<CircleArc> comp = arc_complement(arc);
  SchurParts hp = split_schur_parts(h, cfg.cert_tol);
  std::optional<SchurParts> gp;
  if (!g.is_zero()) gp = split_schur_parts(g, cfg.cert_tol);

  FirstColumn out;
  out.p.set_label("p");
  if (gp) {
    out.p.multiply_rational(gp->inner2);
    if (comp) out.p.multiply_exp(LogWeight::abs_squared(gp->outer2), *comp, +1.0, cfg.quad);
  }
  out.p.multiply_rational(hp.inner2);
  if (comp) out.p.multiply_exp(LogWeight::abs_squared(hp.outer2), *comp, +1.0, cfg.quad);

  // s11 = -p*g expanded so every piece is analytic: inner parts rational,
  // outer parts as exponential factors, the arc-localized outer ratio as a
  // single weight
  if (gp) {
    out.s11.multiply_rational(gp->inner1 * hp.inner2 * Complex(-1.0));
    if (comp) {
      out.s11.multiply_exp(LogWeight::abs_squared(gp->outer1), *comp, +1.0, cfg.quad);
      out.s11.multiply_exp(LogWeight::abs_squared(hp.outer2), *comp, +1.0, cfg.quad);
    }
    out.s11.multiply_exp(LogWeight::abs_squared_ratio(gp->outer1, gp->outer2), arc, +1.0,
                         cfg.quad);
  } else {
    out.s11 = AnalyticElement::zero();
  }
  out.s11.set_label("s11");

  // s21 = p*h/sigma expanded the same way
  if (gp) {
    out.s21.multiply_rational(gp->inner2);
    if (comp) out.s21.multiply_exp(LogWeight::abs_squared(gp->outer2), *comp, +1.0, cfg.quad);
  }
  out.s21.multiply_rational(hp.inner1);
  if (comp) out.s21.multiply_exp(LogWeight::abs_squared(hp.outer1), *comp, +1.0, cfg.quad);
  out.s21.multiply_exp(LogWeight::abs_squared_ratio(hp.outer1, hp.outer2), arc, +1.0, cfg.quad);

  // sigma and 1/sigma share one quadrature cache
  LogWeight sig_w = LogWeight::one_minus_abs_squared(s);
  if (sig_w.is_constant()) {
    out.sigma.multiply_exp(sig_w, arc, +1.0, cfg.quad);
    out.s21.multiply_exp(sig_w, arc, -1.0, cfg.quad);
  } else {
    auto sig_quad = std::make_shared<const SchwarzIntegrator>(sig_w, arc, cfg.quad);
    out.sigma.multiply_exp_shared(sig_quad, +1.0);
    out.s21.multiply_exp_shared(std::move(sig_quad), -1.0);
  }
  out.sigma.set_label("s12");
  out.s21.set_label("s21");
  return out;
}

SynthesizedMatrix synthesize_unitary(const Rational& s, const CircleArc& arc,
                                     const SynthesisConfig& cfg) {
  SchurCertificate cert = certify_schur(s, cfg.cert_tol);
  if (!cert.is_schur)
    throw HypothesisViolatedError("embedding requires a certified Schur-class input");
  if (cert.is_finite_blaschke)
    throw WrongBranchError(
        "input has unimodular boundary values: use the diagonal embedding");
  auto [g, h] = reflected_pair(s);
  FirstColumn col = first_column(s, g, h, arc, cfg);

  SynthesizedMatrix out;
  out.s = s;
  out.arc = arc;
  out.g = g;
  out.h = h;
  out.p = col.p;
  out.S.a11 = col.s11;
  out.S.a12 = col.sigma;
  out.S.a21 = col.s21;
  out.S.a22 = AnalyticElement(s, "s22");
  return out;
}

Matrix2Fn diagonal_embedding(const Rational& s, const Rational& inner_choice,
                             double cert_tol) {
  if (!certify_schur(s, cert_tol).is_finite_blaschke)
    throw WrongBranchError("diagonal embedding needs unimodular boundary values");
  if (!certify_schur(inner_choice, cert_tol).is_finite_blaschke)
    throw WrongBranchError("the diagonal complement must be a finite Blaschke product");
  Matrix2Fn m;
  m.a11 = AnalyticElement(inner_choice, "s11");
  m.a12 = AnalyticElement::zero();
  m.a12.set_label("s12");
  m.a21 = AnalyticElement::zero();
  m.a21.set_label("s21");
  m.a22 = AnalyticElement(s, "s22");
  return m;
}

AnalyticElement damping_factor(const Rational& s, const CircleArc& arc,
                               const SynthesisConfig& cfg) {
  if (!(cfg.eps > 0.0) || !(cfg.eps < 1.0 / 3.0))
    throw DomainError("damping level must lie strictly between 0 and 1/3");
  AnalyticElement r;
  r.set_label("r");
  std::optional<CircleArc> comp = arc_complement(arc);
  if (!comp) return r;
  r.multiply_exp(LogWeight::constant(cfg.eps * cfg.eps), *comp, +1.0, cfg.quad);
  r.multiply_exp(LogWeight::one_minus_abs_squared(s), *comp, +1.0, cfg.quad);
  return r;
}

ContractiveMatrix synthesize_contractive(const Rational& s, const CircleArc& arc,
                                         const SynthesisConfig& cfg) {
  if (!(cfg.eps > 0.0) || !(cfg.eps < 1.0 / 3.0))
    throw DomainError("damping level must lie strictly between 0 and 1/3");
  ContractiveMatrix out;
  out.base = synthesize_unitary(s, arc, cfg);
  out.r = damping_factor(s, arc, cfg);
  out.V.a11 = out.base.S.a11;
  out.V.a11.multiply_element(out.r).multiply_element(out.r);
  out.V.a11.set_label("v11");
  out.V.a12 = out.base.S.a12;
  out.V.a12.multiply_element(out.r);
  out.V.a12.set_label("v12");
  out.V.a21 = out.base.S.a21;
  out.V.a21.multiply_element(out.r);
  out.V.a21.set_label("v21");
  out.V.a22 = out.base.S.a22;
  out.V.a22.set_label("v22");
  return out;
}

}  // namespace darc
