#pragma once

#include <utility>

#include <darc/arc.hpp>
#include <darc/element.hpp>
#include <darc/quadrature.hpp>
#include <darc/rational.hpp>
#include <darc/schur.hpp>
#include <darc/types.hpp>

namespace darc {

struct SynthesisConfig {
  double eps = 0.25;  // damping level, strictly between 0 and 1/3
  QuadratureConfig quad;
  double cert_tol = kDefaultCertTol;
};

// Rational functions continue across the circle as themselves: the returned
// function, read on the exterior disk, is the continuation witness.
Rational pseudocontinuation(const Rational& s);

/**
 * The pair (g, h) driving the embedding: g is the para-conjugate of s (equal
 * to conj(s) on the circle) and h = 1 - g*s (equal to 1 - |s|^2 there).
 */
std::pair<Rational, Rational> reflected_pair(const Rational& s);

/**
 * The multiplier p: the product of the denominator inner parts of the
 * Schur-quotient splits of g and h, times their denominator outer parts
 * localized to the complement arc. |p| = 1 a.e. on the arc. g identically
 * zero contributes empty factors; h identically zero means s has unimodular
 * boundary values (WrongBranchError: use diagonal_embedding).
 */
AnalyticElement unimodular_multiplier(const Rational& g, const Rational& h,
                                      const CircleArc& arc, const SynthesisConfig& cfg = {});

struct FirstColumn {
  AnalyticElement s11;    // -p*g in expanded Smirnov form
  AnalyticElement s21;    // p*h/sigma in expanded Smirnov form
  AnalyticElement sigma;  // the arc-localized outer factor of 1 - |s|^2
  AnalyticElement p;
};

// Assembles the first column and the sigma entry, sharing one quadrature
// cache between sigma and its reciprocal inside s21.
FirstColumn first_column(const Rational& s, const Rational& g, const Rational& h,
                         const CircleArc& arc, const SynthesisConfig& cfg = {});

struct SynthesizedMatrix {
  Matrix2Fn S;  // [[s11, sigma], [s21, s]]
  Rational s;
  CircleArc arc = CircleArc::full_circle();
  Rational g, h;
  AnalyticElement p;
};

/**
 * The unitary-on-the-arc embedding of a Schur function s as the lower-right
 * entry of a 2x2 matrix whose boundary values on the arc are unitary and
 * whose entries are all contractive in the disk. Throws WrongBranchError for
 * finite Blaschke inputs (use diagonal_embedding) and
 * HypothesisViolatedError when s fails Schur certification.
 */
SynthesizedMatrix synthesize_unitary(const Rational& s, const CircleArc& arc,
                                     const SynthesisConfig& cfg = {});

// diag(inner_choice, s) for finite Blaschke s: unitary on the whole circle.
// Both arguments must certify as finite Blaschke products.
Matrix2Fn diagonal_embedding(const Rational& s, const Rational& inner_choice,
                             double cert_tol = kDefaultCertTol);

/**
 * The damping factor r: the two-level outer function with modulus 1 on the
 * arc and eps off it, times the complement-localized outer factor of
 * 1 - |s|^2. |r| = 1 a.e. on the arc; |r|^2 = eps^2 (1 - |s|^2) off it.
 * Reduces to 1 when the arc is the full circle.
 */
AnalyticElement damping_factor(const Rational& s, const CircleArc& arc,
                               const SynthesisConfig& cfg = {});

struct ContractiveMatrix {
  Matrix2Fn V;  // [[r^2 s11, r sigma], [r s21, s]]
  SynthesizedMatrix base;
  AnalyticElement r;
};

/**
 * The fully contractive embedding: V is unitary a.e. on the arc and
 * I - V*V is positive semidefinite a.e. on the whole circle, so every
 * entry and the matrix itself are Schur class. DomainError unless
 * 0 < eps < 1/3.
 */
ContractiveMatrix synthesize_contractive(const Rational& s, const CircleArc& arc,
                                         const SynthesisConfig& cfg = {});

}  // namespace darc
