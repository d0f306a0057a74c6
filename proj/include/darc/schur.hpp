#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <darc/rational.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * Certified boundary-modulus facts about a rational function analytic in the
 * closed unit disk.
 *
 * is_schur implies sup_bound <= 1 + cert_tol. is_finite_blaschke means the
 * boundary modulus is 1 within cert_tol at every sample of the refined grid;
 * for rational functions this is equivalent to log(1 - |f|^2) failing to be
 * integrable on the full circle, so log_integrable_full_circle is its
 * negation.
 */
struct SchurCertificate {
  double sup_bound = 0.0;
  bool is_schur = false;
  bool is_finite_blaschke = false;
  bool log_integrable_full_circle = false;
};

inline constexpr double kDefaultCertTol = 1e-9;

// Max boundary modulus over a 4096-point grid, with golden-section refinement
// of the global extrema and of every local maximum above 1 - 10*cert_tol.
double sup_circle_modulus(const Rational& f, double cert_tol = kDefaultCertTol);

// Throws NotAnalyticError when f has a pole in the closed unit disk.
SchurCertificate certify_schur(const Rational& f, double cert_tol = kDefaultCertTol);

/**
 * Factor f = inner * outer: inner is a unimodular constant times the finite
 * Blaschke product over the zeros of f in the open disk (zeros at the origin
 * appearing as a power of z), outer is zero-free in the open disk with
 * outer(0) real and positive. Zeros on the unit circle go to the outer
 * factor. Requires f analytic in the closed disk; throws ZeroFunctionError
 * for f identically zero.
 */
std::pair<Rational, Rational> inner_outer(const Rational& f);

/**
 * Write g = g1/g2 with both factors Schur: g2 is the product of one factor
 * per pole of g (a power of z for poles at the origin, a Blaschke factor per
 * pole in the open disk, a sup-normalized linear factor per pole on or
 * outside the circle), and g1 = g*g2 with a final common rescale when its
 * boundary sup exceeds 1. Throws ZeroFunctionError for g identically zero.
 */
std::pair<Rational, Rational> nevanlinna_split(const Rational& g,
                                               double cert_tol = kDefaultCertTol);

// Polynomials (A, B) with |f(t)|^2 = A(t)/B(t) for |t| = 1, where
// A = num*revconj(num)*z^deg(den) and B = den*revconj(den)*z^deg(num).
std::pair<Poly, Poly> boundary_squared_modulus_polys(const Rational& f);

// The constant c with |f|^2 = c everywhere on the unit circle, when the
// coefficient identity A = c*B holds for the pair above; empty otherwise.
std::optional<double> constant_squared_modulus(const Rational& f);

// Sorted distinct angles where |f| = 1 on the unit circle, read off the
// circle roots of the coefficient identity above; these are the log
// singularities of the weight 1 - |f|^2. Empty for unimodular f.
std::vector<double> unit_modulus_angles(const Rational& f);

}  // namespace darc
