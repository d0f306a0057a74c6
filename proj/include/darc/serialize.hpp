#pragma once

#include <string>

#include <json.hpp>

#include <darc/arc.hpp>
#include <darc/element.hpp>
#include <darc/poly.hpp>
#include <darc/quadrature.hpp>
#include <darc/rational.hpp>
#include <darc/schwarz.hpp>
#include <darc/verify.hpp>

namespace darc {

// Insertion-ordered so that dumping the same data twice is byte-identical.
using Json = nlohmann::ordered_json;

// Coefficients in ascending degree order, each as [re, im].
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"alpha": a, "beta": b}; a span of exactly 2*pi reloads as the full circle.
Json arc_to_json(const CircleArc& arc);
CircleArc arc_from_json(const Json& j);

Json quadrature_to_json(const QuadratureConfig& cfg);
// Missing keys keep their defaults, so partial override objects are accepted.
QuadratureConfig quadrature_from_json(const Json& j);

// Tagged by "kind"; the payload is the defining data, not the compiled terms.
Json weight_to_json(const LogWeight& w);
LogWeight weight_from_json(const Json& j);

Json element_to_json(const AnalyticElement& e);
// Factors are rebuilt through multiply_exp, so reloading re-runs the same
// deterministic panel preparation the original construction used.
AnalyticElement element_from_json(const Json& j, const QuadratureConfig& cfg);

Json matrix_to_json(const Matrix2Fn& m, const QuadratureConfig& cfg);
Matrix2Fn matrix_from_json(const Json& j);

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

/**
 * A synthesis problem as read from user input: the Schur candidate, the arc,
 * the damping level, and numerical knobs. Parsing validates shapes and rejects
 * functions with poles in the closed unit disk (NotAnalyticError carrying the
 * offending root); Schur certification itself happens at synthesis time.
 */
struct ProblemSpec {
  Rational s;
  CircleArc arc = CircleArc::full_circle();
  double eps = 0.25;
  QuadratureConfig quad;
  int grid_samples = 512;
  double residual_tol = kDefaultResidualTol;
};

ProblemSpec problem_from_json(const Json& j);
Json problem_to_json(const ProblemSpec& p);

}  // namespace darc
