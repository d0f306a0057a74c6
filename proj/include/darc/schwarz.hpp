#pragma once

#include <array>
#include <optional>
#include <vector>

#include <darc/arc.hpp>
#include <darc/quadrature.hpp>
#include <darc/rational.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * Boundary weight profile w(theta) >= 0 accessed through log w. Profiles are
 * squared-modulus quantities (the constructions below take |.|^2), so the
 * exponent E = (1/2) Int_gamma (t+z)/(t-z) log w dm yields |exp E| -> sqrt(w)
 * on gamma radially.
 *
 * Rational-based profiles are compiled to a sum of log|poly(t)| terms whose
 * circle roots are deflated into separate log|t - r| terms, keeping relative
 * accuracy arbitrarily close to the log singularities.
 */
class LogWeight {
 public:
  enum class Kind { constant, abs_squared, abs_squared_ratio, one_minus_abs_squared };

  // w identically value (value > 0, else NonIntegrableWeightError).
  static LogWeight constant(double value);
  // w = |f|^2 on the circle.
  static LogWeight abs_squared(const Rational& f);
  // w = |f/g|^2 on the circle (a ratio of outer factors as one weight).
  static LogWeight abs_squared_ratio(const Rational& f, const Rational& g);
  // w = 1 - |s|^2 for Schur s; NonIntegrableWeightError when w vanishes a.e.
  static LogWeight one_minus_abs_squared(const Rational& s);

  Kind kind() const { return kind_; }
  // Set when w is a.e. a single positive constant (closed forms apply).
  bool is_constant() const { return level_.has_value(); }
  double constant_level() const { return *level_; }

  double log_at(double theta) const { return log_at(theta, nullptr); }
  // Same value; *conditioning (when non-null) receives the absolute noise
  // scale of the computed log w in units of machine epsilon. log w is a sum
  // of log|poly| terms that can cancel to something far smaller than the
  // terms themselves, so the reliable absolute error model is eps times this
  // scale, not eps times |log w|.
  double log_at(double theta, double* conditioning) const;
  // Angles (in [0, 2pi)) where log w is singular; quadrature grades toward
  // them.
  const std::vector<double>& singular_angles() const { return singular_; }

  // Originals, for serialization and reporting.
  const Rational& first() const { return f_; }
  const Rational& second() const { return g_; }
  double declared_value() const { return value_; }

 private:
  LogWeight() = default;
  struct PolyTerm {
    Poly p;
    double mult;
    double coeff_scale;  // sum of |coefficients|, bounds Horner noise on |t| = 1
  };
  struct RootTerm {
    Complex r;
    double mult;
  };
  void add_poly(const Poly& p, double mult);

  Kind kind_ = Kind::constant;
  double value_ = 1.0;
  Rational f_, g_;
  std::optional<double> level_;
  std::vector<PolyTerm> polys_;
  std::vector<RootTerm> roots_;
  std::vector<double> singular_;
};

/**
 * Closed-form kernel mean X(gamma, z) = Int_gamma (t+z)/(t-z) dm(t), computed
 * by a branch-walked argument increment; exact for all |z| <= 1 off the arc
 * closure, and identically 1 on the full circle (the outer function of a
 * constant weight is that constant). X(gamma, 0) = measure(gamma).
 */
Complex arc_kernel_mean(const CircleArc& arc, Complex z);

/**
 * Reusable adaptive evaluator of E(z) = (1/2) Int_gamma K(t,z) log w(t) dm(t).
 * Construction grades panels toward the weight's singular angles and caches
 * weight samples; each exponent() call reuses cached panels where the
 * Kronrod-Gauss gap of the full product already meets its budget and refines
 * freshly elsewhere. Always integrates, regardless of weight kind.
 */
class SchwarzIntegrator {
 public:
  SchwarzIntegrator(LogWeight w, CircleArc arc, QuadratureConfig cfg = {});

  Complex exponent(Complex z) const;
  // Int_gamma log w dm
  double weight_integral() const { return weight_integral_; }
  const CircleArc& arc() const { return arc_; }
  const LogWeight& weight() const { return w_; }
  const QuadratureConfig& config() const { return cfg_; }

 private:
  struct Panel {
    double a, b;
    std::array<double, 15> theta;
    std::array<double, 15> logw;
    std::array<double, 15> noise;  // conditioning of logw, in eps units
    std::array<Complex, 15> node;  // unit_circle(theta), cached for eval speed
  };
  LogWeight w_;
  CircleArc arc_;
  QuadratureConfig cfg_;
  std::vector<Panel> panels_;
  double weight_integral_ = 0.0;
};

// Admissibility of z for boundary work against this arc: inside the open
// disk, or on the circle but outside the arc closure and its margins.
// Throws DomainError (outside closed disk) or KernelPoleError.
void require_admissible_point(const CircleArc& arc, Complex z, const QuadratureConfig& cfg);

// E(z) as above; constant weights use the closed form 0.5*log(w)*X(gamma,z).
Complex schwarz_exponent(const LogWeight& w, const CircleArc& arc, Complex z,
                         const QuadratureConfig& cfg = {});

// Arc-localized outer factor of an outer rational O (weight |O|^2); on the
// full circle this reproduces O itself when O(0) > 0.
Complex localized_outer_eval(const Rational& outer, const CircleArc& arc, Complex z,
                             const QuadratureConfig& cfg = {});

// sigma_gamma(z) for Schur s (weight 1 - |s|^2); NonIntegrableWeightError for
// finite Blaschke products, HypothesisViolatedError for non-Schur input.
Complex sigma_arc_eval(const Rational& s, const CircleArc& arc, Complex z,
                       const QuadratureConfig& cfg = {});

// Two-level outer factor e: |e| = 1 a.e. on gamma, eps on the complement;
// e(0) = eps^{m(complement)}. DomainError unless 0 < eps < 1/3.
Complex two_level_outer_eval(const CircleArc& arc, double eps, Complex z,
                             const QuadratureConfig& cfg = {});

// Int_gamma log(1 - |s|^2) dm; -infinity for finite Blaschke products.
double log_integral(const Rational& s, const CircleArc& arc, const QuadratureConfig& cfg = {});

}  // namespace darc
