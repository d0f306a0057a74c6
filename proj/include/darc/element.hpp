#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <darc/arc.hpp>
#include <darc/rational.hpp>
#include <darc/schwarz.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * One exponential factor exp(sign * E) with E the Schwarz integral of the
 * weight over the arc. Non-constant weights carry a shared panel-caching
 * integrator built once at assembly time; constant weights evaluate through
 * the closed-form kernel mean.
 */
struct ExpFactor {
  LogWeight weight;
  CircleArc arc;
  double sign;  // +1 or -1
  QuadratureConfig cfg;
  std::shared_ptr<const SchwarzIntegrator> quad;  // null for constant weights

  Complex exponent_at(Complex z) const;
};

/**
 * A disk-analytic function of the form rational_part * prod exp(sign_k E_k).
 * The exponents are summed before a single exp so paired factors cancel
 * exactly. An element with no factors reduces to its rational part.
 */
class AnalyticElement {
 public:
  AnalyticElement() : rational_(Poly{Complex(1.0)}) {}
  explicit AnalyticElement(Rational rational, std::string label = {})
      : rational_(std::move(rational)), label_(std::move(label)) {}

  static AnalyticElement zero() { return AnalyticElement(Rational(Poly{Complex(0.0)})); }

  AnalyticElement& multiply_rational(const Rational& r);
  // Appends exp(sign * E(weight, arc)). Unit-level constant weights are
  // dropped; constant weights on the full circle fold into the rational part
  // (those factors are entire constants).
  AnalyticElement& multiply_exp(const LogWeight& w, const CircleArc& arc, double sign,
                                const QuadratureConfig& cfg);
  // Same factor backed by an integrator shared with other elements.
  AnalyticElement& multiply_exp_shared(std::shared_ptr<const SchwarzIntegrator> quad,
                                       double sign);
  AnalyticElement& multiply_element(const AnalyticElement& other);

  Complex eval(Complex z) const;

  bool is_zero() const { return rational_.is_zero(); }
  const Rational& rational_part() const { return rational_; }
  const std::vector<ExpFactor>& factors() const { return factors_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

 private:
  Rational rational_;
  std::vector<ExpFactor> factors_;
  std::string label_;
};

// 2x2 matrix of analytic elements, evaluable entrywise.
struct Matrix2Fn {
  AnalyticElement a11, a12, a21, a22;

  Eigen::Matrix2cd eval(Complex z) const;
  const AnalyticElement& entry(int i, int j) const;
};

}  // namespace darc
