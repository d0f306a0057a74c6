#include <darc/element.hpp>

#include <cmath>

#include <darc/errors.hpp>

namespace darc {

Complex ExpFactor::exponent_at(Complex z) const {
  if (quad) return quad->exponent(z);
  return schwarz_exponent(weight, arc, z, cfg);
}

AnalyticElement& AnalyticElement::multiply_rational(const Rational& r) {
  rational_ = rational_ * r;
  return *this;
}

AnalyticElement& AnalyticElement::multiply_exp(const LogWeight& w, const CircleArc& arc,
                                               double sign, const QuadratureConfig& cfg) {
  if (rational_.is_zero()) return *this;
  if (w.is_constant()) {
    if (std::abs(w.constant_level() - 1.0) < 1e-14) return *this;
    if (arc.is_full()) {
      // entire constant factor: value level^{sign/2} everywhere
      rational_ = rational_ * Complex(std::pow(w.constant_level(), 0.5 * sign));
      return *this;
    }
    factors_.push_back({w, arc, sign, cfg, nullptr});
    return *this;
  }
  auto quad = std::make_shared<const SchwarzIntegrator>(w, arc, cfg);
  factors_.push_back({w, arc, sign, cfg, std::move(quad)});
  return *this;
}

AnalyticElement& AnalyticElement::multiply_exp_shared(
    std::shared_ptr<const SchwarzIntegrator> quad, double sign) {
  if (rational_.is_zero()) return *this;
  factors_.push_back({quad->weight(), quad->arc(), sign, quad->config(), std::move(quad)});
  return *this;
}

AnalyticElement& AnalyticElement::multiply_element(const AnalyticElement& other) {
  rational_ = rational_ * other.rational_;
  if (rational_.is_zero()) {
    factors_.clear();
    return *this;
  }
  factors_.insert(factors_.end(), other.factors_.begin(), other.factors_.end());
  return *this;
}

Complex AnalyticElement::eval(Complex z) const {
  Complex v = rational_.eval(z);
  if (factors_.empty() || v == Complex(0.0)) return v;
  Complex e(0.0);
  for (const ExpFactor& f : factors_) e += f.sign * f.exponent_at(z);
  return v * std::exp(e);
}

Eigen::Matrix2cd Matrix2Fn::eval(Complex z) const {
  Eigen::Matrix2cd m;
  m(0, 0) = a11.eval(z);
  m(0, 1) = a12.eval(z);
  m(1, 0) = a21.eval(z);
  m(1, 1) = a22.eval(z);
  return m;
}

const AnalyticElement& Matrix2Fn::entry(int i, int j) const {
  if (i == 0 && j == 0) return a11;
  if (i == 0 && j == 1) return a12;
  if (i == 1 && j == 0) return a21;
  if (i == 1 && j == 1) return a22;
  throw DomainError("matrix entry index out of range");
}

}  // namespace darc
