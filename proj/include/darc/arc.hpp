#pragma once

#include <optional>

#include <darc/types.hpp>

namespace darc {

/**
 * Open arc {e^{i theta} : theta in (alpha, beta)} of the unit circle with its
 * normalized Lebesgue measure. alpha < beta <= alpha + 2*pi; the full circle
 * is the arc with measure exactly 1. The measure of a complement is stored as
 * 1 - measure so the two add to 1 exactly in floating point.
 */
class CircleArc {
 public:
  static CircleArc make(double alpha, double beta);
  static CircleArc full_circle();

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double measure() const { return measure_; }
  double length() const { return beta_ - alpha_; }
  bool is_full() const { return measure_ >= 1.0; }

  // Open-arc membership of the angle, modulo 2*pi.
  bool contains_angle(double theta) const;

  friend std::optional<CircleArc> arc_complement(const CircleArc& arc);

 private:
  CircleArc(double alpha, double beta, double measure)
      : alpha_(alpha), beta_(beta), measure_(measure) {}
  double alpha_;
  double beta_;
  double measure_;
};

// Complement arc on the circle; empty for the full circle (callers treat
// factors localized to the empty set as the constant 1).
std::optional<CircleArc> arc_complement(const CircleArc& arc);

}  // namespace darc
