#include <darc/arc.hpp>

#include <cmath>

#include <darc/errors.hpp>

namespace darc {

CircleArc CircleArc::make(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("arc endpoints must be finite");
  if (!(beta > alpha)) throw DomainError("arc requires beta > alpha");
  if (beta - alpha > kTwoPi * (1.0 + 1e-12)) throw DomainError("arc length exceeds the circle");
  double measure = (beta - alpha) / kTwoPi;
  if (measure >= 1.0 - 1e-15) return CircleArc(alpha, alpha + kTwoPi, 1.0);
  return CircleArc(alpha, beta, measure);
}

CircleArc CircleArc::full_circle() { return CircleArc(0.0, kTwoPi, 1.0); }

bool CircleArc::contains_angle(double theta) const {
  if (is_full()) return true;
  double shifted = std::fmod(theta - alpha_, kTwoPi);
  if (shifted < 0.0) shifted += kTwoPi;
  double t = alpha_ + shifted;
  return t > alpha_ && t < beta_;
}

std::optional<CircleArc> arc_complement(const CircleArc& arc) {
  if (arc.is_full()) return std::nullopt;
  return CircleArc(arc.beta_, arc.alpha_ + kTwoPi, 1.0 - arc.measure_);
}

}  // namespace darc
