#pragma once

#include <cmath>
#include <vector>

#include <darc/arc.hpp>
#include <darc/errors.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * Midpoint sample angles on a margin-trimmed arc, paired with the radius used
 * to realize boundary values by radial approach. Endpoint neighborhoods are
 * excluded (relative margin); a full circle is sampled without trimming.
 */
struct BoundaryGrid {
  CircleArc arc = CircleArc::full_circle();
  int n_samples = 0;
  double rho = 1.0;
  double endpoint_margin = 0.0;
  std::vector<double> angles;

  static BoundaryGrid make(const CircleArc& arc, int n_samples = 512,
                           double rho = 1.0 - 1e-5, double endpoint_margin = 1e-3);

  // Radial proxy for the boundary point at angles[k].
  Complex sample(int k) const { return std::polar(rho, angles[static_cast<size_t>(k)]); }
};

inline BoundaryGrid BoundaryGrid::make(const CircleArc& arc, int n_samples, double rho,
                                       double endpoint_margin) {
  if (n_samples < 16) throw DomainError("boundary grid needs at least 16 samples");
  if (!(rho > 0.0) || !(rho <= 1.0)) throw DomainError("grid radius must lie in (0, 1]");
  if (!(endpoint_margin >= 0.0) || !(endpoint_margin < 0.5))
    throw DomainError("endpoint margin must lie in [0, 1/2) of the arc length");
  BoundaryGrid g;
  g.arc = arc;
  g.n_samples = n_samples;
  g.rho = rho;
  g.endpoint_margin = endpoint_margin;
  double lo = arc.alpha();
  double len = arc.length();
  if (!arc.is_full()) {
    lo += endpoint_margin * len;
    len *= 1.0 - 2.0 * endpoint_margin;
  }
  g.angles.reserve(static_cast<size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k)
    g.angles.push_back(lo + len * (k + 0.5) / n_samples);
  return g;
}

}  // namespace darc
