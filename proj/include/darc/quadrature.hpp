#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <darc/errors.hpp>
#include <darc/types.hpp>

namespace darc {

/**
 * Tolerances and evaluation conventions shared by the boundary machinery.
 * endpoint_margin is relative to arc length; rho is the radius used to
 * realize boundary values by radial approach.
 */
struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  int max_subdivisions = 4000;
  double endpoint_margin = 1e-3;
  double rho = 1.0 - 1e-5;
};

// 15-point Kronrod extension of 7-point Gauss (nodes on [0,1] side, weights
// for [-1,1]); odd indices of xgk are the embedded Gauss nodes.
struct GaussKronrod15 {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
      0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
      0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
  static constexpr std::array<double, 4> wg = {0.129484966168870, 0.279705391489277,
                                               0.381830050505119, 0.417959183673469};
};

struct PanelResult {
  Complex kronrod;
  Complex gauss;
  double resabs;  // Kronrod sum of |f|, the rounding scale of the panel value
  bool finite;
};

template <class F>
PanelResult gk15_panel(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  PanelResult r{Complex(0.0), Complex(0.0), 0.0, true};
  for (int j = 0; j < 8; ++j) {
    Complex sum;
    double abs_sum;
    if (j == 7) {
      sum = f(c);
      abs_sum = std::abs(sum);
    } else {
      Complex f1 = f(c - h * GaussKronrod15::xgk[j]);
      Complex f2 = f(c + h * GaussKronrod15::xgk[j]);
      sum = f1 + f2;
      abs_sum = std::abs(f1) + std::abs(f2);
    }
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag())) {
      r.finite = false;
      return r;
    }
    r.kronrod += GaussKronrod15::wgk[j] * sum;
    r.resabs += GaussKronrod15::wgk[j] * abs_sum;
    if (j % 2 == 1) r.gauss += GaussKronrod15::wg[j / 2] * sum;
  }
  r.kronrod *= h;
  r.gauss *= h;
  r.resabs *= h;
  return r;
}

struct AdaptiveResult {
  Complex value;
  double error;
};

inline constexpr double kPanelWidthFloor = 1e-11;

// Kronrod-Gauss gaps at the rounding level of the panel arithmetic cannot be
// improved by splitting. The scale is the Kronrod sum of absolute sample
// magnitudes (optionally amplified by sample conditioning), not the panel
// value itself, which may be far smaller under cancellation.
inline double quadrature_noise_floor(double abs_scale) {
  return 50.0 * std::numeric_limits<double>::epsilon() * abs_scale;
}

/**
 * Adaptive Gauss-Kronrod integration of a complex-valued function on [a, b].
 * Panels split until the local Kronrod-Gauss gap fits the width-proportional
 * share of abs_budget or the width floor is reached. Non-finite samples force
 * a split; a non-finite panel at the width floor means the integrand is not
 * integrable there (DivergenceError). panel_budget counts total panel
 * evaluations across calls sharing the counter (DivergenceError on exhaustion).
 */
template <class F>
AdaptiveResult integrate_adaptive(const F& f, double a, double b, double abs_budget,
                                  int& panel_budget) {
  struct Item {
    double a, b, budget;
  };
  std::vector<Item> stack{{a, b, abs_budget}};
  AdaptiveResult out{Complex(0.0), 0.0};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (--panel_budget < 0)
      throw DivergenceError("quadrature exceeded its subdivision budget");
    PanelResult pr = gk15_panel(f, it.a, it.b);
    const double width = it.b - it.a;
    if (!pr.finite) {
      if (width < kPanelWidthFloor)
        throw DivergenceError("integrand is not integrable: non-finite values persist at the width floor");
      double mid = 0.5 * (it.a + it.b);
      stack.push_back({it.a, mid, 0.5 * it.budget});
      stack.push_back({mid, it.b, 0.5 * it.budget});
      continue;
    }
    double err = std::abs(pr.kronrod - pr.gauss);
    if (err <= std::max(it.budget, quadrature_noise_floor(pr.resabs)) ||
        width < kPanelWidthFloor) {
      out.value += pr.kronrod;
      out.error += err;
    } else {
      double mid = 0.5 * (it.a + it.b);
      stack.push_back({it.a, mid, 0.5 * it.budget});
      stack.push_back({mid, it.b, 0.5 * it.budget});
    }
  }
  return out;
}

}  // namespace darc
