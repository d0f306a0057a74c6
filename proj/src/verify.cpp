#include <darc/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include <darc/errors.hpp>
#include <darc/schur.hpp>
#include <darc/schwarz.hpp>

namespace darc {

namespace {

std::string with_angle(const char* msg, double theta) {
  return std::string(msg) + " at sample angle " + std::to_string(theta);
}

// Re-raises evaluation failures with the offending sample angle attached,
// preserving the error type.
template <class Fn>
auto guarded(double theta, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const KernelPoleError& e) {
    throw KernelPoleError(with_angle(e.what(), theta));
  } catch (const DivergenceError& e) {
    throw DivergenceError(with_angle(e.what(), theta));
  } catch (const NonIntegrableWeightError& e) {
    throw NonIntegrableWeightError(with_angle(e.what(), theta));
  } catch (const DomainError& e) {
    throw DomainError(with_angle(e.what(), theta));
  }
}

}  // namespace

double unitarity_residual(const Matrix2Fn& M, const BoundaryGrid& grid) {
  double worst = 0.0;
  for (double theta : grid.angles) {
    Eigen::Matrix2cd m =
        guarded(theta, [&] { return M.eval(std::polar(grid.rho, theta)); });
    double r = (m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    worst = std::max(worst, r);
  }
  return worst;
}

double entry_bound_residual(const Matrix2Fn& M, const BoundaryGrid& full_grid,
                            const std::vector<Complex>& interior_points) {
  // Boundary moduli bound the interior only when each entry is a quotient by
  // outer factors: rational poles must stay outside the closed disk, and the
  // exponential factors (outer by construction) must carry finite signs.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const AnalyticElement& e = M.entry(i, j);
      const Poly& den = e.rational_part().den();
      if (!e.is_zero() && den.degree() > 0) {
        for (Complex root : poly_roots(den)) {
          if (std::abs(root) <= 1.0 + 1e-9)
            throw CertificationImpossibleError(
                "entry " + e.label() +
                " has a pole in the closed unit disk; boundary moduli do not bound it");
        }
      }
      for (const ExpFactor& f : e.factors()) {
        if (!std::isfinite(f.sign))
          throw CertificationImpossibleError("entry " + e.label() +
                                             " has a malformed exponential factor");
      }
    }
  }
  double worst = 0.0;
  auto bump = [&](const Eigen::Matrix2cd& m) {
    worst = std::max(worst, std::max(0.0, m.cwiseAbs().maxCoeff() - 1.0));
  };
  for (double theta : full_grid.angles)
    bump(guarded(theta, [&] { return M.eval(std::polar(full_grid.rho, theta)); }));
  for (Complex w : interior_points) {
    if (std::abs(w) > 1.0 + 1e-12)
      throw DomainError("interior check point lies outside the closed unit disk");
    bump(M.eval(w));
  }
  return worst;
}

double psd_residual(const Matrix2Fn& V, const BoundaryGrid& grid, double eps,
                    const Rational& s) {
  if (!(eps > 0.0) || !(eps < 1.0 / 3.0))
    throw DomainError("damping level must lie strictly between 0 and 1/3");
  double worst = 0.0;
  for (double theta : grid.angles) {
    Complex z = std::polar(grid.rho, theta);
    Eigen::Matrix2cd m = guarded(theta, [&] { return V.eval(z); });
    Eigen::Matrix2cd w = Eigen::Matrix2cd::Identity() - m.adjoint() * m;
    double w11 = w(0, 0).real();
    double w22 = w(1, 1).real();
    Complex w12 = 0.5 * (w(0, 1) + std::conj(w(1, 0)));
    double tr = w11 + w22;
    double det = w11 * w22 - std::norm(w12);
    double lam_min = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
    // Wt keeps the off-diagonal of W and floors the diagonal at 7/9 and w22;
    // its determinant must dominate (2/9)(1 - |s|^2).
    double defect = 1.0 - std::norm(s.eval(z));
    double det_floor = (7.0 / 9.0) * w22 - std::norm(w12);
    double viol = std::max({-lam_min, 7.0 / 9.0 - w11, (2.0 / 9.0) * defect - det_floor});
    worst = std::max(worst, std::max(0.0, viol));
  }
  return worst;
}

double exterior_witness_agreement(const Matrix2Fn& S, const BoundaryGrid& grid) {
  if (!(grid.rho < 1.0))
    throw DomainError("witness comparison needs a radius strictly inside the circle");
  double worst = 0.0;
  for (double theta : grid.angles) {
    // The exterior witness zeta -> adjoint(inverse(S(1/conj(zeta)))) at
    // zeta = e^{i theta}/rho reflects back to the interior sample point.
    Complex z = std::polar(grid.rho, theta);
    Eigen::Matrix2cd inside = guarded(theta, [&] { return S.eval(z); });
    if (std::abs(inside.determinant()) < 1e-12)
      throw WitnessSingularError("determinant vanishes at the reflected witness point",
                                 theta);
    Eigen::Matrix2cd outside = inside.inverse().adjoint();
    worst = std::max(worst, (outside - inside).cwiseAbs().maxCoeff());
  }
  return worst;
}

double shared_modulus_ratio_residual(const Rational& s1, const Rational& s2,
                                     const CircleArc& arc, const BoundaryGrid& grid,
                                     const QuadratureConfig& cfg) {
  if (s1.is_zero())
    throw HypothesisViolatedError("ratio base function must not vanish identically");
  double dev = 0.0;
  for (double theta : grid.angles) {
    Complex t = unit_circle(theta);
    dev = std::max(dev, std::abs(std::abs(s1.eval(t)) - std::abs(s2.eval(t))));
  }
  if (dev > 1e-6)
    throw HypothesisViolatedError(
        "boundary moduli differ on the arc; the ratio witness is undefined");
  auto [inner1, outer1] = inner_outer(s1);
  auto [inner2, outer2] = inner_outer(s2);
  AnalyticElement a(inner2 / inner1, "modulus ratio");
  if (auto comp = arc_complement(arc)) {
    a.multiply_exp(LogWeight::abs_squared(outer2), *comp, +1.0, cfg);
    a.multiply_exp(LogWeight::abs_squared(outer1), *comp, -1.0, cfg);
  }
  double worst = 0.0;
  for (double theta : grid.angles) {
    Complex v = guarded(theta, [&] { return a.eval(std::polar(grid.rho, theta)); });
    worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  }
  return worst;
}

double contraction_defect_margin(const Matrix2Fn& V, const Rational& s,
                                 const BoundaryGrid& grid) {
  double worst = std::numeric_limits<double>::infinity();
  for (double theta : grid.angles) {
    Complex z = std::polar(grid.rho, theta);
    Complex v12 = guarded(theta, [&] { return V.entry(0, 1).eval(z); });
    worst = std::min(worst, (1.0 - std::norm(s.eval(z))) - std::norm(v12));
  }
  return worst;
}

Report make_report(const std::string& input, const std::string& config_echo,
                   std::vector<ResidualCheck> checks) {
  if (checks.empty()) throw DomainError("a report needs at least one residual check");
  std::stable_sort(checks.begin(), checks.end(),
                   [](const ResidualCheck& a, const ResidualCheck& b) {
                     return a.name < b.name;
                   });
  bool all = true;
  for (ResidualCheck& c : checks) {
    c.pass = std::isfinite(c.value) && c.value <= c.tolerance;
    all = all && c.pass;
  }
  Report r;
  r.input = input;
  r.config_echo = config_echo;
  r.scope = kReportScopeNote;
  r.checks = std::move(checks);
  r.verdict = all;
  return r;
}

}  // namespace darc
