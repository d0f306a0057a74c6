#pragma once

#include <string>
#include <vector>

#include <darc/element.hpp>
#include <darc/grid.hpp>
#include <darc/quadrature.hpp>
#include <darc/rational.hpp>

namespace darc {

inline constexpr double kDefaultResidualTol = 1e-3;
inline constexpr double kClosedFormResidualTol = 1e-6;

// Every report carries this disclosure: boundary claims are certified at
// radial samples on margin-trimmed grids, never at arc endpoints.
inline constexpr const char* kReportScopeNote =
    "residuals certified at radial samples on margin-trimmed arcs; endpoints excluded";

/** Max over grid samples of the max-norm of M*(z)M(z) - I at radial proxies. */
double unitarity_residual(const Matrix2Fn& M, const BoundaryGrid& grid);

/**
 * Max over all four entries of (|entry| - 1), clamped below at 0, over the
 * grid samples and the extra interior points. Valid only for entries whose
 * boundary moduli control the interior (quotients by outer functions with
 * pole-free rational parts); a structural violation raises
 * CertificationImpossibleError before any evaluation.
 */
double entry_bound_residual(const Matrix2Fn& M, const BoundaryGrid& full_grid,
                            const std::vector<Complex>& interior_points);

/**
 * Largest violation, clamped at 0, among: negative part of the smallest
 * eigenvalue of W = I - V*V (closed form via trace and determinant); the
 * diagonal floor 7/9 - w11; and (2/9)(1 - |s|^2) - det Wt, where Wt replaces
 * the diagonal of W by its proven floors 7/9 and w22. Grid samples lie on the
 * complementary arc.
 */
double psd_residual(const Matrix2Fn& V, const BoundaryGrid& grid, double eps,
                    const Rational& s);

/**
 * Entry-wise agreement between S approached from inside the circle and the
 * exterior function zeta -> adjoint(inverse(S(1/conj(zeta)))) approached from
 * outside, at matched grid angles. Small values certify that every entry
 * continues across the arc; no smallness is promised off the arc.
 */
double exterior_witness_agreement(const Matrix2Fn& S, const BoundaryGrid& grid);

/**
 * For two functions with equal moduli on the arc, builds the ratio a = s2/s1
 * from inner factors and complementary-arc localized outer factors, and
 * returns the max over grid samples of ||a| - 1|. Unequal boundary moduli
 * (beyond 1e-6) raise HypothesisViolatedError.
 */
double shared_modulus_ratio_residual(const Rational& s1, const Rational& s2,
                                     const CircleArc& arc, const BoundaryGrid& grid,
                                     const QuadratureConfig& cfg = {});

/**
 * Min over grid samples of (1 - |s|^2) - |v12|^2. Any matrix extending s with
 * contractive rows keeps this nonnegative up to radial-approach error, so a
 * clearly negative margin refutes contractivity.
 */
double contraction_defect_margin(const Matrix2Fn& V, const Rational& s,
                                 const BoundaryGrid& grid);

struct ResidualCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string input;
  std::string config_echo;
  std::string scope;
  std::vector<ResidualCheck> checks;  // sorted by name
  bool verdict = false;
};

/**
 * Assembles a report: checks sorted lexicographically by name, pass flags
 * recomputed as value <= tolerance (non-finite fails), verdict true iff all
 * pass. An empty check set raises DomainError.
 */
Report make_report(const std::string& input, const std::string& config_echo,
                   std::vector<ResidualCheck> checks);

}  // namespace darc
