#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <darc/quadrature.hpp>
#include <darc/rational.hpp>
#include <darc/serialize.hpp>
#include <darc/verify.hpp>

namespace darc {

struct SweepOptions {
  std::uint64_t seed = 42;
  int count = 50;
  int grid_samples = 128;
  double rho = 1.0 - 1e-6;          // radial proxy for boundary residuals
  double rho_profile = 1.0 - 1e-7;  // tighter approach for the damping profile checks
  double tol = 1e-3;
  double eps = 0.25;
  QuadratureConfig quad;
};

/**
 * One deterministic random case: a certified Schur function and an arc. About
 * one draw in twelve is a finite Blaschke product, which exercises the
 * diagonal embedding; the rest multiply a Blaschke part by a zero-free outer
 * part and scale the boundary sup strictly below 1.
 */
struct SweepDraw {
  Rational s;
  CircleArc arc = CircleArc::full_circle();
  bool blaschke = false;
};

// Pure function of (seed, index): the engine is seeded per case and doubles
// are built from raw engine words, so draws are identical across runs and
// platforms.
SweepDraw draw_case(std::uint64_t seed, int index);

struct SweepCase {
  int index = 0;
  SweepDraw draw;
  std::vector<ResidualCheck> checks;
  // min over the full circle of (1 - |s|^2) - |v12|^2; meaningful only when
  // the case built a damped matrix (has_defect_margin).
  double defect_margin = 0.0;
  bool has_defect_margin = false;
  bool pass = false;
};

struct SweepSummary {
  SweepOptions options;
  std::vector<SweepCase> cases;
  double worst_residual = 0.0;
  double min_defect_margin = std::numeric_limits<double>::infinity();
  bool verdict = false;
};

// Runs count cases; a case passes when every residual is within tol and the
// defect margin is above -tol. Exceptions from degenerate draws propagate.
SweepSummary run_sweep(const SweepOptions& opts);

// Deterministic dump: rerunning the same options yields byte-identical text.
Json sweep_to_json(const SweepSummary& summary);

}  // namespace darc
