#include <darc/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include <darc/errors.hpp>
#include <darc/grid.hpp>
#include <darc/schur.hpp>
#include <darc/synthesis.hpp>

namespace darc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draws built from raw engine words; the standard distribution
// classes are not pinned across library implementations.
class Uniform {
 public:
  explicit Uniform(std::uint64_t key) : eng_(key) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double range(double a, double b) { return a + (b - a) * unit(); }
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 eng_;
};

std::vector<Complex> interior_probes() {
  return {Complex(0.0), Complex(0.3, 0.2), Complex(0.0, -0.5), Complex(-0.55, 0.1)};
}

}  // namespace

SweepDraw draw_case(std::uint64_t seed, int index) {
  if (index < 0) throw DomainError("a sweep case index must be nonnegative");
  Uniform rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1))));
  SweepDraw d;
  double length = kPi * rng.range(0.1, 1.9);
  double lo = rng.range(0.0, kTwoPi);
  d.arc = CircleArc::make(lo, lo + length);
  d.blaschke = rng.unit() < 0.08;
  int blaschke_degree = d.blaschke ? 1 + rng.below(4) : rng.below(5);
  Rational s = Rational::constant(Complex(1.0));
  for (int k = 0; k < blaschke_degree; ++k) {
    Complex a = std::polar(rng.range(0.05, 0.8), rng.range(0.0, kTwoPi));
    s = s * Rational(Poly{-a, Complex(1.0)}, Poly{Complex(1.0), -std::conj(a)});
  }
  if (d.blaschke) {
    d.s = s;
    return d;
  }
  std::vector<Complex> zeros(static_cast<std::size_t>(rng.below(4)));
  for (Complex& z : zeros) z = std::polar(rng.range(1.15, 3.0), rng.range(0.0, kTwoPi));
  std::vector<Complex> poles(static_cast<std::size_t>(rng.below(3)));
  for (Complex& z : poles) z = std::polar(rng.range(1.3, 2.5), rng.range(0.0, kTwoPi));
  Rational outer(Poly::from_roots(zeros), Poly::from_roots(poles));
  // sup normalization keeps the boundary modulus at most lambda < 0.95, so
  // the draw certifies as Schur with room to spare
  double lambda = rng.range(0.3, 0.95);
  d.s = s * outer * Complex(lambda / sup_circle_modulus(outer));
  return d;
}

namespace {

SweepCase run_case(SweepDraw draw, int index, const SweepOptions& o) {
  SweepCase c;
  c.index = index;
  BoundaryGrid arc_grid = BoundaryGrid::make(draw.arc, o.grid_samples, o.rho);
  BoundaryGrid full_grid = BoundaryGrid::make(CircleArc::full_circle(), o.grid_samples, o.rho);
  auto push = [&](const char* name, double value) {
    c.checks.push_back({name, value, o.tol, std::isfinite(value) && value <= o.tol});
  };
  if (draw.blaschke) {
    Matrix2Fn S = diagonal_embedding(draw.s, Rational(Poly::monomial(1)));
    push("unitary_on_arc", unitarity_residual(S, arc_grid));
    push("entry_contraction", entry_bound_residual(S, full_grid, interior_probes()));
    push("exterior_witness", exterior_witness_agreement(S, arc_grid));
  } else {
    SynthesisConfig cfg;
    cfg.eps = o.eps;
    cfg.quad = o.quad;
    ContractiveMatrix cm = synthesize_contractive(draw.s, draw.arc, cfg);
    push("unitary_on_arc", unitarity_residual(cm.base.S, arc_grid));
    push("entry_contraction", entry_bound_residual(cm.base.S, full_grid, interior_probes()));
    push("exterior_witness", exterior_witness_agreement(cm.base.S, arc_grid));
    push("damped_unitary_on_arc", unitarity_residual(cm.V, arc_grid));
    CircleArc complement = *arc_complement(draw.arc);
    push("damped_positivity_profile",
         psd_residual(cm.V, BoundaryGrid::make(complement, o.grid_samples, o.rho_profile), o.eps,
                      draw.s));
    c.defect_margin = contraction_defect_margin(cm.V, draw.s, full_grid);
    c.has_defect_margin = true;
  }
  c.pass = std::all_of(c.checks.begin(), c.checks.end(),
                       [](const ResidualCheck& ch) { return ch.pass; }) &&
           (!c.has_defect_margin ||
            (std::isfinite(c.defect_margin) && c.defect_margin >= -o.tol));
  c.draw = std::move(draw);
  return c;
}

}  // namespace

SweepSummary run_sweep(const SweepOptions& opts) {
  if (opts.count < 1) throw DomainError("a sweep needs at least one case");
  if (!(opts.tol > 0.0)) throw DomainError("the sweep tolerance must be positive");
  SweepSummary summary;
  summary.options = opts;
  summary.cases.reserve(static_cast<std::size_t>(opts.count));
  bool all = true;
  for (int i = 0; i < opts.count; ++i) {
    SweepCase c = run_case(draw_case(opts.seed, i), i, opts);
    for (const ResidualCheck& ch : c.checks)
      summary.worst_residual = std::max(summary.worst_residual, ch.value);
    if (c.has_defect_margin)
      summary.min_defect_margin = std::min(summary.min_defect_margin, c.defect_margin);
    all = all && c.pass;
    summary.cases.push_back(std::move(c));
  }
  summary.verdict = all;
  return summary;
}

Json sweep_to_json(const SweepSummary& summary) {
  Json j = Json::object();
  Json opts = Json::object();
  opts["seed"] = summary.options.seed;
  opts["count"] = summary.options.count;
  opts["grid_samples"] = summary.options.grid_samples;
  opts["rho"] = summary.options.rho;
  opts["rho_profile"] = summary.options.rho_profile;
  opts["tol"] = summary.options.tol;
  opts["eps"] = summary.options.eps;
  opts["quadrature"] = quadrature_to_json(summary.options.quad);
  j["options"] = std::move(opts);
  Json agg = Json::object();
  agg["worst_residual"] = summary.worst_residual;
  if (std::isfinite(summary.min_defect_margin))
    agg["min_defect_margin"] = summary.min_defect_margin;
  agg["verdict"] = summary.verdict;
  j["aggregate"] = std::move(agg);
  Json cases = Json::array();
  for (const SweepCase& c : summary.cases) {
    Json cj = Json::object();
    cj["index"] = c.index;
    cj["blaschke"] = c.draw.blaschke;
    cj["arc"] = arc_to_json(c.draw.arc);
    cj["s"] = rational_to_json(c.draw.s);
    Json checks = Json::array();
    for (const ResidualCheck& ch : c.checks) {
      Json chj = Json::object();
      chj["name"] = ch.name;
      chj["value"] = ch.value;
      chj["tolerance"] = ch.tolerance;
      chj["pass"] = ch.pass;
      checks.push_back(std::move(chj));
    }
    cj["checks"] = std::move(checks);
    if (c.has_defect_margin) cj["defect_margin"] = c.defect_margin;
    cj["pass"] = c.pass;
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

}  // namespace darc
