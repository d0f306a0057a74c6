// Command line front end. `synth` embeds one Schur function from a problem
// description and verifies the result; `sweep` runs the randomized
// certification sweep. Exit codes partition outcomes: 0 pass, 1 verification
// fail, 2 usage, 3 data.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <darc/arc.hpp>
#include <darc/element.hpp>
#include <darc/errors.hpp>
#include <darc/grid.hpp>
#include <darc/schur.hpp>
#include <darc/serialize.hpp>
#include <darc/sweep.hpp>
#include <darc/synthesis.hpp>
#include <darc/types.hpp>
#include <darc/verify.hpp>

namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

// Radial proxy for the damping profile checks on the complementary arc.
constexpr double kProfileRho = 1.0 - 1e-7;
// A reloaded matrix descriptor must reproduce residuals to this bound.
constexpr double kReverifyTol = 1e-9;

struct SynthFlags {
  std::string input_path;
  std::string output_dir = ".";
  std::string arc_override;
  int theorem = 2;
  double rho = 1.0 - 1e-6;
  bool rho_set = false;
  double endpoint_margin = 1e-3;
  double cert_tol = darc::kDefaultCertTol;
  bool samples_csv = false;
  bool residuals_csv = false;
  bool reverify = false;
  std::optional<double> epsilon;
  std::optional<double> tol_quad;
  std::optional<double> tol_residual;
  std::optional<int> grid;
};

struct SweepFlags {
  std::uint64_t seed = 42;
  int count = 50;
  int grid = 128;
  double rho = 1.0 - 1e-6;
  double epsilon = 0.25;
  double tol_residual = 1e-3;
  std::optional<double> tol_quad;
  std::string output_dir = ".";
};

darc::Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError("cannot open input file: " + path);
  try {
    return darc::Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), kExitUsage);
  }
}

darc::CircleArc parse_arc_flag(const std::string& text) {
  if (text == "full") return darc::CircleArc::full_circle();
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw darc::DomainError("--arc expects \"alpha,beta\" in radians or \"full\"");
  try {
    double alpha = std::stod(text.substr(0, comma));
    double beta = std::stod(text.substr(comma + 1));
    return darc::CircleArc::make(alpha, beta);
  } catch (const std::invalid_argument&) {
    throw darc::DomainError("--arc expects numeric endpoints, got \"" + text + "\"");
  } catch (const std::out_of_range&) {
    throw darc::DomainError("--arc endpoints out of range in \"" + text + "\"");
  }
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw darc::DomainError("cannot write " + path.string());
  out << body;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Interior sample points for the entry contraction check, matching the sweep.
std::vector<darc::Complex> interior_probes() {
  return {darc::Complex(0.0, 0.0), darc::Complex(0.3, 0.2), darc::Complex(0.0, -0.5),
          darc::Complex(-0.55, 0.1)};
}

/*
 * Residual checks computable from a matrix alone (the Schur function is read
 * off the lower-right corner). Used both for the fresh synthesis and for the
 * reverification of a reloaded descriptor, so the two runs share one
 * definition. `damped` selects the contractive-matrix checks; `profile_grid`
 * is absent when the arc is the whole circle.
 */
std::vector<darc::ResidualCheck> matrix_checks(const darc::Matrix2Fn& M, bool damped,
                                               bool with_witness,
                                               const darc::BoundaryGrid& arc_grid,
                                               const darc::BoundaryGrid& witness_grid,
                                               const darc::BoundaryGrid& full_grid,
                                               const std::optional<darc::BoundaryGrid>& profile_grid,
                                               double eps, double tol) {
  std::vector<darc::ResidualCheck> checks;
  auto push = [&](const char* name, double value) {
    checks.push_back({name, value, tol, std::isfinite(value) && value <= tol});
  };
  if (!damped) {
    push("unitary_on_arc", darc::unitarity_residual(M, arc_grid));
    push("entry_contraction", darc::entry_bound_residual(M, full_grid, interior_probes()));
    // A globally rational matrix is its own exterior continuation, so the
    // witness comparison (whose residual is O(1 - rho) by construction) adds
    // nothing for diagonal embeddings and is skipped there.
    if (with_witness)
      push("exterior_witness", darc::exterior_witness_agreement(M, witness_grid));
  } else {
    const darc::Rational& s = M.entry(1, 1).rational_part();
    push("damped_unitary_on_arc", darc::unitarity_residual(M, arc_grid));
    if (profile_grid)
      push("damped_positivity_profile", darc::psd_residual(M, *profile_grid, eps, s));
    double margin = darc::contraction_defect_margin(M, s, full_grid);
    push("contraction_defect_violation", std::max(0.0, -margin));
  }
  return checks;
}

void append_unitary_rows(std::string& csv, const char* name, const darc::Matrix2Fn& M,
                         const darc::BoundaryGrid& grid) {
  for (std::size_t k = 0; k < grid.angles.size(); ++k) {
    Eigen::Matrix2cd W =
        Eigen::Matrix2cd::Identity() - M.eval(grid.sample(static_cast<int>(k))).adjoint() *
                                           M.eval(grid.sample(static_cast<int>(k)));
    csv += format_double(grid.angles[k]) + "," + name + "," +
           format_double(W.cwiseAbs().maxCoeff()) + "\n";
  }
}

void append_psd_rows(std::string& csv, const darc::Matrix2Fn& M,
                     const darc::BoundaryGrid& grid) {
  for (std::size_t k = 0; k < grid.angles.size(); ++k) {
    Eigen::Matrix2cd W =
        Eigen::Matrix2cd::Identity() - M.eval(grid.sample(static_cast<int>(k))).adjoint() *
                                           M.eval(grid.sample(static_cast<int>(k)));
    double half_trace = 0.5 * W.trace().real();
    double det = W.determinant().real();
    double lambda_min =
        half_trace - std::sqrt(std::max(0.0, half_trace * half_trace - det));
    csv += format_double(grid.angles[k]) + ",damped_positivity_profile," +
           format_double(std::max(0.0, -lambda_min)) + "\n";
  }
}

std::string samples_csv_body(const darc::Matrix2Fn& M, const darc::BoundaryGrid& grid) {
  static const char* names[] = {"a11", "a12", "a21", "a22"};
  std::string csv = "angle,entry,re,im\n";
  for (std::size_t k = 0; k < grid.angles.size(); ++k) {
    Eigen::Matrix2cd m = M.eval(grid.sample(static_cast<int>(k)));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        csv += format_double(grid.angles[k]) + "," + names[2 * i + j] + "," +
               format_double(m(i, j).real()) + "," + format_double(m(i, j).imag()) + "\n";
  }
  return csv;
}

void print_checks(const std::vector<darc::ResidualCheck>& checks) {
  std::printf("%-30s %13s %13s  %s\n", "check", "value", "tolerance", "status");
  for (const darc::ResidualCheck& c : checks)
    std::printf("%-30s %13.6e %13.6e  %s\n", c.name.c_str(), c.value, c.tolerance,
                c.pass ? "pass" : "FAIL");
}

int run_synth(const SynthFlags& flags) {
  darc::ProblemSpec problem = darc::problem_from_json(parse_json_file(flags.input_path));
  if (!flags.arc_override.empty()) problem.arc = parse_arc_flag(flags.arc_override);
  if (flags.epsilon) problem.eps = *flags.epsilon;
  if (flags.tol_quad) problem.quad.abs_tol = *flags.tol_quad;
  if (flags.tol_residual) problem.residual_tol = *flags.tol_residual;
  if (flags.grid) problem.grid_samples = *flags.grid;

  darc::SchurCertificate cert = darc::certify_schur(problem.s, flags.cert_tol);
  if (!cert.is_schur) {
    std::fprintf(stderr, "error: not a Schur function (boundary modulus bound %.6g)\n",
                 cert.sup_bound);
    return kExitData;
  }

  // Diagonal embeddings are rational, hence sampled exactly on the circle;
  // synthesized matrices carry boundary integrals and use a radial proxy.
  double rho = flags.rho;
  if (cert.is_finite_blaschke && !flags.rho_set) rho = 1.0;

  darc::BoundaryGrid arc_grid =
      darc::BoundaryGrid::make(problem.arc, problem.grid_samples, rho, flags.endpoint_margin);
  // The exterior witness compares radial limits across the circle, so its grid
  // must stay strictly inside even when the others sample the circle itself.
  double witness_rho = std::min(rho, 1.0 - 1e-6);
  darc::BoundaryGrid witness_grid = darc::BoundaryGrid::make(
      problem.arc, problem.grid_samples, witness_rho, flags.endpoint_margin);
  darc::BoundaryGrid full_grid = darc::BoundaryGrid::make(
      darc::CircleArc::full_circle(), problem.grid_samples, rho, flags.endpoint_margin);
  std::optional<darc::BoundaryGrid> profile_grid;
  if (auto complement = darc::arc_complement(problem.arc))
    profile_grid = darc::BoundaryGrid::make(*complement, problem.grid_samples, kProfileRho,
                                            flags.endpoint_margin);

  darc::SynthesisConfig cfg;
  cfg.eps = problem.eps;
  cfg.quad = problem.quad;
  cfg.cert_tol = flags.cert_tol;

  darc::Matrix2Fn M;
  darc::Complex sigma_at_zero(0.0, 0.0);
  bool damped = false;
  std::vector<darc::ResidualCheck> checks;
  if (cert.is_finite_blaschke) {
    std::printf(
        "notice: the input is a finite Blaschke product; verifying its diagonal "
        "embedding, which is unitary on the whole circle\n");
    M = darc::diagonal_embedding(problem.s, darc::Rational(darc::Poly::monomial(1)),
                                 flags.cert_tol);
    sigma_at_zero = M.entry(0, 1).eval(darc::Complex(0.0, 0.0));
    checks = matrix_checks(M, false, false, arc_grid, witness_grid, full_grid,
                           profile_grid, problem.eps, problem.residual_tol);
  } else if (flags.theorem == 1) {
    darc::SynthesizedMatrix sm = darc::synthesize_unitary(problem.s, problem.arc, cfg);
    M = sm.S;
    sigma_at_zero = M.entry(0, 1).eval(darc::Complex(0.0, 0.0));
    checks = matrix_checks(M, false, true, arc_grid, witness_grid, full_grid,
                           profile_grid, problem.eps, problem.residual_tol);
  } else {
    darc::ContractiveMatrix cm = darc::synthesize_contractive(problem.s, problem.arc, cfg);
    M = cm.V;
    damped = true;
    sigma_at_zero = cm.base.S.entry(0, 1).eval(darc::Complex(0.0, 0.0));
    checks = matrix_checks(cm.base.S, false, true, arc_grid, witness_grid, full_grid,
                           profile_grid, problem.eps, problem.residual_tol);
    std::vector<darc::ResidualCheck> damped_checks =
        matrix_checks(M, true, false, arc_grid, witness_grid, full_grid, profile_grid,
                      problem.eps, problem.residual_tol);
    checks.insert(checks.end(), damped_checks.begin(), damped_checks.end());
  }

  darc::Json config_echo = darc::Json::object();
  config_echo["theorem"] = flags.theorem;
  config_echo["blaschke"] = cert.is_finite_blaschke;
  config_echo["rho"] = rho;
  if (witness_rho != rho) config_echo["rho_witness"] = witness_rho;
  if (damped && profile_grid) config_echo["rho_profile"] = kProfileRho;
  config_echo["grid_samples"] = problem.grid_samples;
  config_echo["endpoint_margin"] = flags.endpoint_margin;
  config_echo["cert_tol"] = flags.cert_tol;
  darc::Report report = darc::make_report(darc::problem_to_json(problem).dump(),
                                          config_echo.dump(), std::move(checks));

  fs::create_directories(flags.output_dir);
  fs::path outdir(flags.output_dir);
  darc::Json report_json = darc::report_to_json(report);
  report_json["sigma_at_zero"] =
      darc::Json::array({sigma_at_zero.real(), sigma_at_zero.imag()});
  write_text(outdir / "matrix.json", darc::matrix_to_json(M, problem.quad).dump(2) + "\n");
  write_text(outdir / "report.json", report_json.dump(2) + "\n");
  if (flags.samples_csv)
    write_text(outdir / "samples.csv", samples_csv_body(M, full_grid));
  if (flags.residuals_csv) {
    std::string csv = "angle,check,value\n";
    append_unitary_rows(csv, damped ? "damped_unitary_on_arc" : "unitary_on_arc", M, arc_grid);
    if (damped && profile_grid) append_psd_rows(csv, M, *profile_grid);
    write_text(outdir / "residuals.csv", csv);
  }

  print_checks(report.checks);
  std::printf("sigma_at_zero = %.17g %+.17gi\n", sigma_at_zero.real(), sigma_at_zero.imag());
  std::printf("verdict: %s\n", report.verdict ? "pass" : "FAIL");
  std::printf("wrote %s\n", (outdir / "matrix.json").string().c_str());
  std::printf("wrote %s\n", (outdir / "report.json").string().c_str());

  if (flags.reverify) {
    darc::Matrix2Fn reloaded =
        darc::matrix_from_json(parse_json_file((outdir / "matrix.json").string()));
    std::vector<darc::ResidualCheck> again =
        matrix_checks(reloaded, damped, !cert.is_finite_blaschke, arc_grid, witness_grid,
                      full_grid, profile_grid, problem.eps, problem.residual_tol);
    double deviation = 0.0;
    for (const darc::ResidualCheck& fresh : again) {
      auto match = std::find_if(report.checks.begin(), report.checks.end(),
                                [&](const darc::ResidualCheck& c) { return c.name == fresh.name; });
      if (match == report.checks.end())
        throw darc::DomainError("reverification lost check " + fresh.name);
      deviation = std::max(deviation, std::abs(fresh.value - match->value));
    }
    bool ok = deviation <= kReverifyTol;
    std::printf("reverify: max residual deviation %.3e (bound %.0e) %s\n", deviation,
                kReverifyTol, ok ? "pass" : "FAIL");
    if (!ok) return kExitVerificationFail;
  }

  return report.verdict ? kExitPass : kExitVerificationFail;
}

int run_sweep_cmd(const SweepFlags& flags) {
  darc::SweepOptions opts;
  opts.seed = flags.seed;
  opts.count = flags.count;
  opts.grid_samples = flags.grid;
  opts.rho = flags.rho;
  opts.eps = flags.epsilon;
  opts.tol = flags.tol_residual;
  if (flags.tol_quad) opts.quad.abs_tol = *flags.tol_quad;

  darc::SweepSummary summary = darc::run_sweep(opts);
  fs::create_directories(flags.output_dir);
  fs::path out = fs::path(flags.output_dir) / "sweep.json";
  write_text(out, darc::sweep_to_json(summary).dump(2) + "\n");

  for (const darc::SweepCase& c : summary.cases) {
    double worst = 0.0;
    for (const darc::ResidualCheck& ch : c.checks) worst = std::max(worst, ch.value);
    std::printf("case %3d %-8s arc [%8.5f, %8.5f)  worst %9.3e  %s\n", c.index,
                c.draw.blaschke ? "blaschke" : "generic", c.draw.arc.alpha(), c.draw.arc.beta(),
                worst, c.pass ? "pass" : "FAIL");
  }
  std::printf("worst residual: %.6e\n", summary.worst_residual);
  if (std::isfinite(summary.min_defect_margin))
    std::printf("min defect margin: %.6e\n", summary.min_defect_margin);
  std::printf("verdict: %s\n", summary.verdict ? "pass" : "FAIL");
  std::printf("wrote %s\n", out.string().c_str());
  return summary.verdict ? kExitPass : kExitVerificationFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-unitary matrix embeddings of rational Schur functions"};
  app.require_subcommand(1);

  SynthFlags sf;
  CLI::App* synth = app.add_subcommand(
      "synth", "synthesize one embedding from a problem file and verify it");
  synth->add_option("input", sf.input_path, "problem description (JSON)")->required();
  synth->add_option("--arc", sf.arc_override,
                    "override the arc: \"alpha,beta\" in radians, or \"full\"");
  synth->add_option("--theorem", sf.theorem, "1: unitary on the arc; 2: fully contractive")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  synth->add_option("--epsilon", sf.epsilon, "damping level in (0, 1/3)");
  synth->add_option("--tol-quad", sf.tol_quad, "absolute quadrature tolerance");
  synth->add_option("--tol-residual", sf.tol_residual, "residual tolerance for every check");
  synth->add_option("--cert-tol", sf.cert_tol, "Schur certification tolerance")
      ->capture_default_str();
  synth->add_option("--rho", sf.rho, "radial proxy for boundary sampling (1 = on circle)")
      ->capture_default_str();
  synth->add_option("--grid", sf.grid, "boundary grid samples");
  synth->add_option("--endpoint-margin", sf.endpoint_margin,
                    "relative arc trim before sampling")
      ->capture_default_str();
  synth->add_option("--output", sf.output_dir, "output directory")->capture_default_str();
  synth->add_flag("--samples-csv", sf.samples_csv, "also write boundary samples of the matrix");
  synth->add_flag("--residuals-csv", sf.residuals_csv, "also write per-angle residuals");
  synth->add_flag("--reverify", sf.reverify,
                  "reload the written matrix and check the residuals reproduce");

  SweepFlags wf;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run the randomized certification sweep");
  sweep->add_option("--seed", wf.seed, "sweep seed")->capture_default_str();
  sweep->add_option("--count", wf.count, "number of cases")->capture_default_str();
  sweep->add_option("--grid", wf.grid, "boundary grid samples per case")->capture_default_str();
  sweep->add_option("--rho", wf.rho, "radial proxy for boundary sampling")
      ->capture_default_str();
  sweep->add_option("--epsilon", wf.epsilon, "damping level in (0, 1/3)")
      ->capture_default_str();
  sweep->add_option("--tol-residual", wf.tol_residual, "residual tolerance for every check")
      ->capture_default_str();
  sweep->add_option("--tol-quad", wf.tol_quad, "absolute quadrature tolerance");
  sweep->add_option("--output", wf.output_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
    sf.rho_set = synth->count("--rho") > 0;
    if (synth->parsed()) return run_synth(sf);
    return run_sweep_cmd(wf);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const darc::NotAnalyticError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const darc::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const darc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
}
