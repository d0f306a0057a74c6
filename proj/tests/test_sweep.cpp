#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <darc/errors.hpp>
#include <darc/schur.hpp>
#include <darc/serialize.hpp>
#include <darc/sweep.hpp>

using darc::kPi;
using darc::SweepDraw;
using darc::SweepOptions;
using darc::SweepSummary;

TEST_CASE("draws are deterministic and in the advertised ranges") {
  for (int i = 0; i < 40; ++i) {
    SweepDraw a = darc::draw_case(7, i);
    SweepDraw b = darc::draw_case(7, i);
    CHECK(darc::rational_to_json(a.s).dump() == darc::rational_to_json(b.s).dump());
    CHECK(a.arc.alpha() == b.arc.alpha());
    CHECK(a.blaschke == b.blaschke);
    CHECK(a.arc.length() >= 0.1 * kPi);
    CHECK(a.arc.length() <= 1.9 * kPi);
    darc::SchurCertificate cert = darc::certify_schur(a.s);
    CHECK(cert.is_schur);
    CHECK(cert.is_finite_blaschke == a.blaschke);
  }
  CHECK_THROWS_AS(darc::draw_case(7, -1), darc::DomainError);
}

TEST_CASE("both generator branches appear over a modest index range") {
  int blaschke = 0, generic = 0;
  for (int i = 0; i < 60; ++i) {
    if (darc::draw_case(42, i).blaschke)
      ++blaschke;
    else
      ++generic;
  }
  CHECK(blaschke > 0);
  CHECK(generic > blaschke);
}

TEST_CASE("a small sweep passes and serializes byte-identically") {
  SweepOptions o;
  o.count = 2;
  o.grid_samples = 32;
  SweepSummary r = darc::run_sweep(o);
  CHECK(r.verdict);
  CHECK(r.cases.size() == 2);
  CHECK(r.worst_residual <= o.tol);
  for (const auto& c : r.cases) {
    CHECK(c.pass);
    CHECK(c.checks.size() >= 3);
    if (c.has_defect_margin) CHECK(c.defect_margin >= -o.tol);
  }
  std::string dump = darc::sweep_to_json(r).dump(2);
  CHECK(dump == darc::sweep_to_json(darc::run_sweep(o)).dump(2));
}

TEST_CASE("a blaschke draw goes through the diagonal embedding path") {
  // seed chosen so the very first draw is a finite Blaschke product
  std::uint64_t seed = 0;
  while (!darc::draw_case(seed, 0).blaschke) ++seed;
  SweepOptions o;
  o.seed = seed;
  o.count = 1;
  o.grid_samples = 32;
  SweepSummary r = darc::run_sweep(o);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.cases[0].draw.blaschke);
  CHECK(!r.cases[0].has_defect_margin);
  CHECK(r.cases[0].checks.size() == 3);
  CHECK(r.cases[0].pass);
}

TEST_CASE("degenerate options are rejected") {
  SweepOptions o;
  o.count = 0;
  CHECK_THROWS_AS(darc::run_sweep(o), darc::DomainError);
  o.count = 1;
  o.tol = 0.0;
  CHECK_THROWS_AS(darc::run_sweep(o), darc::DomainError);
}
