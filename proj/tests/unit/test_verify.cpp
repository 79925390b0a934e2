#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "cauchydos/errors.hpp"
#include "cauchydos/verify.hpp"
#include "oracles.hpp"

using namespace cauchydos;

namespace {

double metric_value(const CheckReport& r, const std::string& name) {
  const Metric* m = r.metric(name);
  REQUIRE(m != nullptr);
  return m->value;
}

}  // namespace

TEST_CASE("pass flag is a function of the gated metrics") {
  CheckReport r;
  r.metrics = {{"a", 0.5, 1.0, true}, {"b", 5.0, 0.0, false}};
  r.finalize();
  CHECK(r.passed);
  r.metrics.push_back({"c", 2.0, 1.0, true});
  r.finalize();
  CHECK_FALSE(r.passed);
  r.metrics.back().value = std::numeric_limits<double>::quiet_NaN();
  r.finalize();
  CHECK_FALSE(r.passed);
  r.metrics.back() = {"c", 1.0, 1.0, true};
  r.finalize();
  CHECK(r.passed);
  CHECK(r.metric("b")->value == 5.0);
  CHECK(r.metric("missing") == nullptr);
}

TEST_CASE("semigroup check") {
  const auto r = check_semigroup({});
  CHECK(r.passed);
  CHECK(metric_value(r, "sup_distance") <= 1e-4);
  CHECK(metric_value(r, "target_swap_gap") <= 1e-12);
  CheckControl strict;
  strict.force_threshold = 0.0;
  CHECK_FALSE(check_semigroup({}, strict).passed);
}

TEST_CASE("reports serialise deterministically") {
  CheckControl c;
  c.seed = 7;
  const auto a = check_semigroup({}, c);
  const auto b = check_semigroup({}, c);
  CHECK(report_json(a) == report_json(b));
  CHECK(report_json(a).find("runtime_seconds") == std::string::npos);
  CHECK(report_json(a, true).find("runtime_seconds") != std::string::npos);
  CHECK(report_json(a).find("\"seed\": 7") != std::string::npos);
  CHECK(reports_json({a, b}).front() == '[');
  std::ostringstream table;
  print_report_table(table, {a});
  CHECK(table.str().find("PASS") != std::string::npos);
}

TEST_CASE("analytic strip check") {
  const auto r = check_analytic_strip({});
  CHECK(r.passed);
  CHECK(metric_value(r, "max_cr_residual") <= 1e-5);
  CHECK(metric_value(r, "outside_strip_not_raised") == 0.0);
  StripCheckParams bad;
  bad.heights = {0.95};
  CHECK_THROWS_AS(check_analytic_strip(bad), InvalidArgument);
  StripCheckParams two_d;
  two_d.dim = 2;
  two_d.heights = {-0.5, 0.5};
  two_d.energies = {-4.0, 4.0, 1.0};
  CHECK(check_analytic_strip(two_d).passed);
}

TEST_CASE("free ring charfn control") {
  CharfnCheckParams p;
  p.disorder = false;
  p.samples = 1;
  const auto r = check_theorem1_charfn(p);
  CHECK(r.passed);
  CHECK(metric_value(r, "max_abs_dev") <= 0.02);
}

TEST_CASE("off-diagonal charfn") {
  CharfnCheckParams p;
  p.side = 256;
  p.samples = 150;
  p.psi_offset = 1;
  p.t_step = 0.25;
  CheckControl c;
  c.seed = 3;
  const auto r = check_theorem1_charfn(p, c);
  CHECK(r.passed);
  CHECK(metric_value(r, "max_dev_over_band") <= 1.0);
}

TEST_CASE("broadening and disorder widths are interchangeable") {
  DosCheckParams a;
  a.side = 400;
  a.samples = 40;
  a.grid = {-6.0, 6.0, 0.05};
  a.sup_threshold = 0.02;
  DosCheckParams b = a;
  b.lambda = 0.1;
  b.eta = 1.0;
  CheckControl c;
  c.seed = 11;
  const auto ra = check_theorem1_dos(a, c);
  const auto rb = check_theorem1_dos(b, c);
  CHECK(ra.passed);
  CHECK(rb.passed);
  CHECK(metric_value(ra, "max_z") <= 4.0);
  CHECK(metric_value(rb, "max_z") <= 4.0);
  CHECK(metric_value(rb, "sup_distance") < metric_value(ra, "sup_distance"));
}

TEST_CASE("single-site tree is a Cauchy point measure") {
  BetheCheckParams p;
  p.depth = 0;
  p.ball_radius = 0;
  p.samples = 400;
  p.grid = {-4.0, 4.0, 0.1};
  CheckControl c;
  c.seed = 5;
  const auto r = check_bethe(p, c);
  CHECK(metric_value(r, "max_z") <= 4.0);
}

TEST_CASE("free deep tree against smeared Kesten-McKay") {
  BetheCheckParams p;
  p.disorder = false;
  p.eta = 0.5;
  p.samples = 1;
  p.ball_radius = 0;
  p.grid = {-2.5, 2.5, 0.05};
  const auto r = check_bethe(p);
  CHECK(r.passed);
  CHECK(metric_value(r, "sup_raw") <= 0.01);
}

TEST_CASE("free continuum control") {
  ContinuumCheckParams p;
  p.disorder = false;
  p.samples = 1;
  const auto r = check_continuum_ids(p);
  CHECK(r.passed);
  CHECK(metric_value(r, "sup_distance") <= 0.01);
}

TEST_CASE("named checks") {
  const auto& names = check_names();
  REQUIRE(names.size() == 6);
  CHECK(names.front() == "semigroup");
  CHECK_THROWS_AS(run_named_check("no-such-check"), InvalidArgument);
  CHECK(run_named_check("semigroup").name == "semigroup");
}
