#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"
#include "aniso/studies.hpp"

using aniso::AnalyticDomain;
using aniso::FinslerNorm;
using aniso::GridField;
using aniso::StudyOptions;
using aniso::TraceField;

namespace {

const double kPi = std::acos(-1.0);

FinslerNorm euclid() { return FinslerNorm::euclidean(2); }
FinslerNorm qdiag() { return FinslerNorm::quadratic(2, {4, 0, 0, 1}); }

AnalyticDomain unit_disk() { return AnalyticDomain::wulff(euclid(), 1.0); }

AnalyticDomain ellipse_2to1() {
  return AnalyticDomain::ellipse(std::sqrt(2.0), std::sqrt(0.5));
}

}  // namespace

TEST_CASE("sweep rejects invalid input") {
  const auto disk = unit_disk();
  CHECK_THROWS_AS(aniso::gamma_sweep(disk, euclid(), -1.0, {1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aniso::gamma_sweep(disk, euclid(), 0.5, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aniso::gamma_sweep(disk, euclid(), 0.5, {1.25, 1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(aniso::gamma_sweep(disk, euclid(), 0.5, {1.5, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("sweep: beta = 0 rows are exactly trivial") {
  const auto rows = aniso::gamma_sweep(unit_disk(), euclid(), 0.0, {1.5, 1.1});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.has_shooting);
    CHECK(std::abs(r.lambda_grid) <= 1e-6);
    CHECK(std::abs(r.lambda_shooting) <= 1e-6);
    CHECK(std::abs(r.Lambda) <= 1e-6);
    CHECK(std::abs(r.gap) <= 1e-6);
  }
}

TEST_CASE("sweep: euclidean disk trends to the set-ratio limit") {
  const std::vector<double> ps = {1.5, 1.25, 1.1, 1.05};
  const auto rows = aniso::gamma_sweep(unit_disk(), euclid(), 0.5, ps);
  REQUIRE(rows.size() == ps.size());

  // The limit of the disk at beta = 0.5 is 1.0; the reference must land
  // within the extrapolation accuracy.
  CHECK(rows[0].Lambda == doctest::Approx(1.0).epsilon(0.02));

  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].p == ps[i]);
    CHECK(rows[i].has_shooting);
    // Wulff-domain row invariant: the two eigenvalue columns agree.
    CHECK(std::abs(rows[i].lambda_shooting - rows[i].lambda_grid) <=
          0.02 * std::max(1.0, std::abs(rows[i].lambda_grid)));
    if (i > 0) {
      // Gaps shrink monotonically until they reach the noise floor of the
      // extrapolated reference (about 1e-4 here).
      const bool below_floor = std::abs(rows[i].gap) < 5e-4;
      CHECK((std::abs(rows[i].gap) < std::abs(rows[i - 1].gap) ||
             below_floor));
    }
  }
  CHECK(std::abs(rows.back().gap) < 0.1);
  CHECK(rows.back().lambda_shooting == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rows[rows.size() - 2].ok);
  CHECK(rows.back().ok);
}

TEST_CASE("isoperimetric family orderings at beta = +-0.5") {
  const std::vector<AnalyticDomain> fam_pos = {
      unit_disk(), ellipse_2to1(),
      AnalyticDomain::rectangle(std::sqrt(kPi), std::sqrt(kPi))};

  const auto pos = aniso::isoperimetric_compare(fam_pos, euclid(), 0.5);
  REQUIRE(pos.size() == 3);
  CHECK(pos[0].verdict == "reference");
  CHECK(pos[0].Lambda == doctest::Approx(1.0).epsilon(0.02));
  CHECK(pos[1].verdict == "pass");
  CHECK(pos[2].verdict == "pass");
  // Strict orderings, not ties: the margin exceeds the 2% verdict band.
  CHECK(pos[1].Lambda > pos[0].Lambda + 0.02 * std::abs(pos[0].Lambda));
  CHECK(pos[2].Lambda > pos[0].Lambda + 0.02 * std::abs(pos[0].Lambda));

  const std::vector<AnalyticDomain> fam_neg = {unit_disk(), ellipse_2to1()};
  const auto neg = aniso::isoperimetric_compare(fam_neg, euclid(), -0.5);
  REQUIRE(neg.size() == 2);
  CHECK(neg[0].verdict == "reference");
  CHECK(neg[0].Lambda == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(neg[1].verdict == "pass");
  CHECK(neg[1].Lambda < neg[0].Lambda - 0.02 * std::abs(neg[0].Lambda));
}

TEST_CASE("isoperimetric: beta = 0 verdicts are vacuous") {
  StudyOptions opts;
  opts.lambda_h = {1.0 / 32, 1.0 / 64};
  const std::vector<AnalyticDomain> fam = {unit_disk(), ellipse_2to1()};
  const auto rows = aniso::isoperimetric_compare(fam, euclid(), 0.0, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].verdict == "reference");
  CHECK(rows[1].verdict == "vacuous");
  CHECK(std::abs(rows[0].Lambda) <= 1e-9);
  CHECK(std::abs(rows[1].Lambda) <= 1e-9);
}

TEST_CASE("isoperimetric rejects bad families") {
  StudyOptions opts;
  opts.lambda_h = {1.0 / 16, 1.0 / 32};
  CHECK_THROWS_AS(aniso::isoperimetric_compare({}, euclid(), 0.5, opts),
                  std::invalid_argument);
  // The reference must come first.
  CHECK_THROWS_AS(
      aniso::isoperimetric_compare({ellipse_2to1(), unit_disk()}, euclid(),
                                   0.5, opts),
      std::invalid_argument);
  // Areas must agree to 0.5%.
  CHECK_THROWS_AS(
      aniso::isoperimetric_compare(
          {unit_disk(), AnalyticDomain::ellipse(2.0, 1.0)}, euclid(), 0.5,
          opts),
      std::invalid_argument);
  // Corners are not allowed on the negative-beta side.
  CHECK_THROWS_AS(
      aniso::isoperimetric_compare(
          {unit_disk(), ellipse_2to1(),
           AnalyticDomain::rectangle(std::sqrt(kPi), std::sqrt(kPi))},
          euclid(), -0.5, opts),
      std::invalid_argument);
}

TEST_CASE("reference ladder validation") {
  StudyOptions opts;
  opts.lambda_h = {1.0 / 32};
  CHECK_THROWS_AS(aniso::lambda_reference(unit_disk(), euclid(), 0.5, opts),
                  std::invalid_argument);
  opts.lambda_h = {1.0 / 32, 1.0 / 32};
  CHECK_THROWS_AS(aniso::lambda_reference(unit_disk(), euclid(), 0.5, opts),
                  std::invalid_argument);
  opts.lambda_h = {1.0 / 32, -1.0 / 64};
  CHECK_THROWS_AS(aniso::lambda_reference(unit_disk(), euclid(), 0.5, opts),
                  std::invalid_argument);
}

TEST_CASE("trace pins: constants on the disk and a cone on a Wulff ellipse") {
  const auto disk = unit_disk();
  const auto grid = aniso::build_raster(disk, 1.0 / 128);
  std::vector<TraceField> fields;
  fields.push_back({"one", GridField(grid, 1.0)});
  fields.push_back({"zero", GridField(grid, 0.0)});
  const auto rows = aniso::trace_check(disk, euclid(), fields);
  REQUIRE(rows.size() == 2);
  // u = 1 on the unit disk with mu = 1, c = 4: lhs the exact boundary
  // length, rhs = 4 * area (TV vanishes), margin = 2 pi.
  CHECK(rows[0].lhs == doctest::Approx(2 * kPi).epsilon(1e-9));
  CHECK(rows[0].rhs == doctest::Approx(4 * kPi).epsilon(1e-3));
  CHECK(rows[0].margin == doctest::Approx(2 * kPi).epsilon(2e-3));
  // u = 0: both sides vanish identically.
  CHECK(rows[1].lhs == 0.0);
  CHECK(rows[1].rhs == 0.0);
  CHECK(rows[1].margin == 0.0);

  // Cone u = 1 - polar(x) on the unit Wulff shape of the diag(4,1) norm
  // (an ellipse with semi-axes 2 and 1, mu = 1 under its own norm):
  // u vanishes on the boundary, TV = kappa, ||u||_1 = kappa / 3 with
  // kappa the Wulff area, so rhs = kappa (1 + 4/3).
  const auto F = qdiag();
  const auto wq = AnalyticDomain::wulff(F, 1.0);
  const auto gq = aniso::build_raster(wq, 1.0 / 128);
  GridField cone(gq);
  for (int k = 0; k < gq->inside_count(); ++k)
    cone.v[k] = 1.0 - F.polar2(gq->cell_x(k), gq->cell_y(k));
  std::vector<TraceField> cf;
  cf.push_back({"cone", cone});
  const auto cr = aniso::trace_check(wq, F, cf);
  const double kappa = aniso::wulff_unit_area(F);
  CHECK(kappa == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(aniso::curvature_mu(wq, F) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(cr[0].lhs) < 0.05);  // boundary values of order h
  CHECK(cr[0].rhs == doctest::Approx(kappa * (1 + 4.0 / 3.0)).epsilon(5e-3));
  CHECK(cr[0].margin > 0);
}

TEST_CASE("trace corpus: 100 deterministic fields per seed") {
  const auto grid = aniso::build_raster(unit_disk(), 1.0 / 64);
  const auto a = aniso::default_trace_corpus(grid);
  const auto b = aniso::default_trace_corpus(grid);
  REQUIRE(a.size() == 100);
  REQUIRE(b.size() == 100);
  CHECK(a.front().id == "const_one");
  CHECK(a.back().id == "tanh_19");
  int smooth = 0;
  for (const auto& f : a) smooth += f.id.rfind("smooth_", 0) == 0;
  CHECK(smooth == 48);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].u.v == b[i].u.v);
  }
  // A different seed must change the random families but not the layout.
  const auto c = aniso::default_trace_corpus(grid, 1234);
  CHECK(c.size() == 100);
  CHECK(c[2].id == a[2].id);
  CHECK(c[2].u.v != a[2].u.v);
  CHECK(c[0].u.v == a[0].u.v);  // constants carry no randomness
}

TEST_CASE("trace margins hold on the full corpus") {
  for (const auto& dom : {unit_disk(), ellipse_2to1()}) {
    const auto grid = aniso::build_raster(dom, 1.0 / 128);
    const auto corpus = aniso::default_trace_corpus(grid);
    const auto rows = aniso::trace_check(dom, euclid(), corpus);
    REQUIRE(rows.size() == 100);
    for (const auto& r : rows) {
      CAPTURE(r.id);
      CHECK(r.margin >= -0.01 * r.rhs);
    }
  }
}

TEST_CASE("trace rejects unsupported input") {
  const auto square = AnalyticDomain::rectangle(2, 2);
  const auto gs = aniso::build_raster(square, 1.0 / 16);
  std::vector<TraceField> fields;
  fields.push_back({"one", GridField(gs, 1.0)});
  CHECK_THROWS_AS(aniso::trace_check(square, euclid(), fields),
                  std::invalid_argument);

  // Fields must live on a raster of the checked domain.
  const auto gd = aniso::build_raster(unit_disk(), 1.0 / 16);
  std::vector<TraceField> other;
  other.push_back({"one", GridField(gd, 1.0)});
  CHECK_THROWS_AS(aniso::trace_check(ellipse_2to1(), euclid(), other),
                  std::invalid_argument);
}
