#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"
#include "aniso/variation.hpp"

using aniso::AnalyticDomain;
using aniso::CellSet;
using aniso::FinslerNorm;
using aniso::GridField;

namespace {

const double kPi = std::acos(-1.0);

FinslerNorm euclid() { return FinslerNorm::euclidean(2); }
FinslerNorm wq4() { return FinslerNorm::weighted_q(4.0, {1.0, 1.0}); }
FinslerNorm wq25() { return FinslerNorm::weighted_q(2.5, {2.0, 0.5}); }
FinslerNorm qdiag() { return FinslerNorm::quadratic(2, {4, 0, 0, 1}); }
FinslerNorm qgen() { return FinslerNorm::quadratic(2, {2, 0.5, 0.5, 1}); }

std::vector<FinslerNorm> norm_zoo() {
  return {euclid(), wq4(), wq25(), qdiag(), qgen()};
}

// 2x2 lattice of unit cells (square of side 2 at spacing 1).
aniso::RasterPtr square2x2() {
  return aniso::build_raster(AnalyticDomain::rectangle(2, 2), 1.0, 64);
}

// Distance cone u = 1 - polar(x) on the unit Wulff shape of F.
GridField wulff_cone(const FinslerNorm& F, double h) {
  auto g = aniso::build_raster(AnalyticDomain::wulff(F, 1), h);
  GridField u(g);
  for (int k = 0; k < g->inside_count(); ++k) {
    const double x[2] = {g->cell_x(k), g->cell_y(k)};
    u.v[k] = 1 - F.polar(x);
  }
  return u;
}

CellSet pick_cells(aniso::RasterPtr g,
                   const std::vector<std::array<int, 2>>& ij) {
  CellSet E(g);
  for (const auto& c : ij) {
    const int k = g->cell_index(c[0], c[1]);
    REQUIRE(k >= 0);
    E.member[k] = 1;
  }
  return E;
}

GridField random_field(aniso::RasterPtr g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridField u(std::move(g));
  for (auto& x : u.v) x = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("perimeter components by hand on the 2x2 square") {
  auto g = square2x2();
  // Lattice coordinates of the 2x2 inside block.
  std::vector<std::array<int, 2>> block;
  for (int k = 0; k < g->inside_count(); ++k) block.push_back(g->cell(k));
  REQUIRE(block.size() == 4);
  int i0 = block[0][0], j0 = block[0][1];
  for (const auto& c : block) {
    i0 = std::min(i0, c[0]);
    j0 = std::min(j0, c[1]);
  }

  // E = whole domain: no interior faces, 8 unit faces shared with the
  // boundary, all on straight runs (weight exactly 1 each).
  const CellSet full(g, true);
  const auto pf = aniso::perimeter_F(full, euclid());
  CHECK(pf.interior == doctest::Approx(0.0));
  CHECK(pf.shared == doctest::Approx(8.0).epsilon(1e-14));

  // E = single corner cell: both its interior faces sit next to a
  // 90-degree turn of E, so the slope stencil sees a unit step and each
  // face weighs F(1,1)/2 = sqrt(2)/2. The shared part is the quarter of
  // the analytic square boundary the cell owns: two unit segments.
  const auto corner = pick_cells(g, {{i0, j0}});
  const auto pc = aniso::perimeter_F(corner, euclid());
  CHECK(pc.interior == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(pc.shared == doctest::Approx(2.0).epsilon(1e-12));

  // E = left half under diag(4,1): two interior faces with normal e1 on a
  // straight vertical run, each weighing F(e1) = 2.
  const auto half = pick_cells(g, {{i0, j0}, {i0, j0 + 1}});
  CHECK(aniso::perimeter_F(half, qdiag()).interior ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("set ratio on the 2x2 square and the annulus identity") {
  auto g = square2x2();
  const CellSet full(g, true);
  CHECK(aniso::ratio_R(full, euclid(), 0.0) == doctest::Approx(0.0));
  // beta >= 1 clamps to 1: (0 + 8)/4 = 2.
  CHECK(aniso::ratio_R(full, euclid(), 1.0) == doctest::Approx(2.0));
  CHECK(aniso::ratio_R(full, euclid(), 2.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(aniso::ratio_R(CellSet(g), euclid(), 1.0),
                  std::domain_error);

  // Concentric annulus E = {0.5 < |x| < 1} in the unit disk, beta = -0.5:
  // R(E) = (2 pi 0.5 - 0.5 * 2 pi)/(0.75 pi) = 0.
  auto disk = aniso::build_raster(AnalyticDomain::wulff(euclid(), 1), 1.0 / 128);
  CellSet ann(disk);
  for (int k = 0; k < disk->inside_count(); ++k)
    ann.member[k] = std::hypot(disk->cell_x(k), disk->cell_y(k)) > 0.5;
  CHECK(std::abs(aniso::ratio_R(ann, euclid(), -0.5)) <= 0.05);

  // Monotone nondecreasing in beta, constant past beta = 1.
  const auto corner = pick_cells(g, {{g->cell(0)[0], g->cell(0)[1]}});
  const double betas[] = {-2, -1, 0, 0.5, 1, 2, 5};
  double prev = -1e300;
  for (double b : betas) {
    const double r = aniso::ratio_R(corner, qgen(), b);
    CHECK(r >= prev - 1e-14);
    prev = r;
  }
  CHECK(aniso::ratio_R(corner, qgen(), 1.0) ==
        doctest::Approx(aniso::ratio_R(corner, qgen(), 5.0)));
}

TEST_CASE("slope-corrected perimeter converges to the anisotropic length") {
  // A disk is the acid test: axis-aligned face counting would converge to
  // the l1 perimeter (factor 4/pi high for Euclidean F); the corrected
  // weights must land on the true integral of F(nu).
  for (const auto& F : {euclid(), qdiag(), qgen()}) {
    CAPTURE(F.describe());
    const auto disk_dom = AnalyticDomain::wulff(euclid(), 0.8);
    const double exact = [&] {
      double s = 0;
      for (const auto& b : disk_dom.boundary_quadrature(8192))
        s += F.value2(b.nx, b.ny) * b.w;
      return s;
    }();
    double err_coarse = 0, err_fine = 0;
    for (const double h : {1.0 / 64, 1.0 / 128}) {
      auto g = aniso::build_raster(AnalyticDomain::rectangle(2, 2), h);
      CellSet E(g);
      for (int k = 0; k < g->inside_count(); ++k)
        E.member[k] = std::hypot(g->cell_x(k), g->cell_y(k)) < 0.8;
      const auto pf = aniso::perimeter_F(E, F);
      CHECK(pf.shared == 0.0);
      (h > 1.0 / 100 ? err_coarse : err_fine) =
          std::abs(pf.interior - exact) / exact;
    }
    CHECK(err_coarse < 0.01);
    CHECK(err_fine < 0.006);
  }

  // Exactness on a straight diagonal interface away from the boundary:
  // E = {x + y < 1/3} inside the square [-1,1]^2. The chord has Euclidean
  // length L = 2*sqrt(2)*(1 - 1/6)... computed from its endpoints; every
  // interface face sees slope 1, so the corrected sum matches F((1,1)/s)*L
  // up to the O(h) clip where the chord meets the domain boundary.
  const double h = 1.0 / 64;
  auto g = aniso::build_raster(AnalyticDomain::rectangle(2, 2), h);
  CellSet E(g);
  for (int k = 0; k < g->inside_count(); ++k)
    E.member[k] = g->cell_x(k) + g->cell_y(k) < 1.0 / 3;
  // Endpoints (1, 1/3-1) and (1/3-1, 1): length sqrt(2)*(2 - 1/3).
  const double len = std::sqrt(2.0) * (2 - 1.0 / 3);
  for (const auto& F : norm_zoo()) {
    CAPTURE(F.describe());
    const double expect = F.value2(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)) * len;
    const auto pf = aniso::perimeter_F(E, F);
    CHECK(pf.interior == doctest::Approx(expect).epsilon(4 * h / len));
  }
}

TEST_CASE("total variation: pinned fields") {
  // Constant field: exactly zero; any variation: strictly positive.
  auto disk = aniso::build_raster(AnalyticDomain::wulff(euclid(), 1), 1.0 / 64);
  GridField c(disk, 3.7);
  CHECK(aniso::total_variation_F(c, qgen()) == 0.0);
  auto r = random_field(disk, 970);
  CHECK(aniso::total_variation_F(r, qgen()) > 0.1);

  // u = x1 on the unit square: integral of F(e1) = 1; forward differences
  // lose one cell column at the boundary, still inside 2%.
  auto sq = aniso::build_raster(AnalyticDomain::rectangle(1, 1), 1.0 / 64);
  GridField ux(sq);
  for (int k = 0; k < sq->inside_count(); ++k) ux.v[k] = sq->cell_x(k);
  CHECK(aniso::total_variation_F(ux, euclid()) ==
        doctest::Approx(1.0).epsilon(0.02));

  // u = polar(x) on the unit Wulff shape: F(grad polar) = 1 almost
  // everywhere, so TV approximates the area kappa.
  for (const auto& F : norm_zoo()) {
    CAPTURE(F.describe());
    auto u = wulff_cone(F, 1.0 / 128);
    for (auto& x : u.v) x = 1 - x;  // back to polar(x)
    const double kappa = aniso::wulff_unit_area(F);
    CHECK(aniso::total_variation_F(u, F) ==
          doctest::Approx(kappa).epsilon(0.03));
  }
}

TEST_CASE("total variation: shift invariance and |u| contraction") {
  auto disk = aniso::build_raster(AnalyticDomain::wulff(euclid(), 1), 1.0 / 32);
  const auto u = random_field(disk, 971);
  for (const auto& F : norm_zoo()) {
    GridField shifted = u;
    for (auto& x : shifted.v) x += 0.7;
    CHECK(std::abs(aniso::total_variation_F(shifted, F) -
                   aniso::total_variation_F(u, F)) <= 1e-12);
  }
  // F depending only on |xi_i| makes |u| a TV contraction.
  for (const auto& F : {euclid(), wq4(), wq25(), qdiag()}) {
    CAPTURE(F.describe());
    for (unsigned seed = 0; seed < 20; ++seed) {
      const auto w = random_field(disk, 1000 + seed);
      GridField a = w;
      for (auto& x : a.v) x = std::abs(x);
      CHECK(aniso::total_variation_F(a, F) <=
            aniso::total_variation_F(w, F) + 1e-12);
    }
  }
  // With an off-diagonal quadratic form the discrete contraction can fail
  // at sign changes (the continuum identity F(grad|u|) = F(grad u) holds
  // only a.e.): u = (-0.1, 1 / -1.1, 0) on the 2x2 square increases TV.
  auto g = square2x2();
  int i0 = g->nx(), j0 = g->ny();
  for (int k = 0; k < 4; ++k) {
    i0 = std::min(i0, g->cell(k)[0]);
    j0 = std::min(j0, g->cell(k)[1]);
  }
  GridField u2(g);
  u2.v[g->cell_index(i0, j0)] = -0.1;
  u2.v[g->cell_index(i0 + 1, j0)] = 1.0;
  u2.v[g->cell_index(i0, j0 + 1)] = -1.1;
  u2.v[g->cell_index(i0 + 1, j0 + 1)] = 0.0;
  GridField a2 = u2;
  for (auto& x : a2.v) x = std::abs(x);
  CHECK(aniso::total_variation_F(a2, qgen()) >
        aniso::total_variation_F(u2, qgen()) + 0.1);
}

TEST_CASE("extended variation equals TV plus the boundary jump") {
  // Constant 1 on the disk: pure jump of size the perimeter.
  auto disk = aniso::build_raster(AnalyticDomain::wulff(euclid(), 1), 1.0 / 64);
  CHECK(aniso::extended_variation(GridField(disk, 1.0), euclid()) ==
        doctest::Approx(2 * kPi).epsilon(1e-2 / (2 * kPi)));
  CHECK(aniso::extended_variation(GridField(disk, 0.0), euclid()) == 0.0);

  // Zero-trace cone: extended value matches the TV of the zero-extension
  // on an enlarged raster (independent evaluation of the jump identity).
  for (const auto& F : norm_zoo()) {
    CAPTURE(F.describe());
    const double h = 1.0 / 128;
    const auto u = wulff_cone(F, h);
    const double ext = aniso::extended_variation(u, F);
    auto big = aniso::build_raster(AnalyticDomain::wulff(F, 1.3), h);
    GridField uz(big);
    for (int k = 0; k < big->inside_count(); ++k) {
      const double x[2] = {big->cell_x(k), big->cell_y(k)};
      uz.v[k] = std::max(0.0, 1 - F.polar(x));
    }
    const double tv_ext = aniso::total_variation_F(uz, F);
    CHECK(ext == doctest::Approx(tv_ext).epsilon(0.01));
    // and both approximate kappa
    CHECK(ext == doctest::Approx(aniso::wulff_unit_area(F)).epsilon(0.03));
  }
}

TEST_CASE("Rayleigh quotient for p > 1") {
  // Constant field: J_p(1) = beta P_F / |Omega| for every p. On an exactly
  // rasterized rectangle both sides are exact.
  auto rect = aniso::build_raster(AnalyticDomain::rectangle(2, 1), 1.0 / 32);
  const GridField one(rect, 1.0);
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(aniso::rayleigh_Jp(one, qdiag(), p, 10.0) ==
          doctest::Approx(40.0).epsilon(1e-9));
    CHECK(aniso::rayleigh_Jp(one, qdiag(), p, -0.5) ==
          doctest::Approx(-2.0).epsilon(1e-9));
  }
  // Euclidean disk, beta = -0.5: -0.5 * 2 pi / pi = -1.
  auto disk = aniso::build_raster(AnalyticDomain::wulff(euclid(), 1), 1.0 / 128);
  const GridField oned(disk, 1.0);
  for (double p : {1.5, 2.0, 3.0})
    CHECK(aniso::rayleigh_Jp(oned, euclid(), p, -0.5) ==
          doctest::Approx(-1.0).epsilon(2e-3));

  // Radial cone, p = 2, beta = 10: (pi + ~0) / (pi/6) = 6.
  const auto cone = wulff_cone(euclid(), 1.0 / 128);
  CHECK(aniso::rayleigh_Jp(cone, euclid(), 2.0, 10.0) ==
        doctest::Approx(6.0).epsilon(0.02));

  // Parameter and zero-field validation, homogeneity.
  CHECK_THROWS_AS(aniso::rayleigh_Jp(one, qdiag(), 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(aniso::rayleigh_Jp(GridField(rect, 0.0), qdiag(), 2.0, 0.0),
                  std::domain_error);
  GridField scaled = cone;
  for (auto& x : scaled.v) x *= 0.2;
  CHECK(aniso::rayleigh_Jp(scaled, euclid(), 2.0, 10.0) ==
        doctest::Approx(aniso::rayleigh_Jp(cone, euclid(), 2.0, 10.0))
            .epsilon(1e-12));
}

TEST_CASE("Rayleigh quotient for the TV functional") {
  auto rect = aniso::build_raster(AnalyticDomain::rectangle(2, 1), 1.0 / 32);
  const GridField one(rect, 1.0);
  // min{beta,1} P_F / |Omega| with P_F = 8, |Omega| = 2 under diag(4,1).
  CHECK(aniso::rayleigh_J(one, qdiag(), 3.0) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(aniso::rayleigh_J(one, qdiag(), 0.5) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(aniso::rayleigh_J(one, qdiag(), -2.0) ==
        doctest::Approx(-8.0).epsilon(1e-9));
  CHECK_THROWS_AS(aniso::rayleigh_J(GridField(rect, 0.0), euclid(), 0.0),
                  std::domain_error);

  // chi_E for an interior vertical strip at beta = 0: the functional
  // equals the set ratio exactly (faces and forward differences agree on
  // axis-aligned data).
  CellSet strip(rect);
  GridField chi(rect);
  for (int k = 0; k < rect->inside_count(); ++k) {
    const bool in = rect->cell_x(k) > -0.5 && rect->cell_x(k) < 0;
    strip.member[k] = in;
    chi.v[k] = in ? 1.0 : 0.0;
  }
  CHECK(aniso::rayleigh_J(chi, qdiag(), 0.0) ==
        doctest::Approx(aniso::ratio_R(strip, qdiag(), 0.0)).epsilon(1e-12));

  // chi_Omega on a rectangle: trace quadrature and shared faces are both
  // exact, so the two representations agree for any beta.
  const CellSet full(rect, true);
  for (double b : {-0.5, 0.7, 1.0, 3.0})
    CHECK(aniso::rayleigh_J(GridField(rect, 1.0), qdiag(), b) ==
          doctest::Approx(aniso::ratio_R(full, qdiag(), b)).epsilon(1e-12));

  // Distance cone on W_1: J = kappa / (kappa/3) = 3 for moderate beta
  // (the trace of the cone is O(h), scaled by min{beta,1}).
  for (const auto& F : {euclid(), qdiag(), wq25()}) {
    CAPTURE(F.describe());
    const auto cone = wulff_cone(F, 1.0 / 128);
    for (double b : {-0.5, 0.3, 1.0, 5.0})
      CHECK(aniso::rayleigh_J(cone, F, b) == doctest::Approx(3.0).epsilon(0.03));
  }
  // 1-homogeneity.
  const auto cone = wulff_cone(euclid(), 1.0 / 64);
  GridField s = cone;
  for (auto& x : s.v) x *= 42.0;
  CHECK(aniso::rayleigh_J(s, euclid(), 0.4) ==
        doctest::Approx(aniso::rayleigh_J(cone, euclid(), 0.4)).epsilon(1e-12));
}

TEST_CASE("coarea: TV equals the integral of level-set perimeters") {
  CHECK_THROWS_AS(
      aniso::coarea_decompose(GridField(square2x2(), 0.0), euclid(), 8),
      std::invalid_argument);

  // Indicator of an interior strip: single jump, both sides equal the
  // interior perimeter exactly.
  auto rect = aniso::build_raster(AnalyticDomain::rectangle(2, 1), 1.0 / 16);
  GridField chi(rect);
  CellSet strip(rect);
  for (int k = 0; k < rect->inside_count(); ++k) {
    const bool in = rect->cell_x(k) > -0.5 && rect->cell_x(k) < 0;
    chi.v[k] = in ? 1.0 : 0.0;
    strip.member[k] = in;
  }
  const double pint = aniso::perimeter_F(strip, qdiag()).interior;
  const auto cr = aniso::coarea_decompose(chi, qdiag(), 256);
  CHECK(cr.tv == doctest::Approx(pint).epsilon(1e-12));
  CHECK(cr.perimeter_integral == doctest::Approx(pint).epsilon(1e-12));
  CHECK(pint == doctest::Approx(4.0).epsilon(1e-12));  // 2 runs of F(e1)=2

  // Monotone smooth field: superlevels are straight strips, both values
  // equal (1-h) exactly and sit within 5% of the analytic value 1.
  auto sq = aniso::build_raster(AnalyticDomain::rectangle(1, 1), 1.0 / 64);
  GridField ux(sq);
  for (int k = 0; k < sq->inside_count(); ++k) ux.v[k] = sq->cell_x(k);
  const auto cx = aniso::coarea_decompose(ux, euclid(), 256);
  CHECK(cx.tv == doctest::Approx(1.0).epsilon(0.05));
  CHECK(cx.perimeter_integral == doctest::Approx(1.0).epsilon(0.05));
  CHECK(cx.tv == doctest::Approx(cx.perimeter_integral).epsilon(1e-12));

  // Distance cone: superlevels are concentric Wulff shapes; both values
  // approximate kappa and agree within 5%.
  for (const auto& F : {euclid(), qdiag()}) {
    CAPTURE(F.describe());
    const auto cone = wulff_cone(F, 1.0 / 128);
    const auto cc = aniso::coarea_decompose(cone, F, 256);
    const double kappa = aniso::wulff_unit_area(F);
    CHECK(cc.tv == doctest::Approx(kappa).epsilon(0.05));
    CHECK(cc.perimeter_integral == doctest::Approx(kappa).epsilon(0.05));
    CHECK(std::abs(cc.tv - cc.perimeter_integral) <= 0.05 * cc.tv);
  }

  // Constant field: zero on both sides.
  const auto cz = aniso::coarea_decompose(GridField(rect, 2.0), euclid(), 64);
  CHECK(cz.tv == 0.0);
  CHECK(cz.perimeter_integral == 0.0);
}
