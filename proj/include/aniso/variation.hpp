#pragma once

#include <cstdint>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"

namespace aniso {

// Scalar field with one value per inside cell of a raster.
struct GridField {
  RasterPtr grid;
  std::vector<double> v;

  GridField() = default;
  GridField(RasterPtr g, double fill = 0.0)
      : grid(std::move(g)), v(grid->inside_count(), fill) {}

  // Integral of |u|^p over the raster (sum |u|^p h^N).
  double mass_p(double p) const;
  double norm1() const { return mass_p(1.0); }
};

// Subset of the inside cells of a raster.
struct CellSet {
  RasterPtr grid;
  std::vector<std::uint8_t> member;

  CellSet() = default;
  explicit CellSet(RasterPtr g, bool full = false)
      : grid(std::move(g)),
        member(grid->inside_count(), full ? 1 : 0) {}

  int count() const;
  double volume() const { return count() * grid->h() * grid->h(); }
};

CellSet superlevel(const GridField& u, double t);

// Weight of one face of the set boundary (cell inside the set, the dir
// neighbor not). The face measure h is corrected by a local interface
// slope recovered from column heights of the membership bitmap, so sums
// of weights converge to the anisotropic perimeter (integral of F of the
// true normal) instead of the axis-aligned staircase value. Exact on
// straight interfaces of slope 0 or 1; first-order consistent on smooth
// ones. Rows/columns of the height stencil are used only where the
// straddling cell pair meets the domain, so the domain's own staircase
// never corrupts the slope.
double face_weight(const RasterDomain& g, const FinslerNorm& F,
                   const std::vector<std::uint8_t>& member, int cell, int dir);

// Per-cell weight of the domain boundary owned by each cell: the
// slope-corrected weights of the cell's raster boundary faces (under the
// full-domain bitmap, since the shared boundary always follows the domain
// wall), rescaled by one global factor so that their total equals the
// analytic boundary integral of F(nu). Totals are then quadrature-exact
// while local magnitudes stay consistent with face_weight, so set
// optimization cannot play the boundary term against interior interfaces.
// Memoized per (raster, norm); the memo is not synchronized, so concurrent
// first calls on the same raster are not supported.
const std::vector<double>& shared_boundary_weights(const RasterDomain& g,
                                                   const FinslerNorm& F);

// Interior TV: sum of F(forward difference) h^N; differences across the
// domain boundary are zero (boundary mass is carried by the trace term).
double total_variation_F(const GridField& u, const FinslerNorm& F);

// Boundary trace integral of |u|^p F(nu) by analytic quadrature; cell
// values are read at the inside cell each quadrature node maps to.
double trace_integral(const GridField& u, const FinslerNorm& F, double p = 1.0);

// TV of the zero-extension to all of the plane: interior TV plus the
// boundary trace integral of |u| F(nu) from analytic quadrature.
double extended_variation(const GridField& u, const FinslerNorm& F);

struct PerimeterF {
  double interior;  // interface between the set and its complement inside
  double shared;    // portion of the analytic domain boundary owned by the set
};

// Anisotropic perimeter of a cell set, split into the part inside the
// domain and the part shared with the domain boundary. The interior part
// sums slope-corrected face weights; the shared part charges each member
// cell its shared_boundary_weights entry, so the full set carries exactly
// the analytic boundary integral of F(nu). This is the one code path used
// by both the set-ratio solver and the brute-force enumerator.
PerimeterF perimeter_F(const CellSet& E, const FinslerNorm& F);

// (interior + min{1,beta} shared) / |E|.
double ratio_R(const CellSet& E, const FinslerNorm& F, double beta);

// (sum F(D+ u)^p h^N + beta * trace integral of |u|^p F(nu)) / sum |u|^p h^N.
double rayleigh_Jp(const GridField& u, const FinslerNorm& F, double p,
                   double beta);

// (TV_F(u) + min{beta,1} * trace integral of |u| F(nu)) / ||u||_1.
double rayleigh_J(const GridField& u, const FinslerNorm& F, double beta);

struct CoareaResult {
  double tv;                  // total_variation_F(u)
  double perimeter_integral;  // midpoint integral over t of interior perimeter
};

// Coarea linkage: TV versus the level-set perimeter integral.
CoareaResult coarea_decompose(const GridField& u, const FinslerNorm& F,
                              int levels = 256);

}  // namespace aniso
