#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aniso/finsler.hpp"

namespace aniso {

struct BoundaryNode {
  double x, y;    // point on the boundary
  double nx, ny;  // outward unit Euclidean normal
  double w;       // arc-length weight
};

// Area of the unit Wulff shape {polar(x) < 1} of a 2D norm.
double wulff_unit_area(const FinslerNorm& F);

struct WulffShape {
  std::array<double, 2> center{0, 0};
  double radius = 1;
  FinslerNorm norm = FinslerNorm::euclidean(2);

  bool contains(double x, double y) const {
    const double v[2] = {x - center[0], y - center[1]};
    return norm.polar(v) < radius;
  }
  double volume() const;
};

// Planar domains with exact normals: Wulff shapes, ellipses, axis rectangles,
// and Wulff annuli. Quadrature nodes carry (point, outward normal, weight).
class AnalyticDomain {
 public:
  enum class Family { wulff, ellipse, rectangle, annulus };

  static AnalyticDomain wulff(const FinslerNorm& F, double R,
                              std::array<double, 2> center = {0, 0});
  static AnalyticDomain ellipse(double a, double b,
                                std::array<double, 2> center = {0, 0});
  static AnalyticDomain rectangle(double width, double height,
                                  std::array<double, 2> center = {0, 0});
  static AnalyticDomain annulus(const FinslerNorm& F, double r, double R,
                                std::array<double, 2> center = {0, 0});

  Family family() const { return family_; }
  const std::array<double, 2>& center() const { return center_; }
  const FinslerNorm& shape_norm() const { return norm_; }
  double param(int i) const { return p_[i]; }  // wulff: R; ellipse: a,b; rect: w,h; annulus: r,R

  bool contains(double x, double y) const;
  double area() const;
  // Half-extent of the domain from its center along each axis.
  std::array<double, 2> extent() const;

  std::vector<BoundaryNode> boundary_quadrature(int nodes) const;
  // Smooth boundary point for parameter t in [0,1); used for local refinement.
  std::array<double, 2> boundary_point(double t) const;

  bool is_smooth() const { return family_ != Family::rectangle; }
  std::string describe() const;

 private:
  Family family_;
  std::array<double, 2> center_{0, 0};
  FinslerNorm norm_ = FinslerNorm::euclidean(2);
  std::array<double, 2> p_{0, 0};
  double unit_area_ = 0;  // cached wulff_unit_area for wulff/annulus
};

// Distance to the boundary measured by the polar of F. Exact for Wulff domains
// under their own norm, boundary-scan plus golden refinement otherwise.
// Throws std::domain_error for points outside the closed domain.
double anisotropic_distance(const WulffShape& W, double x, double y);
double anisotropic_distance(const AnalyticDomain& dom, const FinslerNorm& F,
                            double x, double y);

// mu = (uniform interior sphere radius) / (max curvature radius of the unit
// Wulff boundary); the anisotropic curvatures of the domain boundary are
// bounded by 1/mu. Supported: Wulff shape under its own norm (mu = R), disks
// and ellipses (including Wulff shapes of 2D quadratic norms) under any norm
// with finite Wulff curvature radius.
double curvature_mu(const AnalyticDomain& dom, const FinslerNorm& F);

// Cell-centered raster of an analytic domain. The lattice is padded by
// outside cells so neighbor windows never leave it; cell (i,j) has center
// origin + ((i+0.5)h, (j+0.5)h); a cell is inside iff its center is.
class RasterDomain {
 public:
  RasterDomain(const AnalyticDomain& dom, double h, int quadrature_nodes = 4096);

  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int inside_count() const { return static_cast<int>(cells_.size()); }
  const AnalyticDomain& analytic() const { return analytic_; }

  bool in_lattice(int i, int j) const {
    return i >= 0 && i < nx_ && j >= 0 && j < ny_;
  }
  bool inside(int i, int j) const {
    return in_lattice(i, j) && index_[j * nx_ + i] >= 0;
  }
  // Dense index of an inside cell, -1 otherwise.
  int cell_index(int i, int j) const {
    return in_lattice(i, j) ? index_[j * nx_ + i] : -1;
  }
  std::array<int, 2> cell(int k) const { return cells_[k]; }
  double cell_x(int k) const { return ox_ + (cells_[k][0] + 0.5) * h_; }
  double cell_y(int k) const { return oy_ + (cells_[k][1] + 0.5) * h_; }
  double area() const { return inside_count() * h_ * h_; }

  // Dense neighbor indices (-1 when the neighbor is outside).
  const std::vector<std::int32_t>& east() const { return east_; }
  const std::vector<std::int32_t>& north() const { return north_; }
  const std::vector<std::int32_t>& west() const { return west_; }
  const std::vector<std::int32_t>& south() const { return south_; }

  // dir: 0 = +x, 1 = +y, 2 = -x, 3 = -y; every face separates one inside
  // cell from one outside cell and carries measure h.
  struct BoundaryFace {
    std::int32_t cell;
    std::int8_t dir;
  };
  const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }

  // Analytic quadrature nodes paired with their nearest inside cell.
  struct TraceNode {
    BoundaryNode node;
    std::int32_t cell;
  };
  const std::vector<TraceNode>& trace_nodes() const { return trace_; }

 private:
  AnalyticDomain analytic_;
  double h_, ox_, oy_;
  int nx_, ny_;
  std::vector<std::int32_t> index_;
  std::vector<std::array<int, 2>> cells_;
  std::vector<std::int32_t> east_, north_, west_, south_;
  std::vector<BoundaryFace> faces_;
  std::vector<TraceNode> trace_;
};

using RasterPtr = std::shared_ptr<const RasterDomain>;

RasterPtr build_raster(const AnalyticDomain& dom, double h,
                       int quadrature_nodes = 4096);

struct TraceSample {
  BoundaryNode node;
  std::int32_t cell;
  double u;
};

// Boundary samples u(y-) taken from the nearest inside cell of each
// quadrature node; `values` indexed by dense cell.
std::vector<TraceSample> boundary_trace_samples(const RasterDomain& grid,
                                                const std::vector<double>& values);

// Per-cell aggregated boundary weight: omega_c = sum over trace nodes mapped
// to c of F(nu) * w. Integrals of g(u)F(nu) over the boundary reduce to
// sum_c g(u_c) omega_c.
std::vector<double> cell_boundary_weights(const RasterDomain& grid,
                                          const FinslerNorm& F);

}  // namespace aniso
