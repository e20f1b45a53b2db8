#include "aniso/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aniso/util.hpp"

namespace aniso {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kLatticePad = 4;
constexpr int kMaxCellsPerAxis = 6144;

void require_2d(const FinslerNorm& F) {
  if (F.dim() != 2)
    throw std::invalid_argument("planar domains require a 2D norm");
}

// Point on the unit Wulff boundary in direction theta, plus the arc-length
// speed |d p / d theta| and the outward unit normal.
struct WulffPoint {
  double x, y, speed, nx, ny;
};

WulffPoint wulff_boundary(const FinslerNorm& F, double theta) {
  const double u[2] = {std::cos(theta), std::sin(theta)};
  const double up[2] = {-u[1], u[0]};
  const double fo = F.polar(u);
  double g[2];
  F.polar_gradient(u, g);
  const double gu = g[0] * up[0] + g[1] * up[1];
  WulffPoint p;
  p.x = u[0] / fo;
  p.y = u[1] / fo;
  const double tx = (up[0] * fo - u[0] * gu) / (fo * fo);
  const double ty = (up[1] * fo - u[1] * gu) / (fo * fo);
  p.speed = std::hypot(tx, ty);
  const double gn = std::hypot(g[0], g[1]);
  p.nx = g[0] / gn;
  p.ny = g[1] / gn;
  return p;
}

double wulff_half_extent(const FinslerNorm& F, int axis) {
  double ext = 0;
  for (int k = 0; k < 8192; ++k) {
    const WulffPoint p = wulff_boundary(F, kTwoPi * k / 8192);
    ext = std::max(ext, std::abs(axis == 0 ? p.x : p.y));
  }
  return ext;
}

}  // namespace

double wulff_unit_area(const FinslerNorm& F) {
  require_2d(F);
  const int n = 1 << 14;
  double area = 0;
  for (int k = 0; k < n; ++k) {
    const double theta = kTwoPi * (k + 0.5) / n;
    const double u[2] = {std::cos(theta), std::sin(theta)};
    const double fo = F.polar(u);
    // Green's theorem with r(theta) = 1/polar: area = 1/2 int r^2 dtheta.
    area += 0.5 / (fo * fo);
  }
  return area * kTwoPi / n;
}

double WulffShape::volume() const {
  return wulff_unit_area(norm) * radius * radius;
}

AnalyticDomain AnalyticDomain::wulff(const FinslerNorm& F, double R,
                                     std::array<double, 2> center) {
  require_2d(F);
  if (!(R > 0)) throw std::invalid_argument("Wulff radius must be positive");
  AnalyticDomain d;
  d.family_ = Family::wulff;
  d.center_ = center;
  d.norm_ = F;
  d.p_ = {R, 0};
  d.unit_area_ = wulff_unit_area(F);
  return d;
}

AnalyticDomain AnalyticDomain::ellipse(double a, double b,
                                       std::array<double, 2> center) {
  if (!(a > 0) || !(b > 0))
    throw std::invalid_argument("ellipse semi-axes must be positive");
  AnalyticDomain d;
  d.family_ = Family::ellipse;
  d.center_ = center;
  d.p_ = {a, b};
  return d;
}

AnalyticDomain AnalyticDomain::rectangle(double width, double height,
                                         std::array<double, 2> center) {
  if (!(width > 0) || !(height > 0))
    throw std::invalid_argument("rectangle sides must be positive");
  AnalyticDomain d;
  d.family_ = Family::rectangle;
  d.center_ = center;
  d.p_ = {width, height};
  return d;
}

AnalyticDomain AnalyticDomain::annulus(const FinslerNorm& F, double r, double R,
                                       std::array<double, 2> center) {
  require_2d(F);
  if (!(0 < r) || !(r < R))
    throw std::invalid_argument("annulus needs 0 < r < R");
  AnalyticDomain d;
  d.family_ = Family::annulus;
  d.center_ = center;
  d.norm_ = F;
  d.p_ = {r, R};
  d.unit_area_ = wulff_unit_area(F);
  return d;
}

bool AnalyticDomain::contains(double x, double y) const {
  const double dx = x - center_[0], dy = y - center_[1];
  switch (family_) {
    case Family::wulff: {
      const double v[2] = {dx, dy};
      return norm_.polar(v) < p_[0];
    }
    case Family::ellipse:
      return sqr(dx / p_[0]) + sqr(dy / p_[1]) < 1.0;
    case Family::rectangle:
      return std::abs(dx) < 0.5 * p_[0] && std::abs(dy) < 0.5 * p_[1];
    case Family::annulus: {
      const double v[2] = {dx, dy};
      const double fo = norm_.polar(v);
      return fo > p_[0] && fo < p_[1];
    }
  }
  return false;
}

double AnalyticDomain::area() const {
  switch (family_) {
    case Family::wulff:
      return unit_area_ * sqr(p_[0]);
    case Family::ellipse:
      return std::acos(-1.0) * p_[0] * p_[1];
    case Family::rectangle:
      return p_[0] * p_[1];
    case Family::annulus:
      return unit_area_ * (sqr(p_[1]) - sqr(p_[0]));
  }
  return 0;
}

std::array<double, 2> AnalyticDomain::extent() const {
  switch (family_) {
    case Family::wulff:
      return {p_[0] * wulff_half_extent(norm_, 0),
              p_[0] * wulff_half_extent(norm_, 1)};
    case Family::ellipse:
      return {p_[0], p_[1]};
    case Family::rectangle:
      return {0.5 * p_[0], 0.5 * p_[1]};
    case Family::annulus:
      return {p_[1] * wulff_half_extent(norm_, 0),
              p_[1] * wulff_half_extent(norm_, 1)};
  }
  return {0, 0};
}

std::vector<BoundaryNode> AnalyticDomain::boundary_quadrature(int nodes) const {
  if (nodes < 8) throw std::invalid_argument("need at least 8 quadrature nodes");
  std::vector<BoundaryNode> out;
  out.reserve(nodes);
  switch (family_) {
    case Family::wulff: {
      const double R = p_[0];
      for (int k = 0; k < nodes; ++k) {
        const double theta = kTwoPi * (k + 0.5) / nodes;
        const WulffPoint p = wulff_boundary(norm_, theta);
        out.push_back({center_[0] + R * p.x, center_[1] + R * p.y, p.nx, p.ny,
                       R * p.speed * kTwoPi / nodes});
      }
      return out;
    }
    case Family::ellipse: {
      const double a = p_[0], b = p_[1];
      for (int k = 0; k < nodes; ++k) {
        const double t = kTwoPi * (k + 0.5) / nodes;
        const double c = std::cos(t), s = std::sin(t);
        const double speed = std::hypot(a * s, b * c);
        const double nn = std::hypot(c / a, s / b);
        out.push_back({center_[0] + a * c, center_[1] + b * s, (c / a) / nn,
                       (s / b) / nn, speed * kTwoPi / nodes});
      }
      return out;
    }
    case Family::rectangle: {
      const double w = p_[0], h = p_[1];
      const double per = 2 * (w + h);
      const double sx = center_[0] - 0.5 * w, sy = center_[1] - 0.5 * h;
      struct Side {
        double x0, y0, dx, dy, len, nx, ny;
      };
      const Side sides[4] = {
          {sx, sy, 1, 0, w, 0, -1},          // bottom
          {sx + w, sy, 0, 1, h, 1, 0},       // right
          {sx + w, sy + h, -1, 0, w, 0, 1},  // top
          {sx, sy + h, 0, -1, h, -1, 0},     // left
      };
      for (const Side& s : sides) {
        const int m = std::max(1, static_cast<int>(std::llround(nodes * s.len / per)));
        const double step = s.len / m;
        for (int k = 0; k < m; ++k) {
          const double d = (k + 0.5) * step;
          out.push_back({s.x0 + s.dx * d, s.y0 + s.dy * d, s.nx, s.ny, step});
        }
      }
      return out;
    }
    case Family::annulus: {
      const double r = p_[0], R = p_[1];
      const int n_out = std::max(8, static_cast<int>(std::llround(nodes * R / (r + R))));
      const int n_in = std::max(8, nodes - n_out);
      for (int k = 0; k < n_out; ++k) {
        const double theta = kTwoPi * (k + 0.5) / n_out;
        const WulffPoint p = wulff_boundary(norm_, theta);
        out.push_back({center_[0] + R * p.x, center_[1] + R * p.y, p.nx, p.ny,
                       R * p.speed * kTwoPi / n_out});
      }
      for (int k = 0; k < n_in; ++k) {
        const double theta = kTwoPi * (k + 0.5) / n_in;
        const WulffPoint p = wulff_boundary(norm_, theta);
        out.push_back({center_[0] + r * p.x, center_[1] + r * p.y, -p.nx, -p.ny,
                       r * p.speed * kTwoPi / n_in});
      }
      return out;
    }
  }
  return out;
}

std::array<double, 2> AnalyticDomain::boundary_point(double t) const {
  t -= std::floor(t);
  switch (family_) {
    case Family::wulff: {
      const WulffPoint p = wulff_boundary(norm_, kTwoPi * t);
      return {center_[0] + p_[0] * p.x, center_[1] + p_[0] * p.y};
    }
    case Family::ellipse:
      return {center_[0] + p_[0] * std::cos(kTwoPi * t),
              center_[1] + p_[1] * std::sin(kTwoPi * t)};
    case Family::rectangle: {
      const double w = p_[0], h = p_[1];
      double s = t * 2 * (w + h);
      double x = center_[0] - 0.5 * w, y = center_[1] - 0.5 * h;
      if (s < w) return {x + s, y};
      s -= w;
      if (s < h) return {x + w, y + s};
      s -= h;
      if (s < w) return {x + w - s, y + h};
      s -= w;
      return {x, y + h - s};
    }
    case Family::annulus: {
      const bool outer = t < 0.5;
      const double rad = outer ? p_[1] : p_[0];
      const WulffPoint p = wulff_boundary(norm_, kTwoPi * (outer ? 2 * t : 2 * (t - 0.5)));
      return {center_[0] + rad * p.x, center_[1] + rad * p.y};
    }
  }
  return center_;
}

std::string AnalyticDomain::describe() const {
  char buf[96];
  switch (family_) {
    case Family::wulff:
      std::snprintf(buf, sizeof buf, "wulff%.6g", p_[0]);
      break;
    case Family::ellipse:
      std::snprintf(buf, sizeof buf, "ellipse%.6g-%.6g", p_[0], p_[1]);
      break;
    case Family::rectangle:
      std::snprintf(buf, sizeof buf, "rect%.6g-%.6g", p_[0], p_[1]);
      break;
    case Family::annulus:
      std::snprintf(buf, sizeof buf, "annulus%.6g-%.6g", p_[0], p_[1]);
      break;
  }
  return buf;
}

double anisotropic_distance(const WulffShape& W, double x, double y) {
  const double v[2] = {x - W.center[0], y - W.center[1]};
  const double fo = W.norm.polar(v);
  if (fo > W.radius)
    throw std::domain_error("point lies outside the Wulff shape");
  return W.radius - fo;
}

double anisotropic_distance(const AnalyticDomain& dom, const FinslerNorm& F,
                            double x, double y) {
  const double v[2] = {x - dom.center()[0], y - dom.center()[1]};
  const bool on_closure = dom.contains(x, y) || F.polar(v) == 0;
  if (dom.family() == AnalyticDomain::Family::wulff &&
      F.same_as(dom.shape_norm())) {
    if (!on_closure && dom.shape_norm().polar(v) > dom.param(0))
      throw std::domain_error("point lies outside the domain");
    return dom.param(0) - dom.shape_norm().polar(v);
  }
  if (!dom.contains(x, y))
    throw std::domain_error("point lies outside the domain");
  auto dist_at = [&](double t) {
    const auto p = dom.boundary_point(t);
    const double d[2] = {x - p[0], y - p[1]};
    return F.polar(d);
  };
  const int n = 4096;
  // The annulus parametrization switches curves at t = 0.5; refine per curve.
  const bool two_curves = dom.family() == AnalyticDomain::Family::annulus;
  double best = std::numeric_limits<double>::infinity();
  const int segments = two_curves ? 2 : 1;
  for (int seg = 0; seg < segments; ++seg) {
    const double lo = seg / static_cast<double>(segments);
    const double hi = (seg + 1) / static_cast<double>(segments);
    int kb = 0;
    double vb = std::numeric_limits<double>::infinity();
    const int m = n / segments;
    for (int k = 0; k < m; ++k) {
      const double val = dist_at(lo + (hi - lo) * (k + 0.5) / m);
      if (val < vb) {
        vb = val;
        kb = k;
      }
    }
    const double span = (hi - lo) / m;
    const double tl = std::max(lo, lo + (kb - 1.0) * span);
    const double th = std::min(hi, lo + (kb + 2.0) * span);
    const double t = golden_min(dist_at, tl, th, 1e-12);
    best = std::min(best, std::min(vb, dist_at(t)));
  }
  return best;
}

double curvature_mu(const AnalyticDomain& dom, const FinslerNorm& F) {
  require_2d(F);
  auto from_interior_radius = [&](double r_int) {
    const double rw = F.wulff_curvature_radius();
    if (std::isinf(rw))
      throw std::invalid_argument(
          "curvature bound unavailable: the norm's Wulff boundary has "
          "unbounded curvature radius");
    return r_int / rw;
  };
  switch (dom.family()) {
    case AnalyticDomain::Family::wulff: {
      if (F.same_as(dom.shape_norm())) return dom.param(0);
      const FinslerNorm& G = dom.shape_norm();
      if (G.kind() == FinslerNorm::Kind::euclidean)
        return from_interior_radius(dom.param(0));
      // Wulff shapes of quadratic norms are ellipses with semi-axes
      // R * sqrt(eigenvalues); min curvature radius = b^2/a.
      if (G.kind() == FinslerNorm::Kind::quadratic ||
          (G.kind() == FinslerNorm::Kind::weighted_q && G.q_exponent() == 2.0)) {
        const double a = dom.param(0) * G.upper_bound();
        const double b = dom.param(0) * G.lower_bound();
        return from_interior_radius(b * b / a);
      }
      throw std::invalid_argument(
          "curvature bound unsupported for this domain/norm pair");
    }
    case AnalyticDomain::Family::ellipse: {
      const double a = std::max(dom.param(0), dom.param(1));
      const double b = std::min(dom.param(0), dom.param(1));
      return from_interior_radius(b * b / a);
    }
    case AnalyticDomain::Family::rectangle:
    case AnalyticDomain::Family::annulus:
      throw std::invalid_argument(
          "curvature bound unsupported: domain boundary is not C2-compatible "
          "with a uniform interior sphere bound");
  }
  throw std::invalid_argument("unknown domain family");
}

RasterDomain::RasterDomain(const AnalyticDomain& dom, double h,
                           int quadrature_nodes)
    : analytic_(dom), h_(h) {
  if (!(h > 0)) throw std::invalid_argument("raster spacing must be positive");
  const auto ext = dom.extent();
  const int half_x = static_cast<int>(std::ceil(ext[0] / h)) + kLatticePad;
  const int half_y = static_cast<int>(std::ceil(ext[1] / h)) + kLatticePad;
  if (2 * (half_x - kLatticePad) > kMaxCellsPerAxis ||
      2 * (half_y - kLatticePad) > kMaxCellsPerAxis)
    throw std::length_error("raster exceeds 6144 cells per axis");
  nx_ = 2 * half_x;
  ny_ = 2 * half_y;
  ox_ = dom.center()[0] - half_x * h;
  oy_ = dom.center()[1] - half_y * h;

  index_.assign(static_cast<size_t>(nx_) * ny_, -1);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const double cx = ox_ + (i + 0.5) * h, cy = oy_ + (j + 0.5) * h;
      if (dom.contains(cx, cy)) {
        index_[j * nx_ + i] = static_cast<std::int32_t>(cells_.size());
        cells_.push_back({i, j});
      }
    }
  if (cells_.empty())
    throw std::invalid_argument("raster contains no inside cells");

  const int n = inside_count();
  east_.resize(n);
  north_.resize(n);
  west_.resize(n);
  south_.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto [i, j] = cells_[k];
    east_[k] = cell_index(i + 1, j);
    north_[k] = cell_index(i, j + 1);
    west_[k] = cell_index(i - 1, j);
    south_[k] = cell_index(i, j - 1);
    if (east_[k] < 0) faces_.push_back({k, 0});
    if (north_[k] < 0) faces_.push_back({k, 1});
    if (west_[k] < 0) faces_.push_back({k, 2});
    if (south_[k] < 0) faces_.push_back({k, 3});
  }

  const auto nodes = dom.boundary_quadrature(quadrature_nodes);
  trace_.reserve(nodes.size());
  const double reach = 2.0 * h * std::sqrt(2.0);
  for (const auto& nd : nodes) {
    const int ci = static_cast<int>(std::floor((nd.x - ox_) / h));
    const int cj = static_cast<int>(std::floor((nd.y - oy_) / h));
    std::int32_t best = -1;
    double best_d = reach * reach;
    for (int j = cj - 4; j <= cj + 4; ++j)
      for (int i = ci - 4; i <= ci + 4; ++i) {
        const std::int32_t c = cell_index(i, j);
        if (c < 0) continue;
        const double d = sqr(ox_ + (i + 0.5) * h - nd.x) +
                         sqr(oy_ + (j + 0.5) * h - nd.y);
        if (d < best_d - 1e-15 * h * h ||
            (std::abs(d - best_d) <= 1e-15 * h * h && c < best)) {
          best_d = d;
          best = c;
        }
      }
    trace_.push_back({nd, best});
  }
}

RasterPtr build_raster(const AnalyticDomain& dom, double h, int quadrature_nodes) {
  return std::make_shared<RasterDomain>(dom, h, quadrature_nodes);
}

std::vector<TraceSample> boundary_trace_samples(const RasterDomain& grid,
                                                const std::vector<double>& values) {
  if (values.size() != static_cast<size_t>(grid.inside_count()))
    throw std::invalid_argument("field size does not match the raster");
  std::vector<TraceSample> out;
  out.reserve(grid.trace_nodes().size());
  for (const auto& t : grid.trace_nodes()) {
    if (t.cell < 0)
      throw std::runtime_error(
          "boundary trace undefined: no inside cell within reach of a "
          "quadrature node (grid too coarse)");
    out.push_back({t.node, t.cell, values[t.cell]});
  }
  return out;
}

std::vector<double> cell_boundary_weights(const RasterDomain& grid,
                                          const FinslerNorm& F) {
  std::vector<double> w(grid.inside_count(), 0.0);
  for (const auto& t : grid.trace_nodes()) {
    if (t.cell < 0)
      throw std::runtime_error(
          "boundary trace undefined: no inside cell within reach of a "
          "quadrature node (grid too coarse)");
    w[t.cell] += F.value2(t.node.nx, t.node.ny) * t.node.w;
  }
  return w;
}

}  // namespace aniso
