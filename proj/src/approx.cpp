#include "aniso/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aniso {

namespace {

constexpr int kFieldSub = 4;   // sub-samples per cell edge when rasterizing
constexpr int kKernelSub = 8;  // sub-samples per cell edge for kernel weights

// Bilinear interpolation of cell values at a point, restricted to inside
// cells; falls back to the nearest inside cell of a small window when the
// four surrounding centers are all outside.
double sample_inside(const RasterDomain& g, const std::vector<double>& v,
                     double ox, double oy, double x, double y) {
  const double h = g.h();
  const double fx = (x - ox) / h - 0.5;
  const double fy = (y - oy) / h - 0.5;
  const int i0 = static_cast<int>(std::floor(fx));
  const int j0 = static_cast<int>(std::floor(fy));
  const double wx = fx - i0, wy = fy - j0;
  const double cw[4] = {(1 - wx) * (1 - wy), wx * (1 - wy), (1 - wx) * wy,
                        wx * wy};
  const int ci[4] = {i0, i0 + 1, i0, i0 + 1};
  const int cj[4] = {j0, j0, j0 + 1, j0 + 1};
  double acc = 0, tot = 0;
  for (int c = 0; c < 4; ++c) {
    const int k = g.cell_index(ci[c], cj[c]);
    if (k >= 0) {
      acc += cw[c] * v[k];
      tot += cw[c];
    }
  }
  if (tot > 0) return acc / tot;
  // All four corners outside: take the nearest inside cell in a widening
  // square window (the query point is inside the domain, so for any
  // reasonable raster a neighbor exists within a couple of cells).
  for (int r = 1; r <= 3; ++r) {
    double best = 0, bd = std::numeric_limits<double>::infinity();
    for (int dj = -r; dj <= r; ++dj)
      for (int di = -r; di <= r; ++di) {
        if (std::max(std::abs(di), std::abs(dj)) != r) continue;
        const int k = g.cell_index(i0 + di, j0 + dj);
        if (k < 0) continue;
        const double d = std::hypot(g.cell_x(k) - x, g.cell_y(k) - y);
        if (d < bd) {
          bd = d;
          best = v[k];
        }
      }
    if (bd < std::numeric_limits<double>::infinity()) return best;
  }
  return 0.0;
}

double origin_x(const RasterDomain& g) {
  return g.cell_x(0) - (g.cell(0)[0] + 0.5) * g.h();
}
double origin_y(const RasterDomain& g) {
  return g.cell_y(0) - (g.cell(0)[1] + 0.5) * g.h();
}

// Cell averages (kFieldSub^2 sub-samples) of the zero-extension of
// amp * u(center + (x - center)/(1 - tau)) on the target raster. With
// tau = 0, amp = 1 this is just u resampled.
std::vector<double> rasterize_pullback(const GridField& u,
                                       const RasterDomain& fine, double tau,
                                       double amp) {
  const RasterDomain& cg = *u.grid;
  const AnalyticDomain& dom = fine.analytic();
  const double cx = dom.center()[0], cy = dom.center()[1];
  const double ox = origin_x(cg), oy = origin_y(cg);
  const double hf = fine.h();
  const double inv = 1.0 / (1.0 - tau);
  std::vector<double> out(fine.inside_count(), 0.0);
  for (int k = 0; k < fine.inside_count(); ++k) {
    const double x0 = fine.cell_x(k) - 0.5 * hf;
    const double y0 = fine.cell_y(k) - 0.5 * hf;
    double acc = 0;
    for (int sj = 0; sj < kFieldSub; ++sj)
      for (int si = 0; si < kFieldSub; ++si) {
        const double x = x0 + (si + 0.5) * hf / kFieldSub;
        const double y = y0 + (sj + 0.5) * hf / kFieldSub;
        const double px = cx + (x - cx) * inv;
        const double py = cy + (y - cy) * inv;
        if (dom.contains(px, py))
          acc += sample_inside(cg, u.v, ox, oy, px, py);
      }
    out[k] = amp * acc / (kFieldSub * kFieldSub);
  }
  return out;
}

// Discrete bump kernel on the cell lattice: per-cell averages of
// exp(-1/(1 - |z|^2/eps^2)), normalized to unit sum; zero outside |z| < eps.
struct Kernel {
  int m = 0;  // offsets span [-m, m]^2
  std::vector<double> w;
  double at(int di, int dj) const { return w[(dj + m) * (2 * m + 1) + di + m]; }
};

Kernel build_kernel(double eps, double h) {
  Kernel ker;
  ker.m = static_cast<int>(std::ceil(eps / h)) + 1;
  const int n = 2 * ker.m + 1;
  ker.w.assign(static_cast<size_t>(n) * n, 0.0);
  double mass = 0;
  for (int dj = -ker.m; dj <= ker.m; ++dj)
    for (int di = -ker.m; di <= ker.m; ++di) {
      double acc = 0;
      for (int sj = 0; sj < kKernelSub; ++sj)
        for (int si = 0; si < kKernelSub; ++si) {
          const double zx = (di - 0.5 + (si + 0.5) / kKernelSub) * h;
          const double zy = (dj - 0.5 + (sj + 0.5) / kKernelSub) * h;
          const double q = (zx * zx + zy * zy) / (eps * eps);
          if (q < 1.0) acc += std::exp(-1.0 / (1.0 - q));
        }
      ker.w[(dj + ker.m) * n + di + ker.m] = acc;
      mass += acc;
    }
  for (double& x : ker.w) x /= mass;
  return ker;
}

}  // namespace

double star_clearance(const AnalyticDomain& dom) {
  const double cx = dom.center()[0], cy = dom.center()[1];
  double best = std::numeric_limits<double>::infinity();
  for (const BoundaryNode& n : dom.boundary_quadrature(2048))
    best = std::min(best, std::hypot(n.x - cx, n.y - cy));
  return best;
}

GridField shrink_mollify(const GridField& u, double tau, double eps) {
  if (!u.grid) throw std::invalid_argument("shrink_mollify: empty field");
  const AnalyticDomain& dom = u.grid->analytic();
  if (dom.family() == AnalyticDomain::Family::annulus)
    throw std::invalid_argument(
        "shrink_mollify: domain must be star-shaped about its center");
  if (!(tau > 0.0 && tau <= 0.2))
    throw std::invalid_argument("shrink_mollify: tau must lie in (0, 0.2]");
  const double rstar = star_clearance(dom);
  if (!(eps > 0.0 && eps < 0.5 * tau * rstar))
    throw std::invalid_argument(
        "shrink_mollify: mollifier radius must lie in (0, tau*clearance/2) "
        "or the support would touch the boundary");

  // The bump must span at least two cells to be resolved; refine the
  // lattice (power of two, at most 8x) when eps is smaller than that.
  const double h = u.grid->h();
  int refine = 1;
  while (refine < 8 && eps * refine < 2.0 * h) refine *= 2;
  RasterPtr fine =
      refine == 1 ? u.grid : build_raster(dom, h / refine);

  const double amp = 1.0 / (1.0 - tau);  // (1-tau)^{1-N} for N = 2
  const std::vector<double> tilde = rasterize_pullback(u, *fine, tau, amp);
  const Kernel ker = build_kernel(eps, fine->h());

  GridField out(fine);
  for (int k = 0; k < fine->inside_count(); ++k) {
    const auto [i, j] = fine->cell(k);
    double acc = 0;
    for (int dj = -ker.m; dj <= ker.m; ++dj)
      for (int di = -ker.m; di <= ker.m; ++di) {
        const double kw = ker.at(di, dj);
        if (kw == 0.0) continue;
        const int nb = fine->cell_index(i + di, j + dj);
        if (nb >= 0) acc += kw * tilde[nb];
      }
    out.v[k] = acc;
  }
  return out;
}

std::vector<ApproxRow> strict_convergence_report(
    const GridField& u, const FinslerNorm& F,
    const std::vector<std::array<double, 2>>& schedule) {
  if (!u.grid) throw std::invalid_argument("strict_convergence_report: empty field");
  for (size_t r = 1; r < schedule.size(); ++r)
    if (schedule[r][0] > schedule[r - 1][0])
      throw std::invalid_argument(
          "strict_convergence_report: schedule must be non-increasing in tau");

  std::vector<ApproxRow> rows;
  rows.reserve(schedule.size());
  for (const auto& [tau, eps] : schedule) {
    const GridField w = shrink_mollify(u, tau, eps);
    const RasterDomain& fg = *w.grid;
    const double hf = fg.h();

    // L1 distance to u, evaluated on the approximant's raster.
    double l1 = 0;
    if (w.grid == u.grid) {
      for (int k = 0; k < fg.inside_count(); ++k)
        l1 += std::abs(w.v[k] - u.v[k]);
    } else {
      const std::vector<double> uf = rasterize_pullback(u, fg, 0.0, 1.0);
      for (int k = 0; k < fg.inside_count(); ++k)
        l1 += std::abs(w.v[k] - uf[k]);
    }
    l1 *= hf * hf;

    // Minimum distance from the (exactly zero outside) support to the
    // boundary, measured at the support's exposed cells.
    double clearance = star_clearance(fg.analytic());
    for (int k = 0; k < fg.inside_count(); ++k) {
      if (w.v[k] == 0.0) continue;
      const bool exposed =
          (fg.east()[k] < 0 || w.v[fg.east()[k]] == 0.0) ||
          (fg.west()[k] < 0 || w.v[fg.west()[k]] == 0.0) ||
          (fg.north()[k] < 0 || w.v[fg.north()[k]] == 0.0) ||
          (fg.south()[k] < 0 || w.v[fg.south()[k]] == 0.0);
      if (!exposed) continue;
      const double x = fg.cell_x(k), y = fg.cell_y(k);
      for (const RasterDomain::TraceNode& tn : fg.trace_nodes())
        clearance =
            std::min(clearance, std::hypot(tn.node.x - x, tn.node.y - y));
    }

    rows.push_back(
        {tau, eps, l1, extended_variation(w, F), clearance});
  }
  return rows;
}

}  // namespace aniso
