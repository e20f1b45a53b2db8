#include "aniso/studies.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aniso {

double lambda_reference(const AnalyticDomain& dom, const FinslerNorm& F,
                        double beta, const StudyOptions& opts) {
  const std::vector<double>& hs = opts.lambda_h;
  if (hs.size() < 2)
    throw std::invalid_argument("reference ladder needs at least two spacings");
  for (size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0))
      throw std::invalid_argument("reference ladder spacings must be positive");
    if (i > 0 && !(hs[i] < hs[i - 1]))
      throw std::invalid_argument("reference ladder must decrease");
  }
  std::vector<double> v;
  v.reserve(hs.size());
  for (double h : hs)
    v.push_back(solve_Lambda(build_raster(dom, h), F, beta, opts.solver).value);
  // First-order model Lambda(h) = Lambda + C h on the two finest runs.
  const double h1 = hs[hs.size() - 2], h2 = hs.back();
  return (h1 * v.back() - h2 * v[v.size() - 2]) / (h1 - h2);
}

std::vector<SweepRow> gamma_sweep(const AnalyticDomain& dom,
                                  const FinslerNorm& F, double beta,
                                  const std::vector<double>& p_list,
                                  const StudyOptions& opts) {
  if (!(beta > -1)) throw std::invalid_argument("sweep needs beta > -1");
  if (p_list.empty()) throw std::invalid_argument("sweep needs a p list");
  for (size_t i = 0; i < p_list.size(); ++i) {
    if (!(p_list[i] > 1))
      throw std::invalid_argument("sweep exponents must stay above 1");
    if (i > 0 && !(p_list[i] < p_list[i - 1]))
      throw std::invalid_argument("sweep exponents must decrease toward 1");
  }

  const double Lam = lambda_reference(dom, F, beta, opts);
  const RasterPtr grid = build_raster(dom, opts.eigen_h);
  const bool radial = dom.family() == AnalyticDomain::Family::wulff &&
                      F.same_as(dom.shape_norm());

  std::vector<SweepRow> rows;
  rows.reserve(p_list.size());
  for (double p : p_list) {
    SweepRow row;
    row.p = p;
    row.Lambda = Lam;
    row.ok = true;
    try {
      const EigenResult r = solve_lambda_p(grid, F, p, beta, opts.solver);
      row.lambda_grid = r.lambda;
      if (!r.converged) {
        row.ok = false;
        row.note = "grid eigenvalue did not converge";
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.note = e.what();
    }
    if (radial) {
      try {
        const RadialResult s =
            solve_radial_shooting(F, dom.param(0), 2, p, beta);
        row.lambda_shooting = s.lambda;
        row.has_shooting = s.converged;
        if (!s.converged && row.note.empty())
          row.note = "radial shooting did not converge";
      } catch (const std::exception& e) {
        if (row.note.empty()) row.note = e.what();
      }
    }
    row.gap = (row.has_shooting ? row.lambda_shooting : row.lambda_grid) - Lam;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<IsoperimetricRow> isoperimetric_compare(
    const std::vector<AnalyticDomain>& family, const FinslerNorm& F,
    double beta, const StudyOptions& opts) {
  if (family.empty())
    throw std::invalid_argument("comparison needs the reference domain");
  if (family.front().family() != AnalyticDomain::Family::wulff)
    throw std::invalid_argument(
        "family must lead with the reference Wulff shape");
  const double area0 = family.front().area();
  for (const AnalyticDomain& d : family) {
    if (!(std::abs(d.area() - area0) <= 0.005 * area0))
      throw std::invalid_argument(
          "family areas must match the reference within 0.5%");
    if (beta < 0 && !d.is_smooth())
      throw std::invalid_argument(
          "comparison families must be C2 when beta < 0");
  }

  std::vector<IsoperimetricRow> rows;
  rows.reserve(family.size());
  double ref = 0;
  for (size_t i = 0; i < family.size(); ++i) {
    IsoperimetricRow row;
    row.domain = family[i].describe();
    row.Lambda = lambda_reference(family[i], F, beta, opts);
    if (i == 0) {
      ref = row.Lambda;
      row.verdict = "reference";
    } else if (beta == 0) {
      row.verdict = "vacuous";
    } else {
      const double tol = 0.02 * std::abs(ref);
      const bool pass =
          beta > 0 ? ref <= row.Lambda - tol : ref >= row.Lambda + tol;
      row.verdict = pass ? "pass" : "fail";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// Uniform draws with a fixed engine-to-double mapping, so corpora are
// reproducible independently of the standard library's distributions.
class Draw {
 public:
  explicit Draw(std::uint32_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * (rng_() * (1.0 / 4294967296.0));
  }

 private:
  std::mt19937 rng_;
};

}  // namespace

std::vector<TraceField> default_trace_corpus(RasterPtr grid,
                                             std::uint32_t seed) {
  const RasterDomain& g = *grid;
  const std::array<double, 2> c = g.analytic().center();
  const std::array<double, 2> ext = g.analytic().extent();
  const double emin = std::min(ext[0], ext[1]);
  Draw draw(seed);

  std::vector<TraceField> out;
  out.reserve(100);
  auto add = [&](const std::string& id, auto&& f) {
    GridField u(grid);
    for (int k = 0; k < g.inside_count(); ++k)
      u.v[k] = f(g.cell_x(k) - c[0], g.cell_y(k) - c[1]);
    out.push_back({id, std::move(u)});
  };
  char id[32];

  add("const_one", [](double, double) { return 1.0; });
  add("const_small", [](double, double) { return 0.37; });

  for (int i = 0; i < 10; ++i) {
    const double a = draw(-1, 1), bx = draw(-1, 1), by = draw(-1, 1);
    std::snprintf(id, sizeof id, "affine_%02d", i);
    add(id, [=](double x, double y) { return a + bx * x + by * y; });
  }

  for (int i = 0; i < 20; ++i) {
    const double cx = draw(-0.5, 0.5) * ext[0], cy = draw(-0.5, 0.5) * ext[1];
    const double w = draw(0.1, 0.5) * emin, amp = draw(0.5, 1.5);
    std::snprintf(id, sizeof id, "bump_%02d", i);
    add(id, [=](double x, double y) {
      const double q = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      return amp * std::exp(-q / (w * w));
    });
  }

  for (int i = 0; i < 48; ++i) {
    std::array<double, 5> amp{}, kx{}, ky{}, ph{};
    for (int m = 0; m < 5; ++m) {
      amp[m] = draw(-0.5, 0.5);
      kx[m] = draw(-3, 3) / emin;
      ky[m] = draw(-3, 3) / emin;
      ph[m] = draw(0, 6.283185307179586);
    }
    std::snprintf(id, sizeof id, "smooth_%02d", i);
    add(id, [=](double x, double y) {
      double s = 0;
      for (int m = 0; m < 5; ++m)
        s += amp[m] * std::cos(kx[m] * x + ky[m] * y + ph[m]);
      return s;
    });
  }

  for (int i = 0; i < 20; ++i) {
    const double cx = draw(-0.3, 0.3) * ext[0], cy = draw(-0.3, 0.3) * ext[1];
    const double r0 = draw(0.3, 0.9) * emin, d = draw(0.02, 0.1) * emin;
    std::snprintf(id, sizeof id, "tanh_%02d", i);
    add(id, [=](double x, double y) {
      const double r = std::hypot(x - cx, y - cy);
      return 0.5 * (1.0 + std::tanh((r0 - r) / d));
    });
  }

  return out;
}

std::vector<TraceRow> trace_check(const AnalyticDomain& dom,
                                  const FinslerNorm& F,
                                  const std::vector<TraceField>& corpus) {
  if (!dom.is_smooth())
    throw std::invalid_argument("trace check needs a C2 domain boundary");
  const double mu = curvature_mu(dom, F);
  const double c = 2.0 * 2.0 / mu;

  std::vector<TraceRow> rows;
  rows.reserve(corpus.size());
  for (const TraceField& f : corpus) {
    if (!f.u.grid || f.u.grid->analytic().describe() != dom.describe())
      throw std::invalid_argument(
          "corpus field was rasterized on a different domain");
    TraceRow r;
    r.id = f.id;
    r.lhs = trace_integral(f.u, F);
    r.rhs = total_variation_F(f.u, F) + c * f.u.norm1();
    r.margin = r.rhs - r.lhs;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace aniso
