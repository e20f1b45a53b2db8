#include "aniso/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "aniso/util.hpp"

namespace aniso {

namespace {

// Cyclic Jacobi eigenvalues of a small symmetric matrix (row-major copy).
std::vector<double> sym_eigenvalues(int n, std::vector<double> a) {
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += sqr(at(i, j));
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> sym_inverse(int n, std::vector<double> a) {
  std::vector<double> inv(n * n, 0.0);
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300)
      throw std::invalid_argument("quadratic form matrix is singular");
    if (piv != col)
      for (int k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    const double d = a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] /= d;
      inv[col * n + k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col];
      if (f == 0) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  // Symmetrize away elimination round-off.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = 0.5 * (inv[i * n + j] + inv[j * n + i]);
      inv[i * n + j] = inv[j * n + i] = m;
    }
  return inv;
}

// Critical values of a weighted q-norm on the Euclidean sphere. Lagrange
// stationarity forces |x_i| proportional to w_i^(-1/(q-2)) on the support set,
// giving F = (sum_{i in S} w_i^(-2/(q-2)))^(-(q-2)/(2q)) per support S.
void weighted_q_bounds(double q, const std::vector<double>& w, double& lo,
                       double& hi) {
  const int n = static_cast<int>(w.size());
  lo = std::numeric_limits<double>::infinity();
  hi = 0.0;
  if (std::abs(q - 2.0) < 1e-14) {
    for (double wi : w) {
      lo = std::min(lo, std::sqrt(wi));
      hi = std::max(hi, std::sqrt(wi));
    }
    return;
  }
  const double e = -2.0 / (q - 2.0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s += std::pow(w[i], e);
    const double crit = std::pow(s, -(q - 2.0) / (2.0 * q));
    lo = std::min(lo, crit);
    hi = std::max(hi, crit);
  }
}

}  // namespace

FinslerNorm FinslerNorm::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("norm dimension must be >= 1");
  FinslerNorm f;
  f.kind_ = Kind::euclidean;
  f.dim_ = dim;
  f.finish_metadata();
  return f;
}

FinslerNorm FinslerNorm::weighted_q(double q, std::vector<double> weights) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw std::invalid_argument("weighted q-norm needs q in (1, inf)");
  if (weights.empty() || weights.size() > 16)
    throw std::invalid_argument("weighted q-norm supports 1..16 components");
  for (double w : weights)
    if (!(w > 0) || !std::isfinite(w))
      throw std::invalid_argument("weights must be positive and finite");
  FinslerNorm f;
  f.kind_ = Kind::weighted_q;
  f.dim_ = static_cast<int>(weights.size());
  f.q_ = q;
  f.qdual_ = q / (q - 1.0);
  f.w_ = std::move(weights);
  f.wdual_.resize(f.w_.size());
  for (size_t i = 0; i < f.w_.size(); ++i)
    f.wdual_[i] = std::pow(f.w_[i], 1.0 - f.qdual_);
  f.finish_metadata();
  return f;
}

FinslerNorm FinslerNorm::quadratic(int dim, std::vector<double> row_major) {
  if (dim < 1 || row_major.size() != static_cast<size_t>(dim) * dim)
    throw std::invalid_argument("quadratic form needs a dim x dim matrix");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const double d = std::abs(row_major[i * dim + j] - row_major[j * dim + i]);
      const double s = std::abs(row_major[i * dim + j]) + std::abs(row_major[j * dim + i]);
      if (d > 1e-12 * std::max(1.0, s))
        throw std::invalid_argument("quadratic form matrix must be symmetric");
    }
  FinslerNorm f;
  f.kind_ = Kind::quadratic;
  f.dim_ = dim;
  f.A_ = std::move(row_major);
  const auto ev = sym_eigenvalues(dim, f.A_);
  if (ev.front() <= 0)
    throw std::invalid_argument("quadratic form matrix must be positive definite");
  f.Ainv_ = sym_inverse(dim, f.A_);
  f.finish_metadata();
  return f;
}

void FinslerNorm::finish_metadata() {
  switch (kind_) {
    case Kind::euclidean:
      a_ = b_ = 1.0;
      rw_ = 1.0;
      break;
    case Kind::weighted_q: {
      weighted_q_bounds(q_, w_, a_, b_);
      if (std::abs(q_ - 2.0) < 1e-14) {
        // Diagonal quadratic form: Wulff ellipsoid semi-axes sqrt(w_i).
        const double smax = std::sqrt(*std::max_element(w_.begin(), w_.end()));
        const double smin = std::sqrt(*std::min_element(w_.begin(), w_.end()));
        rw_ = sqr(smax) / smin;
      } else {
        rw_ = std::numeric_limits<double>::infinity();
      }
      break;
    }
    case Kind::quadratic: {
      const auto ev = sym_eigenvalues(dim_, A_);
      a_ = std::sqrt(ev.front());
      b_ = std::sqrt(ev.back());
      rw_ = ev.back() / std::sqrt(ev.front());  // a_max^2 / a_min
      break;
    }
  }
}

double FinslerNorm::value(std::span<const double> x) const {
  switch (kind_) {
    case Kind::euclidean: {
      double s = 0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case Kind::weighted_q: {
      double s = 0;
      for (int i = 0; i < dim_; ++i) s += w_[i] * std::pow(std::abs(x[i]), q_);
      return std::pow(s, 1.0 / q_);
    }
    case Kind::quadratic: {
      double s = 0;
      for (int i = 0; i < dim_; ++i) {
        double r = 0;
        for (int j = 0; j < dim_; ++j) r += A_[i * dim_ + j] * x[j];
        s += x[i] * r;
      }
      return std::sqrt(std::max(0.0, s));
    }
  }
  return 0;
}

double FinslerNorm::polar(std::span<const double> x) const {
  switch (kind_) {
    case Kind::euclidean: {
      double s = 0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case Kind::weighted_q: {
      double s = 0;
      for (int i = 0; i < dim_; ++i)
        s += wdual_[i] * std::pow(std::abs(x[i]), qdual_);
      return std::pow(s, 1.0 / qdual_);
    }
    case Kind::quadratic: {
      double s = 0;
      for (int i = 0; i < dim_; ++i) {
        double r = 0;
        for (int j = 0; j < dim_; ++j) r += Ainv_[i * dim_ + j] * x[j];
        s += x[i] * r;
      }
      return std::sqrt(std::max(0.0, s));
    }
  }
  return 0;
}

void FinslerNorm::gradient(std::span<const double> x, std::span<double> out) const {
  double n2 = 0;
  for (int i = 0; i < dim_; ++i) n2 += x[i] * x[i];
  if (n2 == 0.0) throw std::domain_error("norm gradient undefined at the origin");
  switch (kind_) {
    case Kind::euclidean: {
      const double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < dim_; ++i) out[i] = x[i] * inv;
      return;
    }
    case Kind::weighted_q: {
      const double f = value(x);
      const double scale = std::pow(f, 1.0 - q_);
      for (int i = 0; i < dim_; ++i)
        out[i] = scale * w_[i] * sgnpow(x[i], q_ - 1.0);
      return;
    }
    case Kind::quadratic: {
      const double f = value(x);
      for (int i = 0; i < dim_; ++i) {
        double r = 0;
        for (int j = 0; j < dim_; ++j) r += A_[i * dim_ + j] * x[j];
        out[i] = r / f;
      }
      return;
    }
  }
}

void FinslerNorm::polar_gradient(std::span<const double> x, std::span<double> out) const {
  double n2 = 0;
  for (int i = 0; i < dim_; ++i) n2 += x[i] * x[i];
  if (n2 == 0.0) throw std::domain_error("norm gradient undefined at the origin");
  switch (kind_) {
    case Kind::euclidean: {
      const double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < dim_; ++i) out[i] = x[i] * inv;
      return;
    }
    case Kind::weighted_q: {
      const double f = polar(x);
      const double scale = std::pow(f, 1.0 - qdual_);
      for (int i = 0; i < dim_; ++i)
        out[i] = scale * wdual_[i] * sgnpow(x[i], qdual_ - 1.0);
      return;
    }
    case Kind::quadratic: {
      const double f = polar(x);
      for (int i = 0; i < dim_; ++i) {
        double r = 0;
        for (int j = 0; j < dim_; ++j) r += Ainv_[i * dim_ + j] * x[j];
        out[i] = r / f;
      }
      return;
    }
  }
}

FinslerNorm FinslerNorm::polar_norm() const {
  switch (kind_) {
    case Kind::euclidean:
      return euclidean(dim_);
    case Kind::weighted_q:
      return weighted_q(qdual_, wdual_);
    case Kind::quadratic:
      return quadratic(dim_, Ainv_);
  }
  return euclidean(dim_);
}

bool FinslerNorm::same_as(const FinslerNorm& o) const {
  if (kind_ != o.kind_ || dim_ != o.dim_) return false;
  switch (kind_) {
    case Kind::euclidean:
      return true;
    case Kind::weighted_q:
      return q_ == o.q_ && w_ == o.w_;
    case Kind::quadratic:
      return A_ == o.A_;
  }
  return false;
}

std::string FinslerNorm::describe() const {
  switch (kind_) {
    case Kind::euclidean:
      return "euclidean";
    case Kind::weighted_q: {
      std::string s = "wq" + fmt_g(q_);
      for (double w : w_) s += "-" + fmt_g(w);
      return s;
    }
    case Kind::quadratic: {
      std::string s = "qf";
      for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j) s += "-" + fmt_g(A_[i * dim_ + j]);
      return s;
    }
  }
  return "norm";
}

double numeric_polar(const FinslerNorm& F, std::span<const double> x) {
  if (F.dim() != 2)
    throw std::invalid_argument("numeric_polar supports 2D norms only");
  const double two_pi = 2.0 * std::acos(-1.0);
  const int n = 4096;
  auto ratio = [&](double theta) {
    const double e[2] = {std::cos(theta), std::sin(theta)};
    const double dot = x[0] * e[0] + x[1] * e[1];
    return dot / F.value(std::span<const double>(e, 2));
  };
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double v = ratio(two_pi * k / n);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  const double lo = two_pi * (best - 1) / n, hi = two_pi * (best + 1) / n;
  const double theta = golden_min([&](double t) { return -ratio(t); }, lo, hi, 1e-10);
  return std::max(best_v, ratio(theta));
}

std::vector<NormCheckRow> norm_identity_report(const FinslerNorm& F,
                                               int samples,
                                               std::uint32_t seed) {
  if (F.dim() != 2)
    throw std::invalid_argument("identity report supports 2D norms only");
  if (samples < 1)
    throw std::invalid_argument("identity report needs samples >= 1");

  std::mt19937 rng(seed);
  // Fixed engine-to-double mapping keeps draws reproducible independently
  // of the standard library's distribution implementations.
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * (rng() * (1.0 / 4294967296.0));
  };
  auto draw_dir = [&](double v[2]) {
    do {
      v[0] = uni(-1, 1);
      v[1] = uni(-1, 1);
    } while (std::hypot(v[0], v[1]) < 1e-2);
  };

  const FinslerNorm P = F.polar_norm();
  double w_hom = 0, w_dual = 0, w_cs = 0, w_grad = 0, w_euler = 0;
  for (int i = 0; i < samples; ++i) {
    double xi[2], eta[2];
    draw_dir(xi);
    draw_dir(eta);
    double t = uni(-3, 3);
    if (std::abs(t) < 1e-3) t += t < 0 ? -1e-3 : 1e-3;

    const double fxi = F.value2(xi[0], xi[1]);
    w_hom = std::max(w_hom, std::abs(F.value2(t * xi[0], t * xi[1]) -
                                     std::abs(t) * fxi) /
                                (std::abs(t) * fxi));
    w_dual = std::max(
        w_dual,
        std::abs(numeric_polar(P, std::span<const double>(xi, 2)) - fxi) /
            fxi);
    w_cs = std::max(w_cs, std::abs(xi[0] * eta[0] + xi[1] * eta[1]) -
                              fxi * F.polar2(eta[0], eta[1]));

    double g[2];
    F.gradient2(xi[0], xi[1], g[0], g[1]);
    w_grad = std::max(w_grad, std::abs(F.polar2(g[0], g[1]) - 1.0));
    w_euler = std::max(w_euler, std::abs(g[0] * xi[0] + g[1] * xi[1] - fxi));
  }

  const std::string tag = F.describe();
  auto row = [&](const char* prop, double worst, double bound) {
    return NormCheckRow{tag, prop, samples, worst, bound, worst <= bound};
  };
  return {row("homogeneity", w_hom, 1e-12),
          row("polar-duality", w_dual, 1e-4),
          row("cauchy-schwarz", w_cs, 1e-12),
          row("gradient-polar-identity", w_grad, 1e-8),
          row("euler-identity", w_euler, 1e-8)};
}

}  // namespace aniso
