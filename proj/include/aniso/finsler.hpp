#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aniso {

// Even, convex, 1-homogeneous norm with a|x| <= F(x) <= b|x|.
// Built-in kinds keep analytic duals and metadata; gradients exist away from 0.
class FinslerNorm {
 public:
  enum class Kind { euclidean, weighted_q, quadratic };

  static FinslerNorm euclidean(int dim);
  // F(x) = (sum_i w_i |x_i|^q)^(1/q), q in (1, inf), w_i > 0.
  static FinslerNorm weighted_q(double q, std::vector<double> weights);
  // F(x) = sqrt(x' A x), A symmetric positive definite, row-major.
  static FinslerNorm quadratic(int dim, std::vector<double> row_major);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  double value(std::span<const double> x) const;
  double polar(std::span<const double> x) const;
  // Throws std::domain_error at x = 0.
  void gradient(std::span<const double> x, std::span<double> out) const;
  void polar_gradient(std::span<const double> x, std::span<double> out) const;

  // The dual norm as a first-class object (polar of the polar is the norm).
  FinslerNorm polar_norm() const;

  double lower_bound() const { return a_; }
  double upper_bound() const { return b_; }
  // Max principal radius of curvature of the unit Wulff-shape boundary.
  // +inf for weighted q-norms with q != 2 (the dual ball has flat axis points).
  double wulff_curvature_radius() const { return rw_; }

  // 2D fast paths for grid loops.
  double value2(double x, double y) const {
    const double v[2] = {x, y};
    return value(std::span<const double>(v, 2));
  }
  double polar2(double x, double y) const {
    const double v[2] = {x, y};
    return polar(std::span<const double>(v, 2));
  }
  void gradient2(double x, double y, double& gx, double& gy) const {
    const double v[2] = {x, y};
    double g[2];
    gradient(std::span<const double>(v, 2), std::span<double>(g, 2));
    gx = g[0];
    gy = g[1];
  }

  bool same_as(const FinslerNorm& o) const;
  // Compact tag used in output file names: "euclidean", "wq<q>-w1-w2", "qf-a11-a12-a22".
  std::string describe() const;

  const std::vector<double>& q_weights() const { return w_; }
  double q_exponent() const { return q_; }
  const std::vector<double>& matrix() const { return A_; }

 private:
  FinslerNorm() = default;
  void finish_metadata();

  Kind kind_ = Kind::euclidean;
  int dim_ = 2;
  double q_ = 2.0, qdual_ = 2.0;
  std::vector<double> w_, wdual_;
  std::vector<double> A_, Ainv_;
  double a_ = 1.0, b_ = 1.0, rw_ = 1.0;
};

// Brute-force polar for cross-validation only (never called by solvers):
// maximizes x·eta / F(eta) over 4096 azimuthal samples, then golden-section
// refines the best bracket to 1e-10. 2D only.
double numeric_polar(const FinslerNorm& F, std::span<const double> x);

struct NormCheckRow {
  std::string norm;      // describe() tag of the checked norm
  std::string property;  // identity exercised
  int samples = 0;
  double worst = 0;  // worst deviation observed over all samples
  double bound = 0;  // allowed bound for that deviation
  bool pass = false;
};

// Random-sample property suite for one 2D norm: homogeneity
// |F(t xi) - |t| F(xi)|, the polar-duality round trip through the numeric
// polar (F recovered from its analytic dual), the Cauchy-Schwarz bound
// xi.eta <= F(xi) F°(eta), the gradient identity F°(grad F(xi)) = 1, and
// the Euler identity grad F(xi).xi = F(xi). One row per property; draws
// are reproducible for a fixed seed.
std::vector<NormCheckRow> norm_identity_report(const FinslerNorm& F,
                                               int samples = 10000,
                                               std::uint32_t seed = 970);

}  // namespace aniso
