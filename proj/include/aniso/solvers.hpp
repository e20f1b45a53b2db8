#pragma once

#include <array>
#include <utility>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"
#include "aniso/variation.hpp"

namespace aniso {

struct SolverOptions {
  // Set-ratio (Dinkelbach) solver.
  double tol = 1e-6;     // stop when |s_{k+1} - s_k| < tol
  int max_outer = 50;    // Dinkelbach iterations
  int max_inner = 10000; // primal-dual iterations per subproblem
  int thresholds = 64;   // level grid for coarea thresholding
  bool annulus_scan = true;  // probe concentric annuli when beta < 0

  // Rayleigh-quotient descent.
  double descent_tol = 1e-8;
  int descent_max_iter = 20000;
};

struct EigenResult {
  double lambda = 0;
  GridField field;  // nonnegative representative, ||u||_p = 1
  double p = 2, beta = 0;
  std::vector<double> residual_history;  // J_p value per iteration
  int iterations = 0;
  bool converged = false;
};

// First Robin eigenvalue of the Finsler p-Laplacian by projected descent
// on the Rayleigh quotient.
EigenResult solve_lambda_p(RasterPtr grid, const FinslerNorm& F, double p,
                           double beta, const SolverOptions& opts = {});

struct RadialResult {
  double lambda = 0;
  std::vector<std::array<double, 2>> profile;  // (r, phi)
  bool converged = false;
};

// Radial profile solver on the Wulff shape W_R in dimension N: integrates
// the one-dimensional reduction of the eigenvalue equation and bisects the
// eigenvalue on the Robin boundary condition. The value depends only on
// (N, R, p, beta); the norm argument fixes the geometry the profile
// belongs to and must be two-dimensional when N = 2.
RadialResult solve_radial_shooting(const FinslerNorm& F, double R, int N,
                                   double p, double beta);

struct SetRatioResult {
  double value = 0;
  CellSet set;
  std::vector<std::array<double, 2>> dinkelbach_path;  // (s, inner min)
  GridField field;     // relaxed minimizer of the last subproblem
  double threshold = 0;  // level whose superlevel set was kept
  int outer_iterations = 0;
  bool converged = false;
};

// Lambda(Omega, beta) = inf over sets of ratio_R, by Dinkelbach iteration
// with a primal-dual inner solve and coarea thresholding.
SetRatioResult solve_Lambda(RasterPtr grid, const FinslerNorm& F, double beta,
                            const SolverOptions& opts = {});

// Exact minimum of ratio_R by enumeration; rasters with at most 20 inside
// cells. Ties: larger set first, then lowest enumeration mask.
std::pair<double, CellSet> brute_force_ell(RasterPtr grid,
                                           const FinslerNorm& F, double beta);

// h_F(Omega): the beta >= 1 collapse of the set ratio.
double cheeger_constant(RasterPtr grid, const FinslerNorm& F);

// For beta < -1 the ratio is unbounded below; returns (r, ratio of the
// annulus {r < polar(x - c) < R}) along r increasing toward R.
std::vector<std::array<double, 2>> divergence_demo(RasterPtr grid,
                                                   const FinslerNorm& F,
                                                   double beta);

}  // namespace aniso
