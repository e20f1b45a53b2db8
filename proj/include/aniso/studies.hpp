#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/finsler.hpp"
#include "aniso/solvers.hpp"
#include "aniso/variation.hpp"

namespace aniso {

struct StudyOptions {
  // Raster ladder for the extrapolated set-ratio reference; must decrease.
  // The reference removes the leading O(h) error from the two finest runs.
  std::vector<double> lambda_h{1.0 / 64, 1.0 / 128, 1.0 / 256};
  // Raster spacing for the eigenvalue column of a sweep.
  double eigen_h = 1.0 / 48;
  SolverOptions solver{};
};

// Grid-extrapolated reference for the set-ratio limit Lambda(domain, beta):
// solve_Lambda on each ladder spacing, then first-order Richardson
// extrapolation of the two finest values.
double lambda_reference(const AnalyticDomain& dom, const FinslerNorm& F,
                        double beta, const StudyOptions& opts = {});

// One row of the p -> 1 sweep. Both eigenvalue columns are reported where
// available; `gap` measures the sharper column (the radial reduction when
// the domain is the Wulff shape of F) against the shared reference, since
// that is the column the convergence claim is about.
struct SweepRow {
  double p = 0;
  double lambda_grid = 0;      // Rayleigh descent on the raster
  double lambda_shooting = 0;  // radial reduction (Wulff domain of F only)
  bool has_shooting = false;
  double Lambda = 0;  // extrapolated set-ratio reference, same for all rows
  double gap = 0;     // eigenvalue minus Lambda
  bool ok = false;    // row failed or did not converge when false
  std::string note;   // failure description when !ok or a column is missing
};

// Eigenvalue sweep along a decreasing p list toward 1, against the p = 1
// set-ratio limit. Row failures are flagged, not thrown.
std::vector<SweepRow> gamma_sweep(const AnalyticDomain& dom,
                                  const FinslerNorm& F, double beta,
                                  const std::vector<double>& p_list,
                                  const StudyOptions& opts = {});

struct IsoperimetricRow {
  std::string domain;
  double Lambda = 0;
  // "reference" for the leading Wulff shape, then "pass"/"fail" per the
  // sign of beta; "vacuous" when beta = 0 (every Lambda is zero).
  std::string verdict;
};

// Compares Lambda across an equal-area family. family[0] must be the
// reference Wulff shape; beta > 0 asserts the Wulff value is minimal,
// -1 < beta < 0 maximal, both with a 2%-of-reference strict margin.
std::vector<IsoperimetricRow> isoperimetric_compare(
    const std::vector<AnalyticDomain>& family, const FinslerNorm& F,
    double beta, const StudyOptions& opts = {});

struct TraceField {
  std::string id;
  GridField u;
};

// Deterministic 100-field verification corpus on one raster: constants,
// affine fields, radial bumps, random smooth trigonometric fields, and
// steep tanh profiles; all draws come from one mt19937 stream (the seed is
// part of the corpus identity and belongs in any emitted provenance).
std::vector<TraceField> default_trace_corpus(RasterPtr grid,
                                             std::uint32_t seed = 970);

struct TraceRow {
  std::string id;
  double lhs = 0;     // boundary integral of |u| F(nu)
  double rhs = 0;     // TV_F(u) + (2 N / mu) ||u||_1
  double margin = 0;  // rhs - lhs; the inequality asserts margin >= 0
};

// Verifies the boundary-trace inequality with constant c = 2 N / mu on
// every corpus field. The domain must support the curvature bound
// (C2 boundary); corpus fields must live on a raster of that domain.
std::vector<TraceRow> trace_check(const AnalyticDomain& dom,
                                  const FinslerNorm& F,
                                  const std::vector<TraceField>& corpus);

}  // namespace aniso
