#pragma once

#include <array>
#include <vector>

#include "aniso/domain.hpp"
#include "aniso/variation.hpp"

namespace aniso {

// Euclidean clearance from the domain center to the boundary (the radius
// of the largest centered ball inside a star-shaped domain).
double star_clearance(const AnalyticDomain& dom);

// Compactly supported smooth approximant of u: pull back through the
// interior scaling x -> center + (x - center)/(1 - tau) with amplitude
// (1-tau)^{1-N} (so the total variation of the zero-extension is
// preserved under the scaling), then convolve with a normalized smooth
// bump of radius eps. The result vanishes identically within eps of the
// boundary: its support sits inside the shrunk copy of the domain
// thickened by eps, which clears the boundary by at least
// tau * star_clearance - eps > eps.
//
// A bump narrower than two cells cannot be represented on the input
// lattice, so the result lives on a power-of-two refinement of it
// (factor at most 8) chosen so eps spans at least two fine cells.
//
// Requires 0 < tau <= 0.2, 0 < eps < tau * star_clearance / 2, and a
// domain star-shaped about its center (every built-in family except the
// annulus).
GridField shrink_mollify(const GridField& u, double tau, double eps);

struct ApproxRow {
  double tau = 0;
  double eps = 0;
  double l1_error = 0;           // integral of |approximant - u|
  double extended_tv = 0;        // TV of the zero-extension of the approximant
  double support_clearance = 0;  // min distance from the support to the boundary
};

// One row per schedule entry (tau, eps), tau non-increasing. For a field
// with empty support the clearance reports the full center clearance.
std::vector<ApproxRow> strict_convergence_report(
    const GridField& u, const FinslerNorm& F,
    const std::vector<std::array<double, 2>>& schedule);

}  // namespace aniso
