#pragma once

#include <functional>
#include <vector>

#include "adhesion1d/measures.hpp"
#include "adhesion1d/step_fn.hpp"

// Independent reference implementations used only by the test and acceptance
// binaries. None of them share code paths with the library's hull/projection
// machinery.
namespace adhesion1d::oracles {

// Exact weighted isotonic regression by exhaustive search over all 2^(n-1)
// consecutive-block partitions (every candidate active set); n <= 20.
std::vector<double> isotonic_qp(const std::vector<double>& widths,
                                const std::vector<double>& values);

// Convex envelope by brute force over affine minorants on a dense slope grid;
// evaluates the envelope pointwise.
double envelope_minorant(const PwLinearFn& f, double w, int slope_grid = 4000);

// Optimal transport cost by vertex enumeration of the transport polytope
// (spanning-tree basic solutions); both measures need <= 4 atoms.
double transport_lp(const DiscreteMeasure& a, const DiscreteMeasure& b,
                    const std::function<double(double, double)>& cost);

}  // namespace adhesion1d::oracles
