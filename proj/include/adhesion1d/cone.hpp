#pragma once

#include "adhesion1d/step_fn.hpp"

namespace adhesion1d {

// Maximal open intervals of (0,1) where a step function is locally constant.
// For a canonical StepFn these are exactly the cell interiors; externally
// supplied plateau sets may leave gaps.
class PlateauSet {
 public:
  PlateauSet() = default;
  explicit PlateauSet(std::vector<std::pair<double, double>> intervals);

  static PlateauSet full() { return PlateauSet({{0.0, 1.0}}); }

  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  // Every interval of this set is contained in one interval of `other`.
  bool contained_in(const PlateauSet& other, double tol = 0.0) const;

 private:
  std::vector<std::pair<double, double>> intervals_;
};

// L^2(0,1) metric projection onto the cone of nondecreasing functions:
// the right derivative of the convex envelope of the primitive. Pooled cells
// get exact cell-width-weighted means; cells kept intact keep their values
// bitwise, so monotone inputs are exact fixed points. O(n).
StepFn proj_k(const StepFn& f);

// Plateau set of f: the maximal intervals where f is constant.
PlateauSet omega(const StepFn& f);

// Orthogonal projection onto the subspace of functions constant on each
// plateau: mean value inside every interval, h unchanged outside.
StepFn proj_h(const PlateauSet& plateaus, const StepFn& h);

// Polar-cone membership: the primitive stays >= -tol on [0,1] and vanishes
// (within tol) at both endpoints.
bool in_polar_cone(const StepFn& f, double tol);

// Subdifferential membership xi in dI_K(g): the primitive of xi is >= -tol
// everywhere and vanishes (within tol) at 0, 1 and every breakpoint of g.
// g must be nondecreasing. Negative tol selects the default
// 1e-9 * (1 + sup|xi|).
bool in_subdifferential(const StepFn& xi, const StepFn& g, double tol = -1.0);

// L^2 inner product <a, b> on (0,1), exact cellwise.
double inner_product(const StepFn& a, const StepFn& b);

}  // namespace adhesion1d
