#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace adhesion1d {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance used when canonicalizing step and piecewise-linear
// functions. Exact arithmetic produces exactly equal adjacent values; the
// tolerance only absorbs round-off.
inline constexpr double kCanonicalRelTol = 1e-12;

// Subdivision 0 = w0 < w1 < ... < wn = 1 of the unit mass interval.
class Partition {
 public:
  Partition() : breaks_{0.0, 1.0} {}
  explicit Partition(std::vector<double> breaks);

  static Partition single() { return Partition(); }
  static Partition uniform(std::size_t cells);
  // Union of the breakpoints of two partitions (exact dedupe).
  static Partition merged(const Partition& a, const Partition& b);

  std::size_t cells() const { return breaks_.size() - 1; }
  double left(std::size_t i) const { return breaks_[i]; }
  double right(std::size_t i) const { return breaks_[i + 1]; }
  double width(std::size_t i) const { return breaks_[i + 1] - breaks_[i]; }
  const std::vector<double>& breaks() const { return breaks_; }

  // Index of the cell [w_{i-1}, w_i) containing w; w = 1 maps to the last cell.
  std::size_t cell_of(double w) const;

  bool operator==(const Partition& other) const { return breaks_ == other.breaks_; }

 private:
  std::vector<double> breaks_;
};

// Right-continuous piecewise-constant function on [0,1). Canonical on
// construction: adjacent cells with equal values (within kCanonicalRelTol
// relative to the value scale) are merged, so every cell is a maximal plateau.
class StepFn {
 public:
  StepFn() : partition_(), values_{0.0} {}
  StepFn(Partition partition, std::vector<double> values);

  static StepFn constant(double v);
  // Shared-partition construction without canonicalization; used for aligned
  // cellwise algebra where merging would break the common refinement.
  static StepFn aligned(Partition partition, std::vector<double> values);

  const Partition& partition() const { return partition_; }
  std::size_t cells() const { return values_.size(); }
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double w) const { return values_[partition_.cell_of(w)]; }

  bool is_nondecreasing(double tol = 0.0) const;
  double min_value() const;
  double max_value() const;
  double sup_norm() const;

  bool operator==(const StepFn& other) const {
    return partition_ == other.partition_ && values_ == other.values_;
  }

 private:
  Partition partition_;
  std::vector<double> values_;
};

// Continuous piecewise-linear function given by knots (xs, ys) with strictly
// increasing abscissae. Outside the knot range the function continues
// affinely: with the stored extension slopes when present, otherwise with the
// end-segment slopes. The extension slopes matter to legendre(), which treats
// a function without them as +inf outside its knot range (compact domain).
class PwLinearFn {
 public:
  PwLinearFn(std::vector<double> xs, std::vector<double> ys);
  PwLinearFn(std::vector<double> xs, std::vector<double> ys,
             double ext_lo, double ext_hi);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t knots() const { return xs_.size(); }
  double domain_lo() const { return xs_.front(); }
  double domain_hi() const { return xs_.back(); }

  bool has_extension() const;
  double ext_lo() const { return ext_lo_; }
  double ext_hi() const { return ext_hi_; }

  double operator()(double x) const;
  double slope(std::size_t segment) const;  // segment i joins knots i, i+1
  double min_knot_value() const;

  bool is_convex(double tol = 0.0) const;

 private:
  std::vector<double> xs_, ys_;
  double ext_lo_, ext_hi_;  // NaN when absent
};

// ---- step_fn operations ----

// Re-express both functions on the union of their breakpoints. Pointwise
// values are unchanged; the outputs are intentionally not canonicalized.
std::pair<StepFn, StepFn> refine_common(const StepFn& a, const StepFn& b);

// alpha*a + beta*b, formed exactly on the common refinement, canonicalized.
StepFn affine_combo(const StepFn& a, double alpha, const StepFn& b, double beta);

inline StepFn operator+(const StepFn& a, const StepFn& b) { return affine_combo(a, 1.0, b, 1.0); }
inline StepFn operator-(const StepFn& a, const StepFn& b) { return affine_combo(a, 1.0, b, -1.0); }
StepFn operator*(double alpha, const StepFn& a);
StepFn operator+(const StepFn& a, double c);

// F(w) = int_0^w f, continuous piecewise-linear with F(0) = 0.
PwLinearFn primitive(const StepFn& f);

// Greatest convex minorant on [0,1]; lower hull of the knot polyline in one
// monotone-chain pass, O(n).
PwLinearFn lower_convex_envelope(const PwLinearFn& F);

// Convex conjugate F*(x) = sup_w (x w - F(w)). Requires convex input; the
// sup runs over the affinely extended graph when extension slopes are stored
// and over the compact knot range otherwise. Exact graph transpose:
// legendre(legendre(F)) == F.
PwLinearFn legendre(const PwLinearFn& F);

// L^p(0,1) distance, exact cellwise integral; p in [1, inf].
double lp_distance(const StepFn& a, const StepFn& b, double p);
double lp_norm(const StepFn& f, double p);

// int_0^1 f(w) dw
double integrate(const StepFn& f);
// Sum of width_i * fn(value_i); exact cellwise integral of fn o f.
template <typename Fn>
double integrate_cellwise(const StepFn& f, Fn&& fn) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i)
    acc += f.partition().width(i) * fn(f.value(i));
  return acc;
}

// alpha*F + beta*G on the union of knots; both must share a domain.
PwLinearFn pl_affine_combo(const PwLinearFn& F, double alpha,
                           const PwLinearFn& G, double beta);

}  // namespace adhesion1d
