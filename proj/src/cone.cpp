#include "adhesion1d/cone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhesion1d {

PlateauSet::PlateauSet(std::vector<std::pair<double, double>> intervals)
    : intervals_(std::move(intervals)) {
  double prev = 0.0;
  for (const auto& [a, b] : intervals_) {
    if (!(a < b)) throw std::invalid_argument("PlateauSet: intervals need positive length");
    if (a < prev) throw std::invalid_argument("PlateauSet: intervals must be ordered and disjoint");
    if (a < 0.0 || b > 1.0) throw std::invalid_argument("PlateauSet: intervals must lie in (0,1)");
    prev = b;
  }
}

bool PlateauSet::contained_in(const PlateauSet& other, double tol) const {
  std::size_t j = 0;
  for (const auto& [a, b] : intervals_) {
    while (j < other.intervals_.size() && other.intervals_[j].second < b - tol) ++j;
    if (j == other.intervals_.size()) return false;
    if (other.intervals_[j].first > a + tol) return false;
  }
  return true;
}

StepFn proj_k(const StepFn& f) {
  const auto& b = f.partition().breaks();
  const std::size_t n = f.cells();

  // lower hull of the primitive's knots, tracking source cell indices
  std::vector<double> hx(n + 1), hy(n + 1);
  std::vector<std::size_t> hidx(n + 1);
  std::size_t top = 0;
  hx[0] = 0.0;
  hy[0] = 0.0;
  hidx[0] = 0;
  double F = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = b[i + 1];
    F += (b[i + 1] - b[i]) * f.value(i);
    while (top >= 1) {
      const double cross = (hx[top] - hx[top - 1]) * (F - hy[top - 1]) -
                           (hy[top] - hy[top - 1]) * (w - hx[top - 1]);
      if (cross <= 0.0)
        --top;
      else
        break;
    }
    ++top;
    hx[top] = w;
    hy[top] = F;
    hidx[top] = i + 1;
  }

  std::vector<double> breaks(hx.begin(), hx.begin() + top + 1);
  std::vector<double> values(top);
  for (std::size_t s = 0; s < top; ++s) {
    if (hidx[s + 1] == hidx[s] + 1)
      values[s] = f.value(hidx[s]);  // untouched cell: keep the value bitwise
    else
      values[s] = (hy[s + 1] - hy[s]) / (hx[s + 1] - hx[s]);
  }
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

PlateauSet omega(const StepFn& f) {
  std::vector<std::pair<double, double>> iv;
  iv.reserve(f.cells());
  for (std::size_t i = 0; i < f.cells(); ++i)
    iv.emplace_back(f.partition().left(i), f.partition().right(i));
  return PlateauSet(std::move(iv));
}

StepFn proj_h(const PlateauSet& plateaus, const StepFn& h) {
  if (plateaus.empty()) return h;
  const PwLinearFn H = primitive(h);

  std::vector<double> breaks{0.0};
  std::vector<double> values;
  const auto& hb = h.partition().breaks();
  std::size_t hi = 1;  // next h breakpoint to consider

  auto emit_gap = [&](double from, double to) {
    // copy h on [from, to)
    while (from < to) {
      while (hi < hb.size() && hb[hi] <= from) ++hi;
      const double next = (hi < hb.size() && hb[hi] < to) ? hb[hi] : to;
      values.push_back(h(from));
      breaks.push_back(next);
      from = next;
    }
  };

  double cursor = 0.0;
  for (const auto& [a, bnd] : plateaus.intervals()) {
    if (a > cursor) emit_gap(cursor, a);
    values.push_back((H(bnd) - H(a)) / (bnd - a));
    breaks.push_back(bnd);
    cursor = bnd;
  }
  if (cursor < 1.0) emit_gap(cursor, 1.0);
  breaks.back() = 1.0;
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

bool in_polar_cone(const StepFn& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("in_polar_cone: tol must be >= 0");
  const PwLinearFn F = primitive(f);
  if (F.min_knot_value() < -tol) return false;
  return std::abs(F.ys().front()) <= tol && std::abs(F.ys().back()) <= tol;
}

bool in_subdifferential(const StepFn& xi, const StepFn& g, double tol) {
  if (!g.is_nondecreasing()) throw std::invalid_argument("in_subdifferential: g must be nondecreasing");
  if (tol < 0.0) tol = 1e-9 * (1.0 + xi.sup_norm());
  const PwLinearFn Xi = primitive(xi);
  if (Xi.min_knot_value() < -tol) return false;
  // [0,1] \ Omega_g is {0, 1} plus the breakpoints of g
  for (double w : g.partition().breaks())
    if (std::abs(Xi(w)) > tol) return false;
  return true;
}

double inner_product(const StepFn& a, const StepFn& b) {
  auto [ra, rb] = refine_common(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < ra.cells(); ++i)
    acc += ra.partition().width(i) * ra.value(i) * rb.value(i);
  return acc;
}

}  // namespace adhesion1d
