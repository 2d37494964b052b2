#include "adhesion1d/step_fn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhesion1d {

namespace {

bool nan(double x) { return std::isnan(x); }

}  // namespace

Partition::Partition(std::vector<double> breaks) : breaks_(std::move(breaks)) {
  if (breaks_.size() < 2) throw std::invalid_argument("Partition: need at least two breakpoints");
  if (breaks_.front() != 0.0) throw std::invalid_argument("Partition: first breakpoint must be 0");
  if (breaks_.back() != 1.0) throw std::invalid_argument("Partition: last breakpoint must be 1");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("Partition: breakpoints must be strictly increasing");
}

Partition Partition::uniform(std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("Partition: need at least one cell");
  std::vector<double> b(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) b[i] = static_cast<double>(i) / static_cast<double>(cells);
  b.front() = 0.0;
  b.back() = 1.0;
  return Partition(std::move(b));
}

Partition Partition::merged(const Partition& a, const Partition& b) {
  std::vector<double> out;
  out.reserve(a.breaks().size() + b.breaks().size());
  std::merge(a.breaks().begin(), a.breaks().end(), b.breaks().begin(), b.breaks().end(),
             std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Partition(std::move(out));
}

std::size_t Partition::cell_of(double w) const {
  if (w <= 0.0) return 0;
  if (w >= breaks_[breaks_.size() - 2]) return cells() - 1;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), w);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

StepFn::StepFn(Partition partition, std::vector<double> values) {
  if (values.size() != partition.cells())
    throw std::invalid_argument("StepFn: values must match partition cell count");
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double tol = kCanonicalRelTol * (1.0 + scale);

  const auto& b = partition.breaks();
  std::vector<double> nb, nv;
  nb.reserve(b.size());
  nv.reserve(values.size());
  nb.push_back(b.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!nv.empty() && std::abs(values[i] - nv.back()) <= tol) {
      // merge into the previous plateau; the shared breakpoint disappears
      continue;
    }
    if (!nv.empty()) nb.push_back(b[i]);
    nv.push_back(values[i]);
  }
  nb.push_back(b.back());
  partition_ = Partition(std::move(nb));
  values_ = std::move(nv);
}

StepFn StepFn::constant(double v) {
  StepFn f;
  f.values_[0] = v;
  return f;
}

StepFn StepFn::aligned(Partition partition, std::vector<double> values) {
  if (values.size() != partition.cells())
    throw std::invalid_argument("StepFn: values must match partition cell count");
  StepFn f;
  f.partition_ = std::move(partition);
  f.values_ = std::move(values);
  return f;
}

bool StepFn::is_nondecreasing(double tol) const {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i + 1] < values_[i] - tol) return false;
  return true;
}

double StepFn::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double StepFn::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double StepFn::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

PwLinearFn::PwLinearFn(std::vector<double> xs, std::vector<double> ys)
    : PwLinearFn(std::move(xs), std::move(ys),
                 std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN()) {}

PwLinearFn::PwLinearFn(std::vector<double> xs, std::vector<double> ys,
                       double ext_lo, double ext_hi)
    : xs_(std::move(xs)), ys_(std::move(ys)), ext_lo_(ext_lo), ext_hi_(ext_hi) {
  if (xs_.empty() || xs_.size() != ys_.size())
    throw std::invalid_argument("PwLinearFn: need matching nonempty knot lists");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    if (!(xs_[i] < xs_[i + 1]))
      throw std::invalid_argument("PwLinearFn: knot abscissae must be strictly increasing");

  // canonical form: drop interior knots where the slope does not change
  if (xs_.size() > 2) {
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
      scale = std::max(scale, std::abs(ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]));
    const double tol = kCanonicalRelTol * (1.0 + scale);
    std::vector<double> cx, cy;
    cx.reserve(xs_.size());
    cy.reserve(ys_.size());
    cx.push_back(xs_[0]);
    cy.push_back(ys_[0]);
    for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
      const double sl = (ys_[i] - cy.back()) / (xs_[i] - cx.back());
      const double sr = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
      if (std::abs(sl - sr) <= tol) continue;
      cx.push_back(xs_[i]);
      cy.push_back(ys_[i]);
    }
    cx.push_back(xs_.back());
    cy.push_back(ys_.back());
    xs_ = std::move(cx);
    ys_ = std::move(cy);
  }
}

bool PwLinearFn::has_extension() const { return !nan(ext_lo_) && !nan(ext_hi_); }

double PwLinearFn::slope(std::size_t segment) const {
  return (ys_[segment + 1] - ys_[segment]) / (xs_[segment + 1] - xs_[segment]);
}

double PwLinearFn::operator()(double x) const {
  if (x <= xs_.front()) {
    const double s = !nan(ext_lo_) ? ext_lo_ : (xs_.size() > 1 ? slope(0) : 0.0);
    return ys_.front() + s * (x - xs_.front());
  }
  if (x >= xs_.back()) {
    const double s = !nan(ext_hi_) ? ext_hi_ : (xs_.size() > 1 ? slope(xs_.size() - 2) : 0.0);
    return ys_.back() + s * (x - xs_.back());
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

double PwLinearFn::min_knot_value() const { return *std::min_element(ys_.begin(), ys_.end()); }

bool PwLinearFn::is_convex(double tol) const {
  double prev = !nan(ext_lo_) ? ext_lo_ : -kInfinity;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const double s = slope(i);
    if (s < prev - tol) return false;
    prev = s;
  }
  if (!nan(ext_hi_) && ext_hi_ < prev - tol) return false;
  return true;
}

std::pair<StepFn, StepFn> refine_common(const StepFn& a, const StepFn& b) {
  Partition p = Partition::merged(a.partition(), b.partition());
  std::vector<double> va(p.cells()), vb(p.cells());
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i < p.cells(); ++i) {
    const double r = p.right(i);
    va[i] = a.value(ia);
    vb[i] = b.value(ib);
    if (ia + 1 < a.cells() && r >= a.partition().right(ia)) ++ia;
    if (ib + 1 < b.cells() && r >= b.partition().right(ib)) ++ib;
  }
  StepFn fa = StepFn::aligned(p, std::move(va));
  StepFn fb = StepFn::aligned(std::move(p), std::move(vb));
  return {std::move(fa), std::move(fb)};
}

StepFn affine_combo(const StepFn& a, double alpha, const StepFn& b, double beta) {
  auto [ra, rb] = refine_common(a, b);
  std::vector<double> v(ra.cells());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * ra.value(i) + beta * rb.value(i);
  return StepFn(Partition(ra.partition().breaks()), std::move(v));
}

StepFn operator*(double alpha, const StepFn& a) {
  std::vector<double> v(a.values());
  for (double& x : v) x *= alpha;
  return StepFn(a.partition(), std::move(v));
}

StepFn operator+(const StepFn& a, double c) {
  std::vector<double> v(a.values());
  for (double& x : v) x += c;
  return StepFn(a.partition(), std::move(v));
}

PwLinearFn primitive(const StepFn& f) {
  const auto& b = f.partition().breaks();
  std::vector<double> ys(b.size());
  ys[0] = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i)
    ys[i + 1] = ys[i] + f.partition().width(i) * f.value(i);
  return PwLinearFn(b, std::move(ys));
}

PwLinearFn lower_convex_envelope(const PwLinearFn& F) {
  const auto& xs = F.xs();
  const auto& ys = F.ys();
  const std::size_t n = xs.size();
  std::vector<double> hx, hy;
  hx.reserve(n);
  hy.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // pop while the previous knot is not strictly below the chord
    while (hx.size() >= 2) {
      const std::size_t k = hx.size();
      const double cross = (hx[k - 1] - hx[k - 2]) * (ys[i] - hy[k - 2]) -
                           (hy[k - 1] - hy[k - 2]) * (xs[i] - hx[k - 2]);
      if (cross <= 0.0) {
        hx.pop_back();
        hy.pop_back();
      } else {
        break;
      }
    }
    hx.push_back(xs[i]);
    hy.push_back(ys[i]);
  }
  return PwLinearFn(std::move(hx), std::move(hy));
}

PwLinearFn legendre(const PwLinearFn& F) {
  const auto& xs = F.xs();
  const auto& ys = F.ys();
  const std::size_t n = xs.size();

  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) scale = std::max(scale, std::abs(F.slope(i)));
  if (!F.is_convex(kCanonicalRelTol * (1.0 + scale)))
    throw std::invalid_argument("legendre: input must be convex (apply lower_convex_envelope first)");

  // slope events: (slope value, knot where the sup is attained)
  std::vector<double> ss, sx, sy;
  if (F.has_extension()) {
    ss.push_back(F.ext_lo());
    sx.push_back(xs.front());
    sy.push_back(ys.front());
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ss.push_back(F.slope(i));
    sx.push_back(xs[i + 1]);
    sy.push_back(ys[i + 1]);
  }
  if (F.has_extension()) {
    ss.push_back(F.ext_hi());
    sx.push_back(xs.back());
    sy.push_back(ys.back());
  }
  if (ss.empty()) {
    // single knot, compact domain: conjugate is the line s -> s*x0 - y0
    return PwLinearFn({0.0}, {-ys.front()}, xs.front(), xs.front());
  }

  std::vector<double> ox, oy;
  ox.reserve(ss.size());
  oy.reserve(ss.size());
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (!ox.empty() && !(ss[i] > ox.back())) continue;  // repeated slope: same knot
    ox.push_back(ss[i]);
    oy.push_back(ss[i] * sx[i] - sy[i]);
  }

  if (F.has_extension()) return PwLinearFn(std::move(ox), std::move(oy));
  return PwLinearFn(std::move(ox), std::move(oy), xs.front(), xs.back());
}

double lp_distance(const StepFn& a, const StepFn& b, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_distance: p must be >= 1");
  auto [ra, rb] = refine_common(a, b);
  if (p == kInfinity) {
    double m = 0.0;
    for (std::size_t i = 0; i < ra.cells(); ++i)
      m = std::max(m, std::abs(ra.value(i) - rb.value(i)));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < ra.cells(); ++i) {
    const double d = std::abs(ra.value(i) - rb.value(i));
    acc += ra.partition().width(i) * std::pow(d, p);
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const StepFn& f, double p) { return lp_distance(f, StepFn::constant(0.0), p); }

double integrate(const StepFn& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) acc += f.partition().width(i) * f.value(i);
  return acc;
}

PwLinearFn pl_affine_combo(const PwLinearFn& F, double alpha,
                           const PwLinearFn& G, double beta) {
  if (F.domain_lo() != G.domain_lo() || F.domain_hi() != G.domain_hi())
    throw std::invalid_argument("pl_affine_combo: domains must coincide");
  std::vector<double> xs;
  xs.reserve(F.knots() + G.knots());
  std::merge(F.xs().begin(), F.xs().end(), G.xs().begin(), G.xs().end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = alpha * F(xs[i]) + beta * G(xs[i]);
  return PwLinearFn(std::move(xs), std::move(ys));
}

}  // namespace adhesion1d
