#include "adhesion1d/gradflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adhesion1d/numeric.hpp"

namespace adhesion1d {

double FluxFunction::max_speed() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < a.knots(); ++i) m = std::max(m, std::abs(a.slope(i)));
  return m;
}

double FluxFunction::range_min(double lo, double hi) const {
  double m = std::min(a(lo), a(hi));
  const auto& xs = a.xs();
  auto it = std::upper_bound(xs.begin(), xs.end(), lo);
  for (; it != xs.end() && *it < hi; ++it) m = std::min(m, a(*it));
  return m;
}

double FluxFunction::range_max(double lo, double hi) const {
  double m = std::max(a(lo), a(hi));
  const auto& xs = a.xs();
  auto it = std::upper_bound(xs.begin(), xs.end(), lo);
  for (; it != xs.end() && *it < hi; ++it) m = std::max(m, a(*it));
  return m;
}

CdfSolution::CdfSolution(std::vector<double> xs, std::vector<double> levels, double t)
    : xs_(std::move(xs)), levels_(std::move(levels)), t_(t) {
  if (levels_.size() != xs_.size() + 1)
    throw std::invalid_argument("CdfSolution: need one level per interval");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    if (!(xs_[i] < xs_[i + 1]))
      throw std::invalid_argument("CdfSolution: breaks must be strictly increasing");
}

double CdfSolution::operator()(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return levels_[static_cast<std::size_t>(it - xs_.begin())];
}

bool CdfSolution::is_monotone(double tol) const {
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i)
    if (levels_[i + 1] < levels_[i] - tol) return false;
  return true;
}

std::vector<std::pair<double, double>> CdfSolution::jumps(double min_height) const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (levels_[i + 1] - levels_[i] > min_height) out.emplace_back(xs_[i], levels_[i + 1]);
  return out;
}

FluxFunction flux_of(const MassVelocityState& state0) {
  return FluxFunction{primitive(quantile_velocity(state0))};
}

CdfSolution hopf_solution(const MassVelocityState& state0, double t) {
  if (t < 0.0) throw std::invalid_argument("hopf_solution: t must be >= 0");
  const PwLinearFn f0 = primitive(quantile(state0.measure()));
  const PwLinearFn shifted = pl_affine_combo(f0, 1.0, flux_of(state0).a, t);
  const PwLinearFn ft = lower_convex_envelope(shifted);
  const PwLinearFn gt = legendre(ft);
  // right derivative of the conjugate: levels are the quantile breakpoints,
  // the extension slopes carry the 0 and 1 tails
  std::vector<double> levels;
  levels.reserve(gt.knots() + 1);
  levels.push_back(gt.ext_lo());
  for (std::size_t i = 0; i + 1 < gt.knots(); ++i) levels.push_back(gt.slope(i));
  levels.push_back(gt.ext_hi());
  return CdfSolution(gt.xs(), std::move(levels), t);
}

CdfSolution cdf_of(const DiscreteMeasure& rho, double t) {
  std::vector<double> xs;
  std::vector<double> levels{0.0};
  xs.reserve(rho.size());
  NeumaierSum acc;
  for (const auto& a : rho.atoms()) {
    xs.push_back(a.position);
    acc.add(a.mass);
    levels.push_back(acc.get());
  }
  levels.back() = 1.0;
  return CdfSolution(std::move(xs), std::move(levels), t);
}

double cdf_discrepancy(const CdfSolution& a, const CdfSolution& b) {
  const auto ja = a.jumps();
  const auto jb = b.jumps();
  if (ja.size() != jb.size()) return kInfinity;
  double d = 0.0;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    d = std::max(d, std::abs(ja[i].first - jb[i].first));
    d = std::max(d, std::abs(ja[i].second - jb[i].second));
  }
  return d;
}

double l1_distance(const CdfSolution& a, const CdfSolution& b) {
  std::vector<double> xs;
  xs.reserve(a.xs().size() + b.xs().size());
  std::merge(a.xs().begin(), a.xs().end(), b.xs().begin(), b.xs().end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    acc += (xs[i + 1] - xs[i]) * std::abs(a(mid) - b(mid));
  }
  return acc;
}

CdfSolution godunov_oracle(const MassVelocityState& state0, double t, double dx, double cfl) {
  if (!(dx > 0.0)) throw std::invalid_argument("godunov_oracle: dx must be positive");
  if (!(cfl > 0.0) || cfl > 0.9)
    throw std::invalid_argument("godunov_oracle: cfl must lie in (0, 0.9]");
  const FluxFunction flux = flux_of(state0);
  const double amax = std::max(flux.max_speed(), 1e-12);

  const auto& atoms = state0.atoms();
  double lo = atoms.front().position, hi = atoms.back().position;
  lo += t * std::min(0.0, -amax) - 4.0 * dx - 0.1;
  hi += t * std::max(0.0, amax) + 4.0 * dx + 0.1;
  const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / dx)) + 1;

  const CdfSolution m0 = cdf_of(state0.measure());
  std::vector<double> m(n);
  for (std::size_t j = 0; j < n; ++j) m[j] = m0(lo + (static_cast<double>(j) + 0.5) * dx);

  auto riemann_flux = [&flux](double ml, double mr) {
    if (ml <= mr) return flux.range_min(ml, mr);
    return flux.range_max(mr, ml);
  };

  std::vector<double> f(n + 1);
  double time = 0.0;
  while (time < t) {
    const double dt = std::min(cfl * dx / amax, t - time);
    f[0] = riemann_flux(0.0, m[0]);
    for (std::size_t j = 1; j < n; ++j) f[j] = riemann_flux(m[j - 1], m[j]);
    f[n] = riemann_flux(m[n - 1], 1.0);
    const double r = dt / dx;
    for (std::size_t j = 0; j < n; ++j) m[j] -= r * (f[j + 1] - f[j]);
    time += dt;
  }

  std::vector<double> xs(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) xs[j] = lo + static_cast<double>(j + 1) * dx;
  return CdfSolution(std::move(xs), std::move(m), t);
}

double phi(const DiscreteMeasure& rho, const DiscreteMeasure& sigma) {
  const double w = wasserstein(rho, sigma, 2.0);
  return -0.5 * w * w;
}

StepFn gradient_flow_step(const StepFn& x, const StepFn& x_sigma, double h) {
  if (!(h > 0.0) || !(h < 1.0))
    throw std::invalid_argument("gradient_flow_step: h must lie in (0,1)");
  return proj_k(affine_combo(x, 1.0 / (1.0 - h), x_sigma, -h / (1.0 - h)));
}

std::vector<std::pair<double, StepFn>> gradient_flow_run(const DiscreteMeasure& rho_start,
                                                         const DiscreteMeasure& rho_sigma,
                                                         double tau_span, double h) {
  if (tau_span < 0.0) throw std::invalid_argument("gradient_flow_run: tau_span must be >= 0");
  StepFn x = quantile(rho_start);
  const StepFn xs = quantile(rho_sigma);
  std::vector<std::pair<double, StepFn>> path;
  path.emplace_back(0.0, x);
  double tau = 0.0;
  while (tau < tau_span - 1e-15) {
    const double step = std::min(h, tau_span - tau);
    x = gradient_flow_step(x, xs, step);
    tau += step;
    path.emplace_back(tau, x);
  }
  return path;
}

double evi_residual(const LagrangianState& s0, double t, const DiscreteMeasure& eta,
                    double rel_dt) {
  if (!(t > 0.0)) throw std::invalid_argument("evi_residual: t must be positive");
  const StepFn z = quantile(eta);
  const double dt = rel_dt * t;
  auto w2sq = [&](double s) {
    const double d = lp_distance(step(s0, s).x(), z, 2.0);
    return d * d;
  };
  const double deriv = (w2sq(t + dt) - w2sq(t - dt)) / (2.0 * dt);
  const double w2_t = w2sq(t);
  const double phi_eta = -0.5 * lp_distance(z, s0.x(), 2.0) * lp_distance(z, s0.x(), 2.0);
  const double dxt = lp_distance(step(s0, t).x(), s0.x(), 2.0);
  const double phi_rho = -0.5 * dxt * dxt;
  const double defect = 0.5 * t * deriv - 0.5 * w2_t - phi_eta + phi_rho;
  return std::max(0.0, defect);
}

std::vector<double> default_eps_sequence(double t, std::size_t k_max) {
  std::vector<double> eps;
  for (std::size_t k = 1; k <= k_max; ++k) eps.push_back(t / std::pow(2.0, static_cast<double>(k)));
  return eps;
}

namespace {

// Feasible element of BL(eps): clip v0 at 1/eps, then take the greatest
// (1/2eps)-Lipschitz minorant on the atoms. Any feasible element upper-bounds
// the best approximation error.
double bl_bound(const MassVelocityState& mu, double eps) {
  const auto& atoms = mu.atoms();
  const double cap = 1.0 / eps;
  const double lip = 0.5 / eps;
  std::vector<double> clipped(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i)
    clipped[i] = std::clamp(atoms[i].velocity, -cap, cap);
  double err = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double u = clipped[i];
    for (std::size_t j = 0; j < atoms.size(); ++j)
      u = std::min(u, clipped[j] + lip * std::abs(atoms[i].position - atoms[j].position));
    const double d = atoms[i].velocity - u;
    err += atoms[i].mass * d * d;
  }
  return std::sqrt(err);
}

}  // namespace

std::vector<LimitRow> limit_construction(const MassVelocityState& state0, double t,
                                         const std::vector<double>& eps_seq, double h) {
  if (!(t > 0.0)) throw std::invalid_argument("limit_construction: t must be positive");
  for (std::size_t i = 0; i + 1 < eps_seq.size(); ++i)
    if (!(eps_seq[i + 1] < eps_seq[i]))
      throw std::invalid_argument("limit_construction: eps sequence must decrease");

  const LagrangianState s0 = LagrangianState::initial(state0);
  const DiscreteMeasure rho_t = measure_of(step(s0, t).x());
  const DiscreteMeasure rho0 = state0.measure();

  std::vector<LimitRow> rows;
  rows.reserve(eps_seq.size());
  for (double eps : eps_seq) {
    if (!(eps > 0.0) || eps > t)
      throw std::invalid_argument("limit_construction: eps must lie in (0, t]");
    std::vector<DiscreteMeasure::Atom> pushed;
    pushed.reserve(state0.size());
    for (const auto& a : state0.atoms())
      pushed.push_back({a.mass, a.position + eps * a.velocity});
    const DiscreteMeasure rho_eps(std::move(pushed));
    const auto path = gradient_flow_run(rho_eps, rho0, std::log(t / eps), h);
    const double w2 = wasserstein(rho_t, measure_of(path.back().second), 2.0);
    rows.push_back({eps, w2, bl_bound(state0, eps)});
  }
  return rows;
}

}  // namespace adhesion1d
