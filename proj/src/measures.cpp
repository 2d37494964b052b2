#include "adhesion1d/measures.hpp"

#include "adhesion1d/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhesion1d {

namespace {

constexpr double kMassTol = 1e-12;

double position_scale(double running_max, double x) { return std::max(running_max, std::abs(x)); }

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("DiscreteMeasure: need at least one atom");
  double scale = 0.0;
  NeumaierSum total;
  for (const auto& a : atoms_) {
    if (!(a.mass > 0.0)) throw std::invalid_argument("DiscreteMeasure: masses must be positive");
    scale = position_scale(scale, a.position);
    total.add(a.mass);
  }
  if (std::abs(total.get() - 1.0) > kMassTol)
    throw std::invalid_argument("DiscreteMeasure: masses must sum to 1");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  const double tol = kCanonicalRelTol * (1.0 + scale);
  std::vector<Atom> merged;
  merged.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!merged.empty() && a.position - merged.back().position <= tol)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);
}

MassVelocityState::MassVelocityState(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("MassVelocityState: need at least one atom");
  double scale = 0.0;
  NeumaierSum total;
  for (const auto& a : atoms_) {
    if (!(a.mass > 0.0)) throw std::invalid_argument("MassVelocityState: masses must be positive");
    scale = position_scale(scale, a.position);
    total.add(a.mass);
  }
  if (std::abs(total.get() - 1.0) > kMassTol)
    throw std::invalid_argument("MassVelocityState: masses must sum to 1");
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  const double tol = kCanonicalRelTol * (1.0 + scale);
  std::vector<Atom> merged;
  merged.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!merged.empty() && a.position - merged.back().position <= tol) {
      Atom& m = merged.back();
      const double mass = m.mass + a.mass;
      m.velocity = (m.mass * m.velocity + a.mass * a.velocity) / mass;
      m.mass = mass;
    } else {
      merged.push_back(a);
    }
  }
  atoms_ = std::move(merged);
}

DiscreteMeasure MassVelocityState::measure() const {
  std::vector<DiscreteMeasure::Atom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back({a.mass, a.position});
  return DiscreteMeasure(std::move(out));
}

double MassVelocityState::momentum() const {
  NeumaierSum acc;
  for (const auto& a : atoms_) acc.add(a.mass * a.velocity);
  return acc.get();
}

CostSpec CostSpec::power(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("CostSpec: power cost needs p >= 1");
  CostSpec c;
  c.p_ = p;
  return c;
}

CostSpec CostSpec::piecewise_linear(PwLinearFn psi) {
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < psi.knots(); ++i)
    scale = std::max(scale, std::abs(psi.slope(i)));
  const double tol = 1e-9 * (1.0 + scale);
  if (!psi.is_convex(tol)) throw std::invalid_argument("CostSpec: cost must be convex");
  for (double x : psi.xs())
    if (std::abs(psi(x) - psi(-x)) > tol * (1.0 + std::abs(psi(x))))
      throw std::invalid_argument("CostSpec: cost must be even");
  CostSpec c;
  c.psi_ = std::move(psi);
  return c;
}

double CostSpec::operator()(double r) const {
  if (p_) return std::pow(std::abs(r), *p_);
  return (*psi_)(r);
}

StepFn quantile(const DiscreteMeasure& rho) {
  const auto& atoms = rho.atoms();
  std::vector<double> breaks(atoms.size() + 1), values(atoms.size());
  breaks[0] = 0.0;
  NeumaierSum acc;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc.add(atoms[i].mass);
    breaks[i + 1] = acc.get();
    values[i] = atoms[i].position;
  }
  breaks.back() = 1.0;
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

StepFn quantile_velocity(const MassVelocityState& mu) {
  const auto& atoms = mu.atoms();
  std::vector<double> breaks(atoms.size() + 1), values(atoms.size());
  breaks[0] = 0.0;
  NeumaierSum acc;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc.add(atoms[i].mass);
    breaks[i + 1] = acc.get();
    values[i] = atoms[i].velocity;
  }
  breaks.back() = 1.0;
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

DiscreteMeasure measure_of(const StepFn& x) {
  if (!x.is_nondecreasing()) throw std::invalid_argument("measure_of: quantile must be nondecreasing");
  std::vector<DiscreteMeasure::Atom> atoms;
  atoms.reserve(x.cells());
  for (std::size_t i = 0; i < x.cells(); ++i)
    atoms.push_back({x.partition().width(i), x.value(i)});
  return DiscreteMeasure(std::move(atoms));
}

double wasserstein(const DiscreteMeasure& r1, const DiscreteMeasure& r2, double p) {
  return lp_distance(quantile(r1), quantile(r2), p);
}

double transport_cost(const DiscreteMeasure& r1, const DiscreteMeasure& r2, const CostSpec& psi) {
  auto [x1, x2] = refine_common(quantile(r1), quantile(r2));
  double acc = 0.0;
  for (std::size_t i = 0; i < x1.cells(); ++i)
    acc += x1.partition().width(i) * psi(x1.value(i) - x2.value(i));
  return acc;
}

double u_dist(const MassVelocityState& m1, const MassVelocityState& m2, double p) {
  if (!(p >= 1.0) || p == kInfinity)
    throw std::invalid_argument("u_dist: p must lie in [1, inf)");
  auto [v1, v2] = refine_common(quantile_velocity(m1), quantile_velocity(m2));
  double acc = 0.0;
  for (std::size_t i = 0; i < v1.cells(); ++i)
    acc += v1.partition().width(i) * std::pow(std::abs(v1.value(i) - v2.value(i)), p);
  return std::pow(acc, 1.0 / p);
}

double d_dist(const MassVelocityState& m1, const MassVelocityState& m2, double p) {
  const double w = wasserstein(m1.measure(), m2.measure(), p);
  const double u = u_dist(m1, m2, p);
  return std::pow(std::pow(w, p) + std::pow(u, p), 1.0 / p);
}

double pseudo_norm(const MassVelocityState& mu, double p) {
  return d_dist(mu, MassVelocityState({{1.0, 0.0, 0.0}}), p);
}

MassVelocityState discretize(const StepFn& x_quantile, const StepFn& v_quantile, std::size_t n) {
  if (n == 0) throw std::invalid_argument("discretize: need n >= 1");
  std::vector<MassVelocityState::Atom> atoms;
  atoms.reserve(n);
  const double m = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (static_cast<double>(i) + 0.5) * m;
    atoms.push_back({m, x_quantile(w), v_quantile(w)});
  }
  return MassVelocityState(std::move(atoms));
}

MassVelocityState discretize(const std::function<double(double)>& x_of_w,
                             const std::function<double(double)>& v_of_x, std::size_t n) {
  if (n == 0) throw std::invalid_argument("discretize: need n >= 1");
  std::vector<MassVelocityState::Atom> atoms;
  atoms.reserve(n);
  const double m = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (static_cast<double>(i) + 0.5) * m;
    const double x = x_of_w(w);
    atoms.push_back({m, x, v_of_x(x)});
  }
  return MassVelocityState(std::move(atoms));
}

const std::vector<std::function<double(double)>>& bl_dictionary() {
  static const std::vector<std::function<double(double)>> dict = {
      [](double x) { return std::tanh(x); },
      [](double x) { return std::tanh(0.5 * x); },
      [](double x) { return std::sin(x); },
      [](double x) { return std::cos(x); },
      [](double x) { return std::sin(2.0 * x); },
      [](double x) { return std::cos(2.0 * x); },
      [](double x) { return 1.0 / (1.0 + x * x); },
      [](double x) { return x / (1.0 + std::abs(x)); },
  };
  return dict;
}

double momentum_pairing(const MassVelocityState& mu, const std::function<double(double)>& zeta) {
  double acc = 0.0;
  for (const auto& a : mu.atoms()) acc += a.mass * zeta(a.position) * a.velocity;
  return acc;
}

}  // namespace adhesion1d
