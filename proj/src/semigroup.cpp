#include "adhesion1d/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhesion1d {

namespace {

// FNV-1a over the knot data; stamps states of one trajectory.
std::uint64_t hash_initial(const StepFn& x, const StepFn& v) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    __builtin_memcpy(&bits, &d, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (double b : x.partition().breaks()) mix(b);
  for (double val : x.values()) mix(val);
  for (double b : v.partition().breaks()) mix(b);
  for (double val : v.values()) mix(val);
  return h;
}

bool breaks_subset(const std::vector<double>& sub, const std::vector<double>& super) {
  std::size_t j = 0;
  for (double b : sub) {
    while (j < super.size() && super[j] < b) ++j;
    if (j == super.size() || super[j] != b) return false;
  }
  return true;
}

}  // namespace

LagrangianState::LagrangianState(double t, StepFn x, StepFn v, std::uint64_t provenance)
    : t_(t), x_(std::move(x)), v_(std::move(v)), provenance_(provenance) {
  if (t_ < 0.0) throw std::invalid_argument("LagrangianState: time must be >= 0");
  if (!x_.is_nondecreasing()) throw std::invalid_argument("LagrangianState: X must be nondecreasing");
  // V in H_X: every plateau of X lies inside a plateau of V, i.e. the
  // canonical breakpoints of V are breakpoints of X
  if (!breaks_subset(v_.partition().breaks(), x_.partition().breaks()))
    throw std::invalid_argument("LagrangianState: V must be constant on the plateaus of X");
}

LagrangianState LagrangianState::initial(const MassVelocityState& mu) {
  StepFn x = quantile(mu.measure());
  StepFn v = quantile_velocity(mu);
  // the measure() path and the velocity path share cumulative breakpoints,
  // but canonicalization may merge different cells; rebuild V on X's breaks
  if (!breaks_subset(v.partition().breaks(), x.partition().breaks())) {
    auto [xa, va] = refine_common(x, v);
    v = StepFn(xa.partition(), va.values());
  }
  const std::uint64_t id = hash_initial(x, v);
  return LagrangianState(0.0, std::move(x), std::move(v), id);
}

MassVelocityState LagrangianState::state() const {
  auto [xa, va] = refine_common(x_, v_);
  std::vector<MassVelocityState::Atom> atoms;
  atoms.reserve(xa.cells());
  for (std::size_t i = 0; i < xa.cells(); ++i)
    atoms.push_back({xa.partition().width(i), xa.value(i), va.value(i)});
  return MassVelocityState(std::move(atoms));
}

LagrangianState step(const LagrangianState& s0, double t) {
  if (s0.t() != 0.0) throw std::invalid_argument("step: initial state must sit at t = 0");
  if (t < 0.0) throw std::invalid_argument("step: t must be >= 0");
  StepFn xt = proj_k(affine_combo(s0.x(), 1.0, s0.v(), t));
  StepFn vt = proj_h(omega(xt), s0.v());
  return LagrangianState(t, std::move(xt), std::move(vt), s0.provenance());
}

LagrangianState step_from(const LagrangianState& s, double t) {
  if (t < s.t()) throw std::invalid_argument("step_from: t must be >= s.t");
  StepFn xt = proj_k(affine_combo(s.x(), 1.0, s.v(), t - s.t()));
  StepFn vt = proj_h(omega(xt), s.v());
  return LagrangianState(t, std::move(xt), std::move(vt), s.provenance());
}

double residual_li(const LagrangianState& s0, double t, double dt) {
  if (t < 0.0 || !(dt > 0.0)) throw std::invalid_argument("residual_li: need t >= 0 and dt > 0");
  const LagrangianState a = step(s0, t);
  const LagrangianState b = step(s0, t + dt);
  const StepFn rate = affine_combo(b.x(), 1.0 / dt, a.x(), -1.0 / dt);
  const StepFn xi = s0.v() - rate;
  const PwLinearFn Xi = primitive(xi);
  double score = std::max(0.0, -Xi.min_knot_value());
  for (double w : a.x().partition().breaks()) score = std::max(score, std::abs(Xi(w)));
  return score;
}

double residual_liii(const LagrangianState& s0, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("residual_liii: t must be positive");
  const LagrangianState s = step(s0, t);
  const StepFn lhs = t * s.v();
  const StepFn rhs = s.x() - proj_h(omega(s.x()), s0.x());
  return lp_distance(lhs, rhs, 2.0);
}

std::vector<std::pair<double, double>> initial_velocity_check(const LagrangianState& s0,
                                                              const std::vector<double>& times) {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0)) throw std::invalid_argument("initial_velocity_check: times must be positive");
    const LagrangianState s = step(s0, t);
    const StepFn rate = affine_combo(s.x(), 1.0 / t, s0.x(), -1.0 / t);
    rows.emplace_back(t, lp_distance(rate, s0.v(), 2.0));
  }
  return rows;
}

TransportMap transport_map(const LagrangianState& s, const LagrangianState& t) {
  if (s.provenance() != t.provenance() || s.t() > t.t())
    throw std::invalid_argument("transport_map: states must lie on one trajectory in time order");
  const auto& sb = s.x().partition().breaks();
  const auto& tb = t.x().partition().breaks();
  if (!breaks_subset(tb, sb))
    throw std::invalid_argument("transport_map: cluster ranges are incompatible (not one trajectory)");

  TransportMap map;
  map.source_atoms = s.x().cells();
  map.target_atoms = t.x().cells();
  std::size_t target = 0;
  for (std::size_t i = 0; i < s.x().cells(); ++i) {
    while (target + 1 < t.x().cells() && sb[i] >= tb[target + 1]) ++target;
    map.entries.push_back({i, target, s.x().partition().width(i)});
  }
  return map;
}

double energy(const LagrangianState& s, const std::function<double(double)>& psi) {
  return integrate_cellwise(s.v(), psi);
}

bool oleinik_check(const LagrangianState& s, double tol) {
  if (!(s.t() > 0.0)) throw std::invalid_argument("oleinik_check: state time must be positive");
  const auto mu = s.state();
  const auto& atoms = mu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[j].velocity - atoms[i].velocity >
          (atoms[j].position - atoms[i].position) / s.t() + tol)
        return false;
  return true;
}

}  // namespace adhesion1d
