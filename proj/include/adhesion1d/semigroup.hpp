#pragma once

#include <cstdint>

#include "adhesion1d/cone.hpp"
#include "adhesion1d/measures.hpp"

namespace adhesion1d {

// Lagrangian phase point: a nondecreasing quantile X and a velocity V that is
// constant on every plateau of X. States produced from the same initial datum
// share a provenance id so that transport maps can insist on one trajectory.
class LagrangianState {
 public:
  LagrangianState(double t, StepFn x, StepFn v, std::uint64_t provenance);

  static LagrangianState initial(const MassVelocityState& mu);

  double t() const { return t_; }
  const StepFn& x() const { return x_; }
  const StepFn& v() const { return v_; }
  std::uint64_t provenance() const { return provenance_; }

  MassVelocityState state() const;

 private:
  double t_;
  StepFn x_;
  StepFn v_;
  std::uint64_t provenance_;
};

// Monotone atom-level assignment between two states on one trajectory;
// clusters only merge, so each target atom owns a contiguous source range.
struct TransportMap {
  struct Entry {
    std::size_t source;
    std::size_t target;
    double weight;  // source mass carried into the target
  };
  std::vector<Entry> entries;
  std::size_t source_atoms = 0;
  std::size_t target_atoms = 0;
};

// X(t) = Proj_K(X0 + t V0), V(t) = Proj_{H_X(t)}(V0). Requires s0.t == 0.
LagrangianState step(const LagrangianState& s0, double t);

// Semigroup step from an intermediate state:
// X(t) = Proj_K(X(s) + (t-s) V(s)), V(t) = Proj_{H_X(t)}(V(s)).
LagrangianState step_from(const LagrangianState& s, double t);

// Violation score of the subdifferential inclusion dX/dt in -dI_K(X) + V0,
// measured on the forward difference quotient over [t, t+dt]: the primitive
// of V0 - (X(t+dt)-X(t))/dt must stay nonnegative and vanish at the
// breakpoints of X(t). Zero (to round-off) whenever [t, t+dt] contains no
// collision.
double residual_li(const LagrangianState& s0, double t, double dt);

// Exact identity t V(t) = X(t) - Proj_{H_X(t)}(X0) in the L2 norm; t > 0.
double residual_liii(const LagrangianState& s0, double t);

// Rows (t, ||(X(t)-X0)/t - V0||_2) along a sequence of times decreasing to 0.
std::vector<std::pair<double, double>> initial_velocity_check(const LagrangianState& s0,
                                                              const std::vector<double>& times);

// Monotone transport map between two states of one trajectory (s.t <= t.t).
TransportMap transport_map(const LagrangianState& s, const LagrangianState& t);

// Sum m_i psi(v_i)
double energy(const LagrangianState& s, const std::function<double(double)>& psi);

// One-sided Lipschitz entropy bound v(x2) - v(x1) <= (x2-x1)/t + tol over all
// atom pairs; s.t must be positive.
bool oleinik_check(const LagrangianState& s, double tol = 1e-9);

}  // namespace adhesion1d
