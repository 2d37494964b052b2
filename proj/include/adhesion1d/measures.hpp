#pragma once

#include <functional>
#include <optional>

#include "adhesion1d/step_fn.hpp"

namespace adhesion1d {

// Finite atomic probability measure: (mass, position) atoms sorted by
// position, coincident positions merged at construction.
class DiscreteMeasure {
 public:
  struct Atom {
    double mass;
    double position;
  };

  explicit DiscreteMeasure(std::vector<Atom> atoms);
  static DiscreteMeasure dirac(double position) { return DiscreteMeasure({{1.0, position}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

// Phase point mu = (rho, rho v): atoms (mass, position, velocity), sorted by
// position; coincident positions merge with the mass-weighted velocity, the
// sticky semantics of a collision.
class MassVelocityState {
 public:
  struct Atom {
    double mass;
    double position;
    double velocity;
  };

  explicit MassVelocityState(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  DiscreteMeasure measure() const;
  double momentum() const;

 private:
  std::vector<Atom> atoms_;
};

// Convex transport cost psi: either |r|^p or a user piecewise-linear convex
// even function.
class CostSpec {
 public:
  static CostSpec power(double p);
  static CostSpec piecewise_linear(PwLinearFn psi);

  double operator()(double r) const;

 private:
  CostSpec() = default;
  std::optional<double> p_;
  std::optional<PwLinearFn> psi_;
};

// Monotone rearrangement: the pseudo-inverse of the distribution function.
// Cell widths are the atom masses, values the atom positions.
StepFn quantile(const DiscreteMeasure& rho);
// Velocity in quantile coordinates, V = v o X, on the same partition.
StepFn quantile_velocity(const MassVelocityState& mu);

// Push-forward of Lebesgue on (0,1) through a nondecreasing step function.
DiscreteMeasure measure_of(const StepFn& x);

double wasserstein(const DiscreteMeasure& r1, const DiscreteMeasure& r2, double p);
double transport_cost(const DiscreteMeasure& r1, const DiscreteMeasure& r2, const CostSpec& psi);

// U_p semi-distance between phase points (velocity mismatch along the
// monotone coupling); p in [1, inf).
double u_dist(const MassVelocityState& m1, const MassVelocityState& m2, double p);
// D_p = (W_p^p + U_p^p)^(1/p)
double d_dist(const MassVelocityState& m1, const MassVelocityState& m2, double p);
// D_p against (delta_0, 0)
double pseudo_norm(const MassVelocityState& mu, double p);

// N equal-mass atoms at the midpoint quantiles X((i-1/2)/N); velocity is
// sampled in quantile coordinates from V, or at atom positions from v(x).
MassVelocityState discretize(const StepFn& x_quantile, const StepFn& v_quantile, std::size_t n);
MassVelocityState discretize(const std::function<double(double)>& x_of_w,
                             const std::function<double(double)>& v_of_x, std::size_t n);

// Fixed bounded-Lipschitz dictionary used as the finite surrogate for weak
// convergence of momenta.
const std::vector<std::function<double(double)>>& bl_dictionary();
double momentum_pairing(const MassVelocityState& mu, const std::function<double(double)>& zeta);

}  // namespace adhesion1d
