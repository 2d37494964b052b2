#pragma once

#include "adhesion1d/semigroup.hpp"

namespace adhesion1d {

// Flux A(w) = int_0^w V0 of the scalar conservation law satisfied by the CDF.
struct FluxFunction {
  PwLinearFn a;

  double max_speed() const;
  // Exact extrema of the piecewise-linear flux over [lo, hi] (knot scan).
  double range_min(double lo, double hi) const;
  double range_max(double lo, double hi) const;
};

// Right-continuous step CDF: levels[i] on (xs[i-1], xs[i]); levels.front()
// left of all breaks, levels.back() to the right.
class CdfSolution {
 public:
  CdfSolution(std::vector<double> xs, std::vector<double> levels, double t);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& levels() const { return levels_; }
  double t() const { return t_; }

  double operator()(double x) const;
  bool is_monotone(double tol = 0.0) const;

  // Jumps above the height threshold as (position, level after the jump).
  std::vector<std::pair<double, double>> jumps(double min_height = 1e-12) const;

 private:
  std::vector<double> xs_;
  std::vector<double> levels_;
  double t_;
};

FluxFunction flux_of(const MassVelocityState& state0);

// Entropy solution CDF at time t through the conjugate representation
// G_t = (F0 + tA)* applied to the convex envelope; exact knot algebra.
CdfSolution hopf_solution(const MassVelocityState& state0, double t);

// CDF of an atomic measure.
CdfSolution cdf_of(const DiscreteMeasure& rho, double t = 0.0);

// Structural discrepancy between two step CDFs: max over matched jumps of
// |position difference| and |level difference|; +inf when the jump counts
// differ.
double cdf_discrepancy(const CdfSolution& a, const CdfSolution& b);

// Exact L1 distance between two step CDFs over the hull of their breaks.
double l1_distance(const CdfSolution& a, const CdfSolution& b);

// First-order Godunov finite-volume oracle for dM/dt + dA(M)/dx = 0 with the
// exact piecewise-linear Riemann flux; independent numerical check of the
// Hopf route. Requires dx > 0 and 0 < cfl <= 0.9.
CdfSolution godunov_oracle(const MassVelocityState& state0, double t, double dx, double cfl);

// phi^sigma(rho) = -1/2 W_2^2(rho, sigma)
double phi(const DiscreteMeasure& rho, const DiscreteMeasure& sigma);

// One implicit Euler step of the rescaled flow dX/dtau in -dI_K(X) + X - Xs:
// closed form Proj_K((X - h Xs)/(1 - h)); requires h in (0,1).
StepFn gradient_flow_step(const StepFn& x, const StepFn& x_sigma, double h);

// Iterate the step over a tau interval of the given span (last step partial).
// Returns the path including the initial point, as (tau offset, X).
std::vector<std::pair<double, StepFn>> gradient_flow_run(const DiscreteMeasure& rho_start,
                                                         const DiscreteMeasure& rho_sigma,
                                                         double tau_span, double h);

// Positive part of the Evolution Variational Inequality defect at time t
// along the trajectory of s0, against the test measure eta; the time
// derivative uses a symmetric difference with dt = rel_dt * t.
double evi_residual(const LagrangianState& s0, double t, const DiscreteMeasure& eta,
                    double rel_dt = 1e-4);

struct LimitRow {
  double eps;
  double w2_error;      // W_2 between the true solution and the flow iterate
  double m_eps_bound;   // feasible upper bound for the BL(eps) approximation
};

// Limit representation of the solution: push rho0 through i + eps*v0, flow it
// for log(t/eps), compare with the semigroup solution at t.
std::vector<LimitRow> limit_construction(const MassVelocityState& state0, double t,
                                         const std::vector<double>& eps_seq, double h);
std::vector<double> default_eps_sequence(double t, std::size_t k_max = 6);

}  // namespace adhesion1d
