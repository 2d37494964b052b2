#pragma once

#include <cstdint>
#include <string>

#include "adhesion1d/scenario.hpp"

namespace adhesion1d {

// One property check: passes iff measured <= threshold.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass() const { return measured <= threshold; }
};

struct ReportRecord {
  std::string scenario_id;
  std::string check;
  bool pass;
  double measured;
  double threshold;
  double runtime_s;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  double tol = 1e-9;              // agreement tolerance for dual-route checks
  bool corrupt_velocity = false;  // negative control: perturb the particle route
  double event_window = 1e-6;     // exclusion window around collision times
  int scale = 1;                  // corpus size multiplier
};

// All collision times of the system started from mu, up to t_max.
std::vector<double> collision_times(const MassVelocityState& mu, double t_max);

// ---- cone: projection and subdifferential properties ----
CheckResult check_variational(std::uint64_t seed, int cases, int z_per_case, int max_cells,
                              double tol);
CheckResult check_complementarity(std::uint64_t seed, int cases, int max_cells, double tol);
CheckResult check_lp_contraction(std::uint64_t seed, int pairs, int max_cells);
CheckResult check_quartic_contraction(std::uint64_t seed, int pairs, int max_cells);
CheckResult check_plateau_monotonicity(std::uint64_t seed, int cases, int max_cells);
CheckResult check_decomposition(std::uint64_t seed, int cases, int max_cells);
CheckResult check_minimal_selection(std::uint64_t seed, int cases, int max_cells);
CheckResult check_polar_membership(std::uint64_t seed, int cases, int max_cells);

// ---- equivalence: event-driven vs Lagrangian, semigroup identities ----
CheckResult check_discrete_vs_lagrangian(std::uint64_t seed, int scenarios, int max_atoms,
                                         int sample_times, double t_max, double tol,
                                         bool corrupt_velocity = false);
CheckResult check_dual_path(std::uint64_t seed, int scenarios, int max_atoms, double tol);
CheckResult check_liii_residual(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_li_smooth(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_li_refinement(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_right_continuity(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_initial_velocity_trend(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_transport_identities(std::uint64_t seed, int scenarios, int max_atoms,
                                       double tol);

// ---- stability: estimates against the initial data ----
CheckResult check_wp_stability(std::uint64_t seed, int pairs, int max_atoms);
CheckResult check_quartic_stability(std::uint64_t seed, int pairs, int max_atoms);
// Returns the observed max ratio of Eq.-style integrated velocity bounds.
CheckResult check_integrated_velocity(std::uint64_t seed, int pairs, int max_atoms);
CheckResult check_time_lipschitz(std::uint64_t seed, int cases, int max_atoms);
CheckResult check_vnorm_monotone(std::uint64_t seed, int cases, int max_atoms);
CheckResult check_discretize_refinement();
CheckResult check_weak_dictionary();

// ---- entropy: conservation, dissipation, Eulerian agreement ----
CheckResult check_mass_conservation(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_momentum_conservation(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_energy_dissipation(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_oleinik(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_hopf_agreement(std::uint64_t seed, int scenarios, int max_atoms, double tol);
CheckResult check_godunov_monotone(std::uint64_t seed, int scenarios,
                                   const std::vector<double>& dxs);
CheckResult check_godunov_final_error(std::uint64_t seed, int scenarios,
                                      const std::vector<double>& dxs, double threshold);

// ---- gradflow: implicit Euler, EVI, limit construction ----
CheckResult check_gf_interior_step(std::uint64_t seed, int cases);
CheckResult check_gf_order(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_evi(std::uint64_t seed, int scenarios, int etas_per, int max_atoms,
                      double window);
CheckResult check_limit_monotone(std::uint64_t seed, int scenarios, int max_atoms);
CheckResult check_limit_generic(std::uint64_t seed, int scenarios, int max_atoms);

// ---- suite runner ----
const std::vector<std::string>& suite_names();
std::vector<ReportRecord> run_suite(const std::string& suite, const Scenario& scenario,
                                    const SuiteOptions& options);

}  // namespace adhesion1d
