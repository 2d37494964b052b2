#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "adhesion1d/measures.hpp"
#include "adhesion1d/rng.hpp"

namespace adhesion1d {

// One reproducible experiment: an initial phase point, sample times, and the
// named check suites to run against it. Parsed strictly from JSON; unknown
// fields are rejected so archived runs stay unambiguous.
struct Scenario {
  std::string id;
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<std::string> suites;
  std::map<std::string, double> tolerances;

  MassVelocityState initial() const;

  // resolved initial data source (exactly one is set)
  std::vector<MassVelocityState::Atom> inline_atoms;
  std::string csv_path;
  std::string family_json;  // family spec kept verbatim for reproducibility
  bool renormalize = false;

  static Scenario from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir = {});
};

// Parse a scenario file: either one scenario object or a bundle
// {"version":1, "scenarios":[...]}.
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

// Scenarios compiled into the binary, used when no --scenario is given.
std::vector<Scenario> bundled_scenarios();

// FNV-1a hash of the canonical serialized configuration; lands in the run
// manifest so outputs can be matched to their inputs.
std::uint64_t config_hash(const std::string& canonical_text);

// --- corpus generators used by the verification suites ---

// Uniform masses (normalized, residual-corrected), sorted uniform positions,
// uniform velocities.
MassVelocityState random_state(SplitMix64& rng, std::size_t n,
                               double pos_lo = 0.0, double pos_hi = 1.0,
                               double vel_lo = -1.0, double vel_hi = 1.0);

// Same corpus but with adjacent gaps at least min_gap, so the first collision
// happens no earlier than min_gap / (2 * vel_scale).
MassVelocityState random_spread_state(SplitMix64& rng, std::size_t n, double min_gap,
                                      double vel_scale = 1.0);

// Velocities nondecreasing in position: no collision ever happens.
MassVelocityState random_monotone_velocity_state(SplitMix64& rng, std::size_t n);

// Random nondecreasing step function with the given cell count.
StepFn random_monotone_fn(SplitMix64& rng, std::size_t cells,
                          double lo = -1.0, double hi = 1.0);
// Random step function, values uniform in [lo, hi].
StepFn random_step_fn(SplitMix64& rng, std::size_t cells,
                      double lo = -1.0, double hi = 1.0);

// Random element of the subdifferential of I_K at g: a sum of scaled tent
// primitives, one inside each selected plateau of g.
StepFn random_subdifferential_element(SplitMix64& rng, const StepFn& g);

}  // namespace adhesion1d
