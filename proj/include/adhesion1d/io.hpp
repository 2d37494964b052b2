#pragma once

#include <iosfwd>
#include <string>

#include "adhesion1d/gradflow.hpp"
#include "adhesion1d/particles.hpp"

namespace adhesion1d {

// Shortest decimal representation that round-trips the double exactly.
std::string fmt_double(double value);
double parse_double(const std::string& text);

// StepFn wire format: `w_left,value` rows plus the trailing sentinel row for
// the right endpoint with an empty value field.
void write_step_fn(std::ostream& os, const StepFn& f);
StepFn read_step_fn(std::istream& is);

// MassVelocityState wire format: header `m,x,v`, one atom per row. The mass
// column must sum to 1 within 1e-9; with renormalize the masses are rescaled
// instead of rejected.
void write_state(std::ostream& os, const MassVelocityState& mu);
MassVelocityState read_state(std::istream& is, bool renormalize = false);

void write_trajectory(std::ostream& os, const std::vector<TrajectoryRow>& rows);
void write_event_log(std::ostream& os, const std::vector<CollisionEvent>& events);

// Quantile snapshots `t,w_left,X,V`, one row per cell of the common
// refinement, preceded by the provenance header line.
void write_snapshots(std::ostream& os, const std::string& scenario_id,
                     const std::vector<LagrangianState>& states);

void write_cdf(std::ostream& os, const CdfSolution& m);
void write_table(std::ostream& os, const std::string& param_name,
                 const std::vector<std::pair<double, double>>& rows);

}  // namespace adhesion1d
