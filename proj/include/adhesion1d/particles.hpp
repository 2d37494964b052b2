#pragma once

#include <cstdint>
#include <optional>

#include "adhesion1d/measures.hpp"

namespace adhesion1d {

// One inelastic merge: clusters [first, last] of the pre-collision ordering
// coalesce at time t with the mass-weighted mean velocity.
struct CollisionEvent {
  double time;
  std::size_t first_index;  // original particle indices spanned by the merge
  std::size_t last_index;
  std::vector<double> pre_velocities;
  double post_velocity;
};

struct TrajectoryRow {
  double time;
  std::size_t cluster_id;  // first original particle index of the cluster
  double mass;
  double position;
  double velocity;
};

// Event-driven sticky particle system: free flight between collisions, exact
// collision times for adjacent pairs, chains merged in one sweep. Positions
// are updated affinely from each cluster's last event, never incrementally.
class ParticleSystem {
 public:
  explicit ParticleSystem(const MassVelocityState& initial);

  double time() const { return time_; }
  std::size_t cluster_count() const { return alive_; }
  const std::vector<CollisionEvent>& event_log() const { return events_; }

  // Earliest future collision time and the adjacent pairs (left cluster ids)
  // that reach contact simultaneously (within relative tolerance 1e-12).
  // Empty when velocities are spatially nondecreasing.
  std::optional<std::pair<double, std::vector<std::size_t>>> next_collision() const;

  // Merge the given simultaneous contact pairs at the current time. Pairs are
  // identified by the left cluster id and must be adjacent and in contact
  // (positions within 1e-12 absolute).
  void merge(const std::vector<std::size_t>& pair_left_ids);

  // Advance through every collision up to t_target.
  void evolve(double t_target);

  MassVelocityState state() const;
  std::vector<TrajectoryRow> snapshot() const;

  double total_mass() const;
  double total_momentum() const;
  double kinetic_energy() const;

 private:
  struct Cluster {
    double mass;
    double ref_position;  // position at ref_time
    double ref_time;
    double velocity;
    std::size_t first;  // original particle index range [first, last]
    std::size_t last;
    std::uint64_t version;
    std::size_t prev, next;  // intrusive list over alive clusters
    bool alive;
  };

  struct PairEvent {
    double time;
    std::size_t left;
    std::uint64_t version_left, version_right;
    bool operator>(const PairEvent& o) const { return time > o.time; }
  };

  double position_at(const Cluster& c, double t) const { return c.ref_position + (t - c.ref_time) * c.velocity; }
  std::optional<double> contact_time(std::size_t left) const;
  void schedule(std::size_t left);
  void drop_stale() const;

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<Cluster> clusters_;
  std::size_t head_ = 0;
  std::size_t alive_ = 0;
  double time_ = 0.0;
  std::vector<CollisionEvent> events_;
  std::uint64_t version_counter_ = 0;
  // min-heap on collision time, entries invalidated by version stamps
  mutable std::vector<PairEvent> heap_;
};

// Evolve a copy of the system over a nondecreasing time grid, recording every
// cluster at every sample time.
std::vector<TrajectoryRow> trajectory(const ParticleSystem& initial, const std::vector<double>& times);

}  // namespace adhesion1d
