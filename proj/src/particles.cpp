#include "adhesion1d/particles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adhesion1d/numeric.hpp"

namespace adhesion1d {

namespace {

constexpr double kEventRelTol = 1e-12;   // collisions closer than this are simultaneous
constexpr double kContactAbsTol = 1e-12; // positions this close count as touching

}  // namespace

ParticleSystem::ParticleSystem(const MassVelocityState& initial) {
  const auto& atoms = initial.atoms();
  clusters_.resize(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Cluster& c = clusters_[i];
    c.mass = atoms[i].mass;
    c.ref_position = atoms[i].position;
    c.ref_time = 0.0;
    c.velocity = atoms[i].velocity;
    c.first = i;
    c.last = i;
    c.version = ++version_counter_;
    c.prev = (i == 0) ? kNone : i - 1;
    c.next = (i + 1 == atoms.size()) ? kNone : i + 1;
    c.alive = true;
  }
  head_ = 0;
  alive_ = atoms.size();
  heap_.reserve(2 * atoms.size());
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) schedule(i);
}

std::optional<double> ParticleSystem::contact_time(std::size_t left) const {
  const Cluster& a = clusters_[left];
  if (!a.alive || a.next == kNone) return std::nullopt;
  const Cluster& b = clusters_[a.next];
  const double dv = a.velocity - b.velocity;
  if (!(dv > 0.0)) return std::nullopt;  // gap never closes
  // solve a.pos(t) == b.pos(t) with both positions affine from their refs
  const double t = ((b.ref_position - b.ref_time * b.velocity) -
                    (a.ref_position - a.ref_time * a.velocity)) / dv;
  if (t < time_) return time_;  // already touching within round-off
  return t;
}

void ParticleSystem::schedule(std::size_t left) {
  const auto t = contact_time(left);
  if (!t) return;
  heap_.push_back({*t, left, clusters_[left].version, clusters_[clusters_[left].next].version});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
}

void ParticleSystem::drop_stale() const {
  while (!heap_.empty()) {
    const PairEvent& e = heap_.front();
    const Cluster& a = clusters_[e.left];
    if (a.alive && a.next != kNone && a.version == e.version_left &&
        clusters_[a.next].version == e.version_right)
      return;
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    heap_.pop_back();
  }
}

std::optional<std::pair<double, std::vector<std::size_t>>> ParticleSystem::next_collision() const {
  drop_stale();
  if (heap_.empty()) return std::nullopt;
  const double t_star = heap_.front().time;
  const double window = kEventRelTol * (1.0 + std::abs(t_star));
  // collect every valid pair within the simultaneity window
  std::vector<std::size_t> pairs;
  std::vector<PairEvent> popped;
  while (true) {
    drop_stale();
    if (heap_.empty() || heap_.front().time > t_star + window) break;
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    popped.push_back(heap_.back());
    heap_.pop_back();
    pairs.push_back(popped.back().left);
  }
  for (const auto& e : popped) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return std::make_pair(t_star, std::move(pairs));
}

void ParticleSystem::merge(const std::vector<std::size_t>& pair_left_ids) {
  if (pair_left_ids.empty()) return;
  for (std::size_t id : pair_left_ids) {
    if (id >= clusters_.size() || !clusters_[id].alive || clusters_[id].next == kNone)
      throw std::invalid_argument("merge: not an adjacent alive pair");
    const double xa = position_at(clusters_[id], time_);
    const double xb = position_at(clusters_[clusters_[id].next], time_);
    if (std::abs(xa - xb) > kContactAbsTol * (1.0 + std::abs(xa)))
      throw std::invalid_argument("merge: pair is not in contact at the current time");
  }

  std::vector<std::size_t> ids(pair_left_ids);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  // maximal chains of touching pairs, merged in one sweep
  std::size_t k = 0;
  while (k < ids.size()) {
    const std::size_t chain_start = ids[k];
    std::size_t chain_end = clusters_[chain_start].next;
    ++k;
    while (k < ids.size() && ids[k] == chain_end) {
      chain_end = clusters_[chain_end].next;
      ++k;
    }

    NeumaierSum mass, momentum, weighted_pos;
    std::vector<double> pre;
    for (std::size_t c = chain_start;; c = clusters_[c].next) {
      mass.add(clusters_[c].mass);
      momentum.add(clusters_[c].mass * clusters_[c].velocity);
      weighted_pos.add(clusters_[c].mass * position_at(clusters_[c], time_));
      pre.push_back(clusters_[c].velocity);
      if (c == chain_end) break;
    }
    const double m = mass.get();
    const double v = momentum.get() / m;
    const double x = weighted_pos.get() / m;

    Cluster& lead = clusters_[chain_start];
    events_.push_back({time_, lead.first, clusters_[chain_end].last, std::move(pre), v});

    const std::size_t after = clusters_[chain_end].next;
    for (std::size_t c = lead.next;; ) {
      const std::size_t nxt = clusters_[c].next;
      clusters_[c].alive = false;
      --alive_;
      if (c == chain_end) break;
      c = nxt;
    }
    lead.mass = m;
    lead.velocity = v;
    lead.ref_position = x;
    lead.ref_time = time_;
    lead.last = clusters_[chain_end].last;
    lead.version = ++version_counter_;
    lead.next = after;
    if (after != kNone) clusters_[after].prev = chain_start;

    if (lead.prev != kNone) schedule(lead.prev);
    if (lead.next != kNone) schedule(chain_start);
  }
}

void ParticleSystem::evolve(double t_target) {
  if (t_target < time_) throw std::invalid_argument("evolve: target time is in the past");
  while (true) {
    auto nc = next_collision();
    if (!nc || nc->first > t_target) break;
    time_ = std::max(time_, nc->first);
    merge(nc->second);
  }
  time_ = t_target;
}

MassVelocityState ParticleSystem::state() const {
  std::vector<MassVelocityState::Atom> atoms;
  atoms.reserve(alive_);
  for (std::size_t c = head_; c != kNone; c = clusters_[c].next)
    atoms.push_back({clusters_[c].mass, position_at(clusters_[c], time_), clusters_[c].velocity});
  return MassVelocityState(std::move(atoms));
}

std::vector<TrajectoryRow> ParticleSystem::snapshot() const {
  std::vector<TrajectoryRow> rows;
  rows.reserve(alive_);
  for (std::size_t c = head_; c != kNone; c = clusters_[c].next)
    rows.push_back({time_, clusters_[c].first, clusters_[c].mass,
                    position_at(clusters_[c], time_), clusters_[c].velocity});
  return rows;
}

double ParticleSystem::total_mass() const {
  NeumaierSum s;
  for (std::size_t c = head_; c != kNone; c = clusters_[c].next) s.add(clusters_[c].mass);
  return s.get();
}

double ParticleSystem::total_momentum() const {
  NeumaierSum s;
  for (std::size_t c = head_; c != kNone; c = clusters_[c].next)
    s.add(clusters_[c].mass * clusters_[c].velocity);
  return s.get();
}

double ParticleSystem::kinetic_energy() const {
  NeumaierSum s;
  for (std::size_t c = head_; c != kNone; c = clusters_[c].next)
    s.add(0.5 * clusters_[c].mass * clusters_[c].velocity * clusters_[c].velocity);
  return s.get();
}

std::vector<TrajectoryRow> trajectory(const ParticleSystem& initial, const std::vector<double>& times) {
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (times[i + 1] < times[i]) throw std::invalid_argument("trajectory: times must be nondecreasing");
  ParticleSystem sys(initial);
  std::vector<TrajectoryRow> rows;
  for (double t : times) {
    sys.evolve(t);
    auto snap = sys.snapshot();
    rows.insert(rows.end(), snap.begin(), snap.end());
  }
  return rows;
}

}  // namespace adhesion1d
