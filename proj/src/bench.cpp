#include "adhesion1d/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "adhesion1d/cone.hpp"
#include "adhesion1d/io.hpp"
#include "adhesion1d/numeric.hpp"
#include "adhesion1d/particles.hpp"
#include "adhesion1d/rng.hpp"

namespace adhesion1d {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

MassVelocityState all_merging_state(std::size_t n, SplitMix64& rng) {
  std::vector<double> pos(n), vel(n), mass(n);
  for (auto& x : pos) x = rng.uniform();
  for (auto& v : vel) v = rng.uniform();
  std::sort(pos.begin(), pos.end());
  std::sort(vel.begin(), vel.end());
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (pos[i + 1] <= pos[i]) pos[i + 1] = std::nextafter(pos[i], 2.0);

  NeumaierSum total;
  for (auto& m : mass) {
    m = rng.uniform(0.5, 1.0);
    total.add(m);
  }
  const double sum = total.get();
  NeumaierSum renorm;
  for (auto& m : mass) {
    m /= sum;
    renorm.add(m);
  }
  mass.back() += 1.0 - renorm.get();

  std::vector<MassVelocityState::Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i) {
    // velocities strictly decreasing in space: every adjacent gap closes
    atoms[i] = {mass[i], pos[i], -vel[i]};
  }
  return MassVelocityState(std::move(atoms));
}

}  // namespace

std::vector<BenchRow> run_bench(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("bench: n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<BenchRow> rows;

  {
    std::vector<double> breaks(n + 1), values(n);
    for (std::size_t i = 0; i <= n; ++i) breaks[i] = rng.uniform();
    breaks.front() = 0.0;
    breaks.back() = 1.0;
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      if (breaks[i + 1] <= breaks[i]) breaks[i + 1] = std::nextafter(breaks[i], 2.0);
    breaks.back() = 1.0;
    for (auto& v : values) v = rng.uniform(-1.0, 1.0);
    const StepFn f(Partition(std::move(breaks)), std::move(values));

    const auto start = Clock::now();
    const StepFn g = proj_k(f);
    const double dt = seconds_since(start);
    if (!g.is_nondecreasing()) throw std::logic_error("bench: projection output not monotone");
    rows.push_back({"proj_k", n, dt});
  }

  {
    const MassVelocityState mu = all_merging_state(n, rng);
    ParticleSystem sys(mu);
    const auto start = Clock::now();
    sys.evolve(1e300);
    const double dt = seconds_since(start);
    if (sys.cluster_count() != 1) throw std::logic_error("bench: system did not fully merge");
    rows.push_back({"evolve_total_merge", n, dt});
  }
  return rows;
}

void write_bench(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "op,n,seconds\n";
  for (const auto& r : rows) os << r.op << ',' << r.n << ',' << fmt_double(r.seconds) << '\n';
}

}  // namespace adhesion1d
