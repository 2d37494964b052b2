#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace adhesion1d {

struct BenchRow {
  std::string op;
  std::size_t n;
  double seconds;
};

// Single-threaded timings: proj_k on an n-cell random step function, and a
// full event-driven evolve of an n-particle system whose velocities decrease
// in space, so every particle eventually merges into one cluster.
std::vector<BenchRow> run_bench(std::size_t n, std::uint64_t seed);

void write_bench(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace adhesion1d
