#pragma once

#include <optional>
#include <vector>

#include "twl/defs.hpp"
#include "twl/primes.hpp"
#include "twl/stats.hpp"

namespace twl {

// Solutions of the truncated Wilson congruence
//   (p-1)(p-2)...(p-r) = -1 (mod p)
// for the nontrivial indices 2 <= r <= p-3.

enum class ScanEngine { full, half };

ScanEngine parse_engine(const std::string& name);

struct SolutionProfile {
  u64 p = 0;
  u64 count = 0;
  // ascending solution indices; populated only when enumeration is requested
  std::optional<std::vector<u64>> solutions;
};

// Scans r = 2..p-3 with one modular multiplication per step. Primes 2 and 3
// have an empty nontrivial range and report count 0.
SolutionProfile count_solutions_full(u64 p, bool enumerate = false);

// Scans only r = 2..(p-3)/2 and recovers the upper half through the pairing
// r <-> p-r-1: an odd r with T_r = -1 contributes both indices; an even r
// contributes one index iff T_r = +-1. The self-paired middle index
// r = (p-1)/2 is a solution iff p = 3 (mod 4) and ((p-1)/2)! = 1 (mod p);
// for p = 1 (mod 4) it never is, since then T_{(p-1)/2}^2 = -1. Requires
// p >= 5.
SolutionProfile count_solutions_half(u64 p, bool enumerate = false);

// Engine dispatch; routes p in {2, 3} through the trivial full-scan path.
SolutionProfile count_solutions(u64 p, ScanEngine engine, bool enumerate = false);

// Tallies solution counts for every prime in the range. Deterministic for a
// fixed range regardless of how callers segment the work.
Histogram solutions_histogram(PrimeRange range, ScanEngine engine);

}  // namespace twl
