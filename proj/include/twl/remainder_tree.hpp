#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "twl/defs.hpp"

namespace twl {

// Batch computation of r_p = ((p-1)/2)! mod p for primes p = 3 (mod 4).
//
// An interval (m, n) covers the odd integers k with 2m < k < 2n. Over each
// tree node (a, b) — children split at c = floor((a+b)/2) — three values
// are maintained:
//   P = product of the primes = 3 (mod 4) among those k,
//   V = product of (k+1)/2 over all such k, which telescopes to b!/a!,
//   X = a! mod P.
// P and V flow bottom-up; X flows top-down from X_root = m! mod P_root via
//   X_left = X mod P_left,  X_right = X * V_left mod P_right.
// A leaf holding the single prime p then carries X = ((p-1)/2)! mod p.

struct Interval {
  u64 m = 0;
  u64 n = 0;

  u64 size() const { return n - m; }  // number of covered odd integers
  void validate() const;              // m >= 1, n > m, 2n within capacity
};

struct HalfFactResult {
  u64 p = 0;
  u64 r = 0;  // ((p-1)/2)! mod p, in {1, p-1}

  bool nu_even() const { return r == 1; }
  friend bool operator==(const HalfFactResult&, const HalfFactResult&) = default;
};

// m! mod modulus by balanced binary splitting, reducing partial products
// once they exceed twice the modulus bit length. modulus must be >= 1;
// modulus 1 yields 0.
mpz_class factorial_mod(u64 m, const mpz_class& modulus);

struct TreeNode {
  u64 a = 0;
  u64 b = 0;
  mpz_class P{1};
  mpz_class V{1};
  mpz_class X{0};
};

class RemainderTree {
 public:
  // leaf_max = 1 reproduces the full-depth tree whose leaves cover at most
  // one odd integer; larger cutoffs stop early and finish each leaf by a
  // direct word-size scan. retain_nodes keeps all node values alive for
  // inspection instead of releasing them level by level.
  explicit RemainderTree(Interval iv, u64 leaf_max = 1, bool retain_nodes = false);

  void run();
  std::vector<HalfFactResult> take_results();

  std::size_t depth() const { return levels_.size(); }
  const std::vector<TreeNode>& level(std::size_t d) const { return levels_[d]; }
  const TreeNode& root() const { return levels_.front().front(); }

 private:
  void build_structure();
  void compute_products();
  void descend();
  void extract();

  Interval iv_;
  u64 leaf_max_;
  bool retain_nodes_;
  std::vector<u64> primes_;  // primes = 3 (mod 4) in (2m, 2n), ascending
  std::vector<std::vector<TreeNode>> levels_;
  std::vector<HalfFactResult> results_;
};

// One result per prime p = 3 (mod 4) with 2m < p < 2n, ascending.
std::vector<HalfFactResult> half_factorial_batch(Interval iv, u64 leaf_max = 64);

// Direct O(p) oracle: (p-1)/2 modular multiplications.
// Throws std::invalid_argument unless p is a prime = 3 (mod 4).
HalfFactResult half_factorial_direct(u64 p);

// nu_p: the number of quadratic non-residues 1 < x < p/2, found by Euler's
// criterion. Its parity determines r_p: r_p = 1 iff nu_p is even.
u64 quadratic_nonresidues_below_half(u64 p);

}  // namespace twl
