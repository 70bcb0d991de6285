#include "twl/remainder_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "twl/modmul.hpp"
#include "twl/primes.hpp"

namespace twl {

void Interval::validate() const {
  if (m < 1) throw std::invalid_argument("interval: m must be >= 1");
  if (n <= m) throw std::invalid_argument("interval: n must exceed m");
  if (n > kCapacity / 2) throw std::out_of_range("interval: 2n exceeds 2^62 capacity");
}

namespace {

// product of the integers in [lo, hi], reduced whenever it outgrows the cap
mpz_class product_mod(u64 lo, u64 hi, const mpz_class& modulus, std::size_t cap_bits) {
  if (lo > hi) return 1;
  if (hi - lo < 32) {
    mpz_class acc = 1;
    for (u64 j = lo; j <= hi; ++j) {
      acc *= j;
      if (mpz_sizeinbase(acc.get_mpz_t(), 2) > cap_bits) acc %= modulus;
    }
    return acc;
  }
  const u64 mid = lo + (hi - lo) / 2;
  mpz_class left = product_mod(lo, mid, modulus, cap_bits);
  left *= product_mod(mid + 1, hi, modulus, cap_bits);
  if (mpz_sizeinbase(left.get_mpz_t(), 2) > cap_bits) left %= modulus;
  return left;
}

void release(mpz_class& z) { mpz_class().swap(z); }

}  // namespace

mpz_class factorial_mod(u64 m, const mpz_class& modulus) {
  if (modulus <= 0) throw std::invalid_argument("factorial_mod: modulus must be >= 1");
  if (modulus == 1) return 0;
  const std::size_t cap_bits = 2 * mpz_sizeinbase(modulus.get_mpz_t(), 2);
  mpz_class acc = m < 2 ? mpz_class(1) : product_mod(2, m, modulus, cap_bits);
  acc %= modulus;
  return acc;
}

RemainderTree::RemainderTree(Interval iv, u64 leaf_max, bool retain_nodes)
    : iv_(iv), leaf_max_(leaf_max ? leaf_max : 1), retain_nodes_(retain_nodes) {
  iv_.validate();
  primes_ = primes_vector(PrimeRange{2 * iv_.m + 1, 2 * iv_.n}, Mod4Filter::three);
}

void RemainderTree::build_structure() {
  levels_.clear();
  levels_.push_back({TreeNode{iv_.m, iv_.n}});
  while (true) {
    u64 widest = 0;
    for (const auto& node : levels_.back()) widest = std::max(widest, node.b - node.a);
    if (widest <= leaf_max_) break;
    std::vector<TreeNode> next;
    next.reserve(2 * levels_.back().size());
    for (const auto& node : levels_.back()) {
      const u64 c = node.a + (node.b - node.a) / 2;
      next.push_back(TreeNode{node.a, c});
      next.push_back(TreeNode{c, node.b});
    }
    levels_.push_back(std::move(next));
  }
}

void RemainderTree::compute_products() {
  auto& leaves = levels_.back();
  for (auto& leaf : leaves) {
    // V over the leaf is the product of (k+1)/2 for odd k in (2a, 2b),
    // i.e. of the integers a+1 .. b
    for (u64 j = leaf.a + 1; j <= leaf.b; ++j) leaf.V *= j;
    const auto first = std::lower_bound(primes_.begin(), primes_.end(), 2 * leaf.a + 1);
    const auto last = std::lower_bound(primes_.begin(), primes_.end(), 2 * leaf.b);
    for (auto it = first; it != last; ++it) leaf.P *= *it;
  }
  for (std::size_t d = levels_.size() - 1; d-- > 0;) {
    auto& parents = levels_[d];
    auto& children = levels_[d + 1];
    for (std::size_t i = 0; i < parents.size(); ++i) {
      parents[i].P = children[2 * i].P * children[2 * i + 1].P;
      parents[i].V = children[2 * i].V * children[2 * i + 1].V;
    }
  }
}

void RemainderTree::descend() {
  TreeNode& root = levels_.front().front();
  if (root.P == 1) return;  // no qualifying primes anywhere
  root.X = factorial_mod(iv_.m, root.P);
  for (std::size_t d = 0; d + 1 < levels_.size(); ++d) {
    auto& parents = levels_[d];
    auto& children = levels_[d + 1];
    for (std::size_t i = 0; i < parents.size(); ++i) {
      TreeNode& left = children[2 * i];
      TreeNode& right = children[2 * i + 1];
      if (left.P != 1) left.X = parents[i].X % left.P;
      if (right.P != 1) {
        right.X = parents[i].X * left.V;
        right.X %= right.P;
      }
      if (!retain_nodes_) {
        release(parents[i].P);
        release(parents[i].V);
        release(parents[i].X);
      }
    }
  }
}

void RemainderTree::extract() {
  results_.clear();
  results_.reserve(primes_.size());
  for (const auto& leaf : levels_.back()) {
    if (leaf.P == 1) continue;
    const auto first = std::lower_bound(primes_.begin(), primes_.end(), 2 * leaf.a + 1);
    const auto last = std::lower_bound(primes_.begin(), primes_.end(), 2 * leaf.b);
    for (auto it = first; it != last; ++it) {
      const u64 p = *it;
      u64 r = mpz_fdiv_ui(leaf.X.get_mpz_t(), p);  // a! mod p
      const u64 half = (p - 1) / 2;
      if (half > leaf.a) {
        // finish the leaf directly: multiply by a+1 .. (p-1)/2
        const Montgomery mm(p);
        u64 acc = mm.to_mont(r);
        u64 j = mm.to_mont(leaf.a + 1);
        for (u64 v = leaf.a + 1; v <= half; ++v) {
          acc = mm.mul(acc, j);
          j = mm.add_r(j);
        }
        r = mm.from_mont(acc);
      }
      results_.push_back(HalfFactResult{p, r});
    }
  }
}

void RemainderTree::run() {
  build_structure();
  compute_products();
  descend();
  extract();
}

std::vector<HalfFactResult> RemainderTree::take_results() { return std::move(results_); }

std::vector<HalfFactResult> half_factorial_batch(Interval iv, u64 leaf_max) {
  RemainderTree tree(iv, leaf_max);
  tree.run();
  return tree.take_results();
}

namespace {

void require_prime_3mod4(u64 p) {
  if ((p & 3) != 3) throw std::invalid_argument("p must be 3 (mod 4): " + std::to_string(p));
  if (!is_prime(p)) throw std::invalid_argument("p must be prime: " + std::to_string(p));
}

}  // namespace

HalfFactResult half_factorial_direct(u64 p) {
  require_prime_3mod4(p);
  if (p == 3) return HalfFactResult{3, 1};
  const Montgomery mm(p);
  u64 acc = mm.one();
  u64 j = mm.to_mont(2);
  const u64 half = (p - 1) / 2;
  for (u64 v = 2; v <= half; ++v) {
    acc = mm.mul(acc, j);
    j = mm.add_r(j);
  }
  return HalfFactResult{p, mm.from_mont(acc)};
}

u64 quadratic_nonresidues_below_half(u64 p) {
  require_prime_3mod4(p);
  const u64 half = (p - 1) / 2;
  if (half < 2) return 0;
  const Montgomery mm(p);
  const u64 one = mm.one();
  const u64 minus_one = mm.minus_one();
  u64 nu = 0;
  for (u64 x = 2; x <= half; ++x) {
    // Euler's criterion: x^{(p-1)/2} is -1 exactly for non-residues
    u64 acc = one;
    u64 b = mm.to_mont(x);
    for (u64 e = half; e; e >>= 1) {
      if (e & 1) acc = mm.mul(acc, b);
      b = mm.mul(b, b);
    }
    if (acc == minus_one) ++nu;
  }
  return nu;
}

}  // namespace twl
