#pragma once

#include "twl/defs.hpp"

namespace twl {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

// Montgomery arithmetic for an odd modulus n < 2^63. Values travel in
// Montgomery form (x*R mod n with R = 2^64); mul() keeps results canonical
// in [0, n).
class Montgomery {
 public:
  explicit Montgomery(u64 n) : n_(n) {
    // inverse of n mod 2^64 by Newton iteration, then negate
    u64 inv = n;
    for (int i = 0; i < 5; ++i) inv *= 2 - n * inv;
    ninv_ = ~inv + 1;
    r1_ = (~u64{0} % n) + 1;  // 2^64 mod n, nonzero since n is odd > 1
    if (r1_ == n) r1_ = 0;
    r2_ = static_cast<u64>(static_cast<u128>(r1_) * r1_ % n);
  }

  u64 modulus() const { return n_; }
  u64 one() const { return r1_; }          // Montgomery form of 1
  u64 minus_one() const { return n_ - r1_; }
  u64 r() const { return r1_; }            // R mod n

  u64 mul(u64 a, u64 b) const {
    u128 t = static_cast<u128>(a) * b;
    u64 m = static_cast<u64>(t) * ninv_;
    u64 res = static_cast<u64>((t + static_cast<u128>(m) * n_) >> 64);
    return res >= n_ ? res - n_ : res;
  }

  u64 to_mont(u64 a) const { return mul(a % n_, r2_); }
  u64 from_mont(u64 a) const { return mul(a, 1); }

  // x + R mod n for x already in [0, n): steps a Montgomery-form value to
  // the form of (plain value + 1)
  u64 add_r(u64 x) const { return x >= n_ - r1_ ? x - (n_ - r1_) : x + r1_; }
  // x - R mod n: steps to the form of (plain value - 1)
  u64 sub_r(u64 x) const { return x >= r1_ ? x - r1_ : x + (n_ - r1_); }

 private:
  u64 n_;
  u64 ninv_;  // -n^{-1} mod 2^64
  u64 r1_;
  u64 r2_;    // R^2 mod n
};

inline u64 powmod(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  if (mod & 1) {
    Montgomery mm(mod);
    u64 x = mm.one();
    u64 b = mm.to_mont(base);
    while (exp) {
      if (exp & 1) x = mm.mul(x, b);
      b = mm.mul(b, b);
      exp >>= 1;
    }
    return mm.from_mont(x);
  }
  u64 x = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) x = mulmod(x, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return x;
}

}  // namespace twl
