#include "twl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twl/modmul.hpp"

namespace twl {

void PrimeRange::validate() const {
  if (lo > hi) throw std::invalid_argument("prime range: lo > hi");
  if (hi > kCapacity) throw std::out_of_range("prime range: bound exceeds 2^62 capacity");
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // Miller-Rabin with the first twelve primes as bases: deterministic for
  // all n < 3.3*10^24, far beyond the 2^62 range cap.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Montgomery mm(n);
  const u64 one = mm.one();
  const u64 minus_one = mm.minus_one();
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = mm.one();
    u64 b = mm.to_mont(a);
    for (u64 e = d; e; e >>= 1) {
      if (e & 1) x = mm.mul(x, b);
      b = mm.mul(b, b);
    }
    if (x == one || x == minus_one) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mm.mul(x, x);
      if (x == minus_one) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// simple odd-only sieve for the base primes, limit inclusive
std::vector<u64> small_primes_upto(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;
  const u64 n_odds = (limit - 1) / 2;  // odds 3,5,...,<=limit
  std::vector<bool> composite(n_odds, false);
  for (u64 i = 0; i < n_odds; ++i) {
    const u64 p = 2 * i + 3;
    if (p * p > limit) break;
    if (composite[i]) continue;
    for (u64 j = (p * p - 3) / 2; j < n_odds; j += p) composite[j] = true;
  }
  for (u64 i = 0; i < n_odds; ++i)
    if (!composite[i]) primes.push_back(2 * i + 3);
  return primes;
}

}  // namespace

PrimeStream::PrimeStream(PrimeRange range, Mod4Filter filter, std::size_t segment_odds)
    : range_(range), filter_(filter), segment_odds_(segment_odds ? segment_odds : 1) {
  range_.validate();
  cursor_ = range_.lo;
  if (range_.hi > 3) base_ = small_primes_upto(isqrt(range_.hi - 1));
}

void PrimeStream::refill() {
  buffer_.clear();
  pos_ = 0;
  while (buffer_.empty() && cursor_ < range_.hi) {
    const u64 seg_lo = cursor_;
    if (seg_lo <= 2 && 2 < range_.hi && filter_ == Mod4Filter::none) buffer_.push_back(2);
    u64 first = std::max<u64>(seg_lo, 3);
    if ((first & 1) == 0) ++first;
    if (first >= range_.hi) {
      cursor_ = range_.hi;
      break;
    }
    const u64 span = 2 * static_cast<u64>(segment_odds_);
    const u64 seg_hi = range_.hi - first > span ? first + span : range_.hi;
    const u64 n_odds = (seg_hi - first + 1) / 2;  // odds first, first+2, ...
    std::vector<bool> composite(n_odds, false);
    for (u64 q : base_) {
      if (q < 3) continue;
      if (q * q >= seg_hi) break;
      u64 start = std::max(q * q, ((first + q - 1) / q) * q);
      if ((start & 1) == 0) start += q;
      for (u64 v = start; v < seg_hi; v += 2 * q) composite[(v - first) / 2] = true;
    }
    const int want = static_cast<int>(filter_);
    for (u64 i = 0; i < n_odds; ++i) {
      if (composite[i]) continue;
      const u64 n = first + 2 * i;
      if (want != 0 && static_cast<int>(n & 3) != want) continue;
      buffer_.push_back(n);
    }
    cursor_ = seg_hi;
  }
}

std::optional<u64> PrimeStream::next() {
  if (pos_ >= buffer_.size()) {
    refill();
    if (pos_ >= buffer_.size()) return std::nullopt;
  }
  return buffer_[pos_++];
}

std::vector<u64> PrimeStream::drain() {
  std::vector<u64> out;
  while (auto p = next()) out.push_back(*p);
  return out;
}

PrimeStream primes_in(PrimeRange range) { return PrimeStream(range); }

PrimeStream primes_3mod4_in(PrimeRange range) {
  return PrimeStream(range, Mod4Filter::three);
}

void for_each_prime(PrimeRange range, Mod4Filter filter,
                    const std::function<void(u64)>& fn, std::size_t segment_odds) {
  PrimeStream stream(range, filter, segment_odds);
  while (auto p = stream.next()) fn(*p);
}

std::vector<u64> primes_vector(PrimeRange range, Mod4Filter filter) {
  return PrimeStream(range, filter).drain();
}

u64 count_primes(PrimeRange range, Mod4Filter filter) {
  u64 count = 0;
  for_each_prime(range, filter, [&](u64) { ++count; });
  return count;
}

}  // namespace twl
