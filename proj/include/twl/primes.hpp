#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "twl/defs.hpp"

namespace twl {

// Default number of odd integers per sieve segment (covers 2^21 integers).
inline constexpr std::size_t kDefaultSegmentOdds = std::size_t{1} << 20;

// Half-open range [lo, hi) of 64-bit naturals, both below 2^62.
struct PrimeRange {
  u64 lo = 0;
  u64 hi = 0;

  u64 width() const { return hi > lo ? hi - lo : 0; }
  bool empty() const { return lo >= hi; }
  // throws std::invalid_argument on lo > hi, std::out_of_range above capacity
  void validate() const;

  friend bool operator==(const PrimeRange&, const PrimeRange&) = default;
};

enum class Mod4Filter : int { none = 0, one = 1, three = 3 };

// Deterministic for all 64-bit n (fixed Miller-Rabin base set).
bool is_prime(u64 n);

u64 isqrt(u64 n);

// Ascending primes of a range, produced segment by segment so memory stays
// bounded for wide ranges. One consumer per stream.
class PrimeStream {
 public:
  explicit PrimeStream(PrimeRange range, Mod4Filter filter = Mod4Filter::none,
                       std::size_t segment_odds = kDefaultSegmentOdds);

  std::optional<u64> next();
  std::vector<u64> drain();  // remaining items, materialized

  const PrimeRange& range() const { return range_; }
  Mod4Filter filter() const { return filter_; }

 private:
  void refill();

  PrimeRange range_;
  Mod4Filter filter_;
  std::size_t segment_odds_;
  std::vector<u64> base_;  // sieving primes up to sqrt(hi-1)
  u64 cursor_;             // next position not yet sieved
  std::vector<u64> buffer_;
  std::size_t pos_ = 0;
};

PrimeStream primes_in(PrimeRange range);
PrimeStream primes_3mod4_in(PrimeRange range);

void for_each_prime(PrimeRange range, Mod4Filter filter,
                    const std::function<void(u64)>& fn,
                    std::size_t segment_odds = kDefaultSegmentOdds);

std::vector<u64> primes_vector(PrimeRange range,
                               Mod4Filter filter = Mod4Filter::none);
u64 count_primes(PrimeRange range, Mod4Filter filter = Mod4Filter::none);

}  // namespace twl
