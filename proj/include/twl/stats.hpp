#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "twl/defs.hpp"
#include "twl/primes.hpp"

namespace twl {

// Tally of primes by their number of nontrivial solutions.
struct Histogram {
  PrimeRange range{0, 0};
  std::vector<u64> counts;  // counts[N] = primes with exactly N solutions
  u64 total = 0;

  void add(u64 n_solutions, u64 weight = 1);
  u64 count_at(std::size_t n) const { return n < counts.size() ? counts[n] : 0; }
  std::size_t max_n() const { return counts.empty() ? 0 : counts.size() - 1; }
  bool is_empty() const { return total == 0 && range.lo == range.hi; }
  void trim();  // drop trailing zero buckets (canonical form)

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// Pointwise sum over disjoint ranges; the identity element is a default
// (empty) histogram. Throws std::invalid_argument on overlap.
Histogram merge(const Histogram& a, const Histogram& b);

struct Table2Row {
  u64 x = 0;             // cumulative bound (p < x)
  u64 primes_3mod4 = 0;
  u64 r_equals_1 = 0;

  friend bool operator==(const Table2Row&, const Table2Row&) = default;
};

// Cumulative half-factorial statistics at a fixed checkpoint list.
struct CumulativeHalfFact {
  PrimeRange range{0, 0};
  std::vector<Table2Row> rows;  // ascending by x

  bool is_empty() const { return range.lo == range.hi && rows.empty(); }

  friend bool operator==(const CumulativeHalfFact&, const CumulativeHalfFact&) = default;
};

// Pointwise sum; both operands must carry the same checkpoint list and
// disjoint ranges.
CumulativeHalfFact merge(const CumulativeHalfFact& a, const CumulativeHalfFact& b);

// Streams ascending (p, r_p) pairs into cumulative checkpoint rows.
class Table2Accumulator {
 public:
  explicit Table2Accumulator(std::vector<u64> checkpoints, PrimeRange range = {0, 0});

  // p must be strictly ascending across calls; throws std::invalid_argument
  void feed(u64 p, u64 r_p);
  CumulativeHalfFact finish();

 private:
  CumulativeHalfFact out_;
  std::vector<u64> checkpoints_;
  std::size_t next_ = 0;
  u64 last_p_ = 0;
  bool any_ = false;
  u64 n3_ = 0;
  u64 n1_ = 0;
};

enum class OutputFormat { csv, json, table };

// accepts "csv", "json", "table"; throws std::invalid_argument otherwise
OutputFormat parse_format(const std::string& name);

// fixed-point decimal with the given digit count (printf-correct rounding,
// ties to even)
std::string format_fixed(double value, int digits);

// Report renderers. Column names are fixed:
//   table 1: N,count,proportion,conjecture
//   table 2: X,primes_3mod4,r_p_eq_1,proportion
std::string format_table1(const Histogram& h, OutputFormat fmt);
std::string format_table2(const CumulativeHalfFact& t, OutputFormat fmt);

// Raised on malformed checkpoint files; carries the offending record.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(const std::string& what, std::string record = {}, std::size_t line = 0);
  const std::string& record() const { return record_; }
  std::size_t line() const { return line_; }

 private:
  std::string record_;
  std::size_t line_;
};

// Line-delimited text checkpoints: versioned header, decimal records, end
// marker with record count. Round-trips byte-exactly.
void checkpoint_write(const Histogram& h, const std::filesystem::path& path);
void checkpoint_write(const CumulativeHalfFact& t, const std::filesystem::path& path);
Histogram checkpoint_read_histogram(const std::filesystem::path& path);
CumulativeHalfFact checkpoint_read_halffact(const std::filesystem::path& path);

}  // namespace twl
