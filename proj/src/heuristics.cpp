#include "twl/heuristics.hpp"

#include <gmpxx.h>

#include <cmath>
#include <vector>

namespace twl {

namespace {

// Factorials up to 170! computed exactly, then rounded once to double.
// 171! overflows double; terms needing larger factorials are below 1e-306
// and are treated as zero.
constexpr int kMaxFact = 170;

const std::vector<double>& factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxFact + 1);
    mpz_class f = 1;
    t[0] = 1.0;
    for (int i = 1; i <= kMaxFact; ++i) {
      f *= i;
      t[i] = f.get_d();
    }
    return t;
  }();
  return table;
}

double inv_fact(int n) {
  if (n < 0 || n > kMaxFact) return 0.0;
  return 1.0 / factorials()[n];
}

// sum_{k=0}^{floor(n/2)} 1/(k!(n-2k)!)
double factorial_pair_sum(int n) {
  if (n < 0) return 0.0;
  double s = 0.0;
  for (int k = n / 2; k >= 0; --k) s += inv_fact(k) * inv_fact(n - 2 * k);
  return s;
}

}  // namespace

double p_odd(int k) {
  if (k < 0) return 0.0;
  return std::exp(-0.25) * std::ldexp(inv_fact(k), -2 * k);
}

double q_even(int l) {
  if (l < 0) return 0.0;
  return std::exp(-0.5) * std::ldexp(inv_fact(l), -l);
}

double base_distribution(int n) {
  if (n < 0) return 0.0;
  return std::ldexp(std::exp(-0.75), -n) * factorial_pair_sum(n);
}

double base_distribution_convolved(int n) {
  if (n < 0) return 0.0;
  double s = 0.0;
  for (int k = 0; 2 * k <= n; ++k) s += p_odd(k) * q_even(n - 2 * k);
  return s;
}

double conjecture_probability(int n) {
  if (n < 0) return 0.0;
  return 0.75 * base_distribution(n) + 0.25 * base_distribution(n - 1);
}

double conjecture_probability_bracketed(int n) {
  if (n < 0) return 0.0;
  const double brackets = 1.5 * factorial_pair_sum(n) + factorial_pair_sum(n - 1);
  return std::ldexp(std::exp(-0.75), -(n + 1)) * brackets;
}

LimitConstants naive_constants() {
  return LimitConstants{std::exp(-1.0), std::exp(-0.75), 0.75 * std::exp(-0.75)};
}

}  // namespace twl
