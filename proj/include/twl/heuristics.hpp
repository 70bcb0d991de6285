#pragma once

namespace twl {

// Poisson-style limit terms of the solution-count model and the conjectured
// distribution of the number of nontrivial solutions per prime. Two
// independent evaluation routes are kept for each quantity so they can be
// cross-checked.

// probability of exactly k odd-index solutions: e^{-1/4} / (4^k k!)
double p_odd(int k);

// probability of exactly l even-index solutions: e^{-1/2} / (2^l l!)
double q_even(int l);

// closed form e^{-3/4}/2^n * sum_{k<=n/2} 1/(k!(n-2k)!); 0 for n < 0
double base_distribution(int n);

// same quantity as the direct convolution sum_{2k+l=n} p_odd(k) q_even(l)
double base_distribution_convolved(int n);

// 3/4 * base(n) + 1/4 * base(n-1)
double conjecture_probability(int n);

// single-expression form with the two bracketed factorial sums
double conjecture_probability_bracketed(int n);

struct LimitConstants {
  double e_inv;  // limit of (1-1/p)^{p-4}
  double e_34;   // limit of (1-1/p)^{p/4} (1-2/p)^{p/4}
  double main;   // 3/4 * e^{-3/4}, the no-solution proportion
};

LimitConstants naive_constants();

}  // namespace twl
