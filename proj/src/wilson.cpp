#include "twl/wilson.hpp"

#include <algorithm>
#include <stdexcept>

#include "twl/modmul.hpp"

namespace twl {

ScanEngine parse_engine(const std::string& name) {
  if (name == "full") return ScanEngine::full;
  if (name == "half") return ScanEngine::half;
  throw std::invalid_argument("unknown engine: " + name);
}

namespace {

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime: " + std::to_string(p));
}

}  // namespace

SolutionProfile count_solutions_full(u64 p, bool enumerate) {
  require_prime(p);
  SolutionProfile out;
  out.p = p;
  if (enumerate) out.solutions.emplace();
  if (p < 5) return out;

  // T_r accumulated in Montgomery form; the factor p-r steps down by R each
  // iteration, so the loop costs one reduction per index.
  const Montgomery mm(p);
  const u64 minus_one = mm.minus_one();
  u64 factor = minus_one;  // (p-1) in Montgomery form
  u64 t = minus_one;       // T_1
  const u64 r_max = p - 3;
  for (u64 r = 2; r <= r_max; ++r) {
    factor = mm.sub_r(factor);
    t = mm.mul(t, factor);
    if (t == minus_one) {
      ++out.count;
      if (enumerate) out.solutions->push_back(r);
    }
  }
  return out;
}

SolutionProfile count_solutions_half(u64 p, bool enumerate) {
  if (p < 5) throw std::invalid_argument("half scan requires p >= 5");
  require_prime(p);
  SolutionProfile out;
  out.p = p;
  if (enumerate) out.solutions.emplace();

  const Montgomery mm(p);
  const u64 one = mm.one();
  const u64 minus_one = mm.minus_one();
  u64 factor = minus_one;
  u64 t = minus_one;
  const u64 r_max = (p - 3) / 2;
  for (u64 r = 2; r <= r_max; ++r) {
    factor = mm.sub_r(factor);
    t = mm.mul(t, factor);
    if (r & 1) {
      if (t == minus_one) {
        out.count += 2;
        if (enumerate) {
          out.solutions->push_back(r);
          out.solutions->push_back(p - r - 1);
        }
      }
    } else {
      if (t == minus_one) {
        ++out.count;
        if (enumerate) out.solutions->push_back(r);
      } else if (t == one) {
        ++out.count;
        if (enumerate) out.solutions->push_back(p - r - 1);
      }
    }
  }
  if ((p & 3) == 3) {
    // middle index (p-1)/2: solution iff T = -1 there
    factor = mm.sub_r(factor);
    t = mm.mul(t, factor);
    if (t == minus_one) {
      ++out.count;
      if (enumerate) out.solutions->push_back((p - 1) / 2);
    }
  }
  if (enumerate) std::sort(out.solutions->begin(), out.solutions->end());
  return out;
}

SolutionProfile count_solutions(u64 p, ScanEngine engine, bool enumerate) {
  if (engine == ScanEngine::full || p < 5) return count_solutions_full(p, enumerate);
  return count_solutions_half(p, enumerate);
}

Histogram solutions_histogram(PrimeRange range, ScanEngine engine) {
  range.validate();
  Histogram h;
  h.range = range;
  for_each_prime(range, Mod4Filter::none,
                 [&](u64 p) { h.add(count_solutions(p, engine).count); });
  return h;
}

}  // namespace twl
