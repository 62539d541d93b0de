#pragma once

#include <cmath>
#include <stdexcept>

namespace noma {

struct BisectionResult {
  double root = 0.0;
  double width = 0.0;
  int iterations = 0;
};

// Root of a function with f(lo) < 0 < f(hi). Halves the bracket until it is
// no wider than `width_tolerance` or `max_iterations` halvings were done, and
// returns the midpoint of the final bracket. An exact zero ends the search.
// A tolerance of 0 runs until the bracket spans adjacent doubles.
template <class Function>
BisectionResult bisect_increasing(const Function& f, double lo, double hi,
                                  double width_tolerance = 1e-12,
                                  int max_iterations = 200) {
  if (!(lo < hi)) throw std::invalid_argument("bisection needs lo < hi");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw std::invalid_argument("bisection bracket does not change sign");

  int iterations = 0;
  while (hi - lo > width_tolerance && iterations < max_iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket is down to adjacent doubles
    const double f_mid = f(mid);
    ++iterations;
    if (f_mid == 0.0) return {mid, 0.0, iterations};
    if (f_mid < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {lo + 0.5 * (hi - lo), hi - lo, iterations};
}

}  // namespace noma
