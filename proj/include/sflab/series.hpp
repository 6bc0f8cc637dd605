#pragma once

#include "sflab/common.hpp"
#include "sflab/shifts.hpp"

namespace sflab {

// Two-sided bracket of an infinite Euler product, rounded outward.
struct SeriesEnclosure {
  double lower = 0.0;
  double upper = 0.0;
  u64 cutoff = 0;       // primes <= cutoff enter the partial product
  bool exact_zero = false;
  double width() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
};

// prod_p (1 - nu(p^r)/p^r); tail bracketed via sum_{p>P} p^{-r} < P^{1-r}/(r-1)
SeriesEnclosure mirsky_product(const ShiftSystem& A, int r, u64 cutoff);

// S = prod_p (1 - nu*(p^2)/(p(p-1))); tail via sum_{p>P} 1/(p(p-1)) < 1/P
SeriesEnclosure changa_product(const ShiftSystem& A, u64 cutoff);

} // namespace sflab
