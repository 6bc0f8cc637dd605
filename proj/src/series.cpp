#include "sflab/series.hpp"

#include "sflab/arith.hpp"

#include <cmath>

namespace sflab {

namespace {

double down(double v) { return std::nextafter(v, -1.0); }
double up(double v) { return std::nextafter(v, 2.0); }

// running [lo,hi] product of exact rational factors num/den, rounded outward
struct IntervalProduct {
  double lo = 1.0, hi = 1.0;
  void mul_rational(u64 num, u64 den) {
    double f = static_cast<double>(num) / static_cast<double>(den);
    lo = down(lo * down(f));
    hi = up(hi * up(f));
    if (lo < 0) lo = 0;
  }
  void mul_interval(double flo, double fhi) {
    lo = down(lo * flo);
    hi = up(hi * fhi);
    if (lo < 0) lo = 0;
  }
};

SeriesEnclosure finish(IntervalProduct prod, double tail_lo, u64 cutoff) {
  // tail factor lies in [tail_lo, 1]
  SeriesEnclosure e;
  e.cutoff = cutoff;
  e.lower = std::max(0.0, down(prod.lo * down(tail_lo)));
  e.upper = std::min(1.0, prod.hi);
  return e;
}

} // namespace

SeriesEnclosure mirsky_product(const ShiftSystem& A, int r, u64 cutoff) {
  if (r < 2) throw std::invalid_argument("mirsky_product: r must be >= 2");
  if (cutoff > max_series_cutoff)
    throw budget_error("mirsky_product: cutoff exceeds budget");
  bool ovf = false;
  u64 pr_cut = checked_pow(cutoff, r, ovf);
  if (cutoff < A.shifts().back() || (!ovf && pr_cut <= A.span()))
    throw std::invalid_argument("mirsky_product: cutoff too small for tail");

  IntervalProduct prod;
  for (u64 p : primes_up_to(cutoff)) {
    int nu = A.nu(p, r);
    bool o = false;
    u64 prp = checked_pow(p, r, o);
    if (!o) {
      u64 num = prp - static_cast<u64>(nu);
      if (num == 0) {
        SeriesEnclosure e;
        e.cutoff = cutoff;
        e.exact_zero = true;
        return e;
      }
      prod.mul_rational(num, prp);
    } else {
      // p^r beyond 64 bits: factor within one ulp of 1
      double f = 1.0 - nu * std::pow(static_cast<double>(p), -r);
      prod.mul_interval(down(f), up(f));
    }
  }
  // sum_{p > P} p^{-r} < P^{1-r}/(r-1)
  double tail_sum = up(std::pow(static_cast<double>(cutoff), 1.0 - r) / (r - 1));
  double tail_lo = down(1.0 - up(A.s() * tail_sum));
  return finish(prod, tail_lo, cutoff);
}

SeriesEnclosure changa_product(const ShiftSystem& A, u64 cutoff) {
  if (cutoff > max_series_cutoff)
    throw budget_error("changa_product: cutoff exceeds budget");
  if (cutoff < A.shifts().back() || cutoff * cutoff <= A.span())
    throw std::invalid_argument("changa_product: cutoff too small for tail");

  IntervalProduct prod;
  for (u64 p : primes_up_to(cutoff)) {
    int nus = A.nu_star(p, 2);
    u64 phi = p * (p - 1);  // phi(p^2)
    if (static_cast<u64>(nus) == phi) {
      SeriesEnclosure e;
      e.cutoff = cutoff;
      e.exact_zero = true;
      return e;
    }
    prod.mul_rational(phi - static_cast<u64>(nus), phi);
  }
  // sum_{p > P} 1/(p(p-1)) < sum_{n > P} 1/(n(n-1)) = 1/P
  double tail_lo = down(1.0 - up(static_cast<double>(A.s()) / cutoff));
  return finish(prod, tail_lo, cutoff);
}

} // namespace sflab
