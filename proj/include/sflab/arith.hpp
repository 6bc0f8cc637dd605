#pragma once

#include "sflab/common.hpp"

#include <optional>
#include <vector>

namespace sflab {

struct PrimePower {
  u64 p;
  int k;
};

// All primes <= n, simple in-memory sieve.
std::vector<u64> primes_up_to(u64 n);

// pi(x): segmented count, nothing kept in memory.
u64 prime_pi(u64 x);

// Trial-division factorization, smallest prime first.
std::vector<PrimePower> factorize(u64 n);

int mu_of(u64 n);
int mu_r(u64 n, int r);         // 1 iff no p^r divides n; r >= 2
u64 tau_k(u64 n, int k);        // ordered k-tuples with product n; k >= 2
double von_mangoldt(u64 n);     // log p on prime powers, else 0
std::optional<PrimePower> lambda_support(u64 n);
int nu_p(u64 n, u64 p);         // p-adic valuation; p must be prime

// Per-integer arithmetic data over an inclusive segment [lo,hi]:
// smallest prime factor, mu, primality, Lambda support.  Immutable after
// construction; per-n records depend only on n, so any sub-partition of
// [lo,hi] rebuilds identically.
class SieveTable {
public:
  SieveTable(u64 lo, u64 hi);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }

  int mu(u64 n) const;
  bool squarefree(u64 n) const { return mu(n) != 0; }
  u64 spf(u64 n) const;  // smallest prime factor; spf(1) = 1
  bool is_prime(u64 n) const;
  std::optional<PrimePower> lambda_support(u64 n) const;
  double von_mangoldt(u64 n) const;

private:
  u64 idx(u64 n) const;
  u64 lo_, hi_;
  std::vector<int8_t> mu_;
  std::vector<u64> spf_;
};

// Streaming window helpers (flags indexed by n - lo, n in [lo,hi]).
std::vector<u8> rfree_window(u64 lo, u64 hi, int r);
std::vector<u8> prime_window(u64 lo, u64 hi);

// Count of r-free integers in [1,x], windowed internally.
u64 count_rfree(u64 x, int r);

} // namespace sflab
