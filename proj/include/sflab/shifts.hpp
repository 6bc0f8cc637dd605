#pragma once

#include "sflab/common.hpp"

#include <vector>

namespace sflab {

// The shift set A = {a_1 < ... < a_s} with its primorial
// w = prod_{p <= sqrt(a_s - a_1)} p and the residue machinery built on it.
class ShiftSystem {
public:
  explicit ShiftSystem(std::vector<u64> shifts);

  const std::vector<u64>& shifts() const { return a_; }
  int s() const { return static_cast<int>(a_.size()); }
  u64 span() const { return a_.back() - a_.front(); }
  u64 w() const { return w_; }
  const std::vector<u64>& w_primes() const { return w_primes_; }

  // distinct residue classes mod p^r hit by the shifts
  int nu(u64 p, int r) const;
  // same, restricted to classes coprime to p
  int nu_star(u64 p, int r) const;

  // no prime p has {a_i mod p^2} containing the full reduced system
  bool admissible() const;

  // mu restricted to the w-part / to the part coprime to w
  int mu_w(u64 n) const;
  int mu_tilde(u64 n) const;

  // f(t) = prod_i mu_w^2(t + a_i); periodic mod w^2 (memoized when small)
  int f(u64 t) const;

private:
  int f_direct(u64 t) const;

  std::vector<u64> a_;
  u64 w_ = 1;
  std::vector<u64> w_primes_;
  u64 w_sq_ = 1;               // 0 when w^2 overflows u64
  std::vector<u8> f_table_;    // empty when w^2 exceeds the memo budget
};

} // namespace sflab
