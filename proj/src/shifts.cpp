#include "sflab/shifts.hpp"

#include "sflab/arith.hpp"

#include <algorithm>
#include <cassert>

namespace sflab {

ShiftSystem::ShiftSystem(std::vector<u64> shifts) : a_(std::move(shifts)) {
  if (a_.size() < 2)
    throw std::invalid_argument("ShiftSystem: need at least 2 shifts");
  for (u64 v : a_)
    if (v == 0) throw std::invalid_argument("ShiftSystem: shifts must be positive");
  std::sort(a_.begin(), a_.end());
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end())
    throw std::invalid_argument("ShiftSystem: duplicate shifts");

  u64 root = isqrt_u64(span());
  for (u64 p : primes_up_to(root)) {
    if (w_ > UINT64_MAX / p)
      throw budget_error("ShiftSystem: primorial w exceeds 64 bits");
    w_ *= p;
    w_primes_.push_back(p);
  }
  w_sq_ = (w_ <= u64(1) << 32) ? w_ * w_ : 0;

  if (w_sq_ != 0 && w_sq_ <= f_memo_limit) {
    f_table_.resize(w_sq_);
    for (u64 t = 0; t < w_sq_; ++t)
      f_table_[t] = static_cast<u8>(f_direct(t));
  }
}

int ShiftSystem::nu(u64 p, int r) const {
  if (r < 1) throw std::invalid_argument("nu: r must be >= 1");
  if (!is_prime_u64(p)) throw std::invalid_argument("nu: p must be prime");
  bool ovf = false;
  u64 mod = checked_pow(p, r, ovf);
  if (ovf || mod > span()) return s();  // residues already distinct
  std::vector<u64> res;
  res.reserve(a_.size());
  for (u64 v : a_) res.push_back(v % mod);
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return static_cast<int>(res.size());
}

int ShiftSystem::nu_star(u64 p, int r) const {
  if (r < 1) throw std::invalid_argument("nu_star: r must be >= 1");
  if (!is_prime_u64(p)) throw std::invalid_argument("nu_star: p must be prime");
  bool ovf = false;
  u64 mod = checked_pow(p, r, ovf);
  std::vector<u64> res;
  res.reserve(a_.size());
  for (u64 v : a_) {
    if (v % p == 0) continue;
    res.push_back((ovf || mod > span()) ? v : v % mod);
  }
  std::sort(res.begin(), res.end());
  res.erase(std::unique(res.begin(), res.end()), res.end());
  return static_cast<int>(res.size());
}

bool ShiftSystem::admissible() const {
  // {a_i mod p^2} can contain all phi(p^2) = p(p-1) reduced classes only
  // when p(p-1) <= s
  for (u64 p = 2; p * (p - 1) <= static_cast<u64>(s()); ++p) {
    if (!is_prime_u64(p)) continue;
    if (nu_star(p, 2) == static_cast<int>(p * (p - 1))) return false;
  }
  return true;
}

int ShiftSystem::mu_w(u64 n) const {
  if (n == 0) throw std::invalid_argument("mu_w: n must be >= 1");
  int sign = 1;
  for (u64 p : w_primes_) {
    if (n % p != 0) continue;
    if ((n / p) % p == 0) return 0;
    sign = -sign;
  }
  return sign;
}

int ShiftSystem::mu_tilde(u64 n) const {
  if (n == 0) throw std::invalid_argument("mu_tilde: n must be >= 1");
  for (u64 p : w_primes_)
    while (n % p == 0) n /= p;
  return mu_of(n);
}

int ShiftSystem::f_direct(u64 t) const {
  for (u64 ai : a_) {
    u64 n = t + ai;
    for (u64 p : w_primes_)
      if (n % (p * p) == 0) return 0;
  }
  return 1;
}

int ShiftSystem::f(u64 t) const {
  if (!f_table_.empty()) return f_table_[t % w_sq_];
  if (w_sq_ != 0) return f_direct(t % w_sq_);
  return f_direct(t);
}

} // namespace sflab
