#include "sflab/arith.hpp"

#include <cassert>
#include <cmath>

namespace sflab {

std::vector<u64> primes_up_to(u64 n) {
  if (n > max_range_len)
    throw budget_error("primes_up_to: limit exceeds range budget");
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<u8> comp(n + 1, 0);
  for (u64 i = 2; i * i <= n; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= n; j += i) comp[j] = 1;
  for (u64 i = 2; i <= n; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

u64 prime_pi(u64 x) {
  if (x < 2) return 0;
  if (x > 4 * max_range_len)
    throw budget_error("prime_pi: argument exceeds range budget");
  u64 root = isqrt_u64(x);
  std::vector<u64> base = primes_up_to(root);
  u64 count = 0;
  const u64 seg = u64(1) << 22;
  std::vector<u8> comp;
  for (u64 lo = 2; lo <= x; lo += seg) {
    u64 hi = std::min(x, lo + seg - 1);
    comp.assign(hi - lo + 1, 0);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 m = start; m <= hi; m += p) comp[m - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n)
      if (!comp[n - lo]) ++count;
  }
  return count;
}

std::vector<PrimePower> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimePower> out;
  for (u64 p : {2ull, 3ull, 5ull}) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) n /= p, ++e;
      out.push_back({p, e});
    }
  }
  // 2,3,5-wheel
  static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  u64 d = 7;
  int wi = 0;
  while (d <= n / d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) n /= d, ++e;
      out.push_back({d, e});
    }
    d += wheel[wi];
    wi = (wi + 1) & 7;
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

int mu_of(u64 n) {
  if (n == 0) throw std::invalid_argument("mu_of: n must be >= 1");
  int sign = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.k >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

int mu_r(u64 n, int r) {
  if (n == 0) throw std::invalid_argument("mu_r: n must be >= 1");
  if (r < 2) throw std::invalid_argument("mu_r: r must be >= 2");
  for (const auto& pp : factorize(n))
    if (pp.k >= r) return 0;
  return 1;
}

u64 tau_k(u64 n, int k) {
  if (n == 0) throw std::invalid_argument("tau_k: n must be >= 1");
  if (k < 2) throw std::invalid_argument("tau_k: k must be >= 2");
  // multiplicative: product of C(e + k - 1, k - 1) over prime powers p^e
  u128 acc = 1;
  for (const auto& pp : factorize(n)) {
    u128 c = 1;
    for (int i = 1; i <= pp.k; ++i) {
      c = c * (k - 1 + i) / i;  // exact: running binomial
    }
    acc *= c;
    if (acc > static_cast<u128>(UINT64_MAX))
      throw budget_error("tau_k: value exceeds 64 bits");
  }
  return static_cast<u64>(acc);
}

std::optional<PrimePower> lambda_support(u64 n) {
  if (n == 0) throw std::invalid_argument("lambda_support: n must be >= 1");
  if (n == 1) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return f[0];
}

double von_mangoldt(u64 n) {
  auto s = lambda_support(n);
  return s ? std::log(static_cast<double>(s->p)) : 0.0;
}

int nu_p(u64 n, u64 p) {
  if (n == 0) throw std::invalid_argument("nu_p: n must be >= 1");
  if (!is_prime_u64(p)) throw std::invalid_argument("nu_p: p must be prime");
  int e = 0;
  while (n % p == 0) n /= p, ++e;
  return e;
}

SieveTable::SieveTable(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || lo >= hi)
    throw std::invalid_argument("SieveTable: need 1 <= lo < hi");
  u64 len = hi - lo + 1;
  if (len > max_table_len)
    throw budget_error("SieveTable: segment exceeds table budget");
  u64 root = isqrt_u64(hi);
  std::vector<u64> base = primes_up_to(root);

  mu_.assign(len, 1);
  spf_.assign(len, 0);
  std::vector<u64> rem(len);
  for (u64 i = 0; i < len; ++i) rem[i] = lo + i;

  for (u64 p : base) {
    u64 start = (lo + p - 1) / p * p;
    for (u64 m = start; m <= hi; m += p) {
      u64 i = m - lo;
      if (spf_[i] == 0) spf_[i] = p;
      int e = 0;
      while (rem[i] % p == 0) rem[i] /= p, ++e;
      if (e >= 2)
        mu_[i] = 0;
      else
        mu_[i] = -mu_[i];
    }
  }
  // leftover cofactor is a single prime > sqrt(hi)
  for (u64 i = 0; i < len; ++i) {
    if (rem[i] > 1) {
      mu_[i] = -mu_[i];
      if (spf_[i] == 0) spf_[i] = rem[i];
    }
  }
  if (lo == 1) spf_[0] = 1;
}

u64 SieveTable::idx(u64 n) const {
  if (n < lo_ || n > hi_)
    throw std::invalid_argument("SieveTable: n outside segment");
  return n - lo_;
}

int SieveTable::mu(u64 n) const { return mu_[idx(n)]; }

u64 SieveTable::spf(u64 n) const { return spf_[idx(n)]; }

bool SieveTable::is_prime(u64 n) const { return n > 1 && spf_[idx(n)] == n; }

std::optional<PrimePower> SieveTable::lambda_support(u64 n) const {
  u64 p = spf_[idx(n)];
  if (n == 1 || p <= 1) return std::nullopt;
  int k = 0;
  u64 m = n;
  while (m % p == 0) m /= p, ++k;
  if (m != 1) return std::nullopt;
  return PrimePower{p, k};
}

double SieveTable::von_mangoldt(u64 n) const {
  auto s = lambda_support(n);
  return s ? std::log(static_cast<double>(s->p)) : 0.0;
}

std::vector<u8> rfree_window(u64 lo, u64 hi, int r) {
  if (r < 2) throw std::invalid_argument("rfree_window: r must be >= 2");
  if (lo < 1 || lo > hi) throw std::invalid_argument("rfree_window: bad range");
  u64 len = hi - lo + 1;
  if (len > max_range_len)
    throw budget_error("rfree_window: window exceeds range budget");
  std::vector<u8> flags(len, 1);
  // mark multiples of p^r; p^r <= hi forces p <= hi^(1/r)
  u64 proot = static_cast<u64>(std::pow(static_cast<double>(hi), 1.0 / r)) + 2;
  for (u64 p : primes_up_to(proot)) {
    bool ovf = false;
    u64 pr = checked_pow(p, r, ovf);
    if (ovf || pr > hi) continue;
    u64 start = (lo + pr - 1) / pr * pr;
    for (u64 m = start; m <= hi; m += pr) flags[m - lo] = 0;
  }
  return flags;
}

std::vector<u8> prime_window(u64 lo, u64 hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("prime_window: bad range");
  u64 len = hi - lo + 1;
  if (len > max_range_len)
    throw budget_error("prime_window: window exceeds range budget");
  std::vector<u8> flags(len, 1);
  if (lo == 1) flags[0] = 0;
  for (u64 p : primes_up_to(isqrt_u64(hi))) {
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 m = start; m <= hi; m += p) flags[m - lo] = 0;
  }
  return flags;
}

u64 count_rfree(u64 x, int r) {
  if (x == 0) return 0;
  if (x > max_range_len)
    throw budget_error("count_rfree: x exceeds range budget");
  u64 count = 0;
  const u64 seg = u64(1) << 22;
  for (u64 lo = 1; lo <= x; lo += seg) {
    u64 hi = std::min(x, lo + seg - 1);
    auto flags = rfree_window(lo, hi, r);
    for (u8 f : flags) count += f;
  }
  return count;
}

} // namespace sflab
