#pragma once

#include "sflab/common.hpp"
#include "sflab/shifts.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sflab {

// Exact rational; beta and test-mode alphas live here.
struct Rat64 {
  i64 num = 0;
  u64 den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rat64 parse_rat(const std::string& text);  // "3/7", "0.25", "-1.5"

// Fixed-point fraction in [0,1): bits/64 limbs, most significant first.
// Multiply-and-reduce is exact mod 1; truncation error enters only through
// the stored approximation of the underlying real.
class Frac {
public:
  explicit Frac(int bits = default_prec_bits);
  static Frac from_rational(i64 num, u64 den, int bits);

  int bits() const { return 64 * nlimbs_; }
  void mul_u64(u64 m);
  void add(const Frac& o);
  void negate();

  double to_double() const;
  double dist_to_nearest() const;
  // exact comparison ||value|| < threshold (threshold taken as an exact dyadic)
  bool dist_less_than(double threshold) const;

  u64 limb(int i) const { return l_[i]; }
  void set_limb(int i, u64 v) { l_[i] = v; }

private:
  int nlimbs_;
  std::array<u64, 4> l_{};
};

// Stream of continued-fraction partial quotients a0, a1, a2, ...
// (a0 may be any integer, later terms are >= 1).
class CFStream {
public:
  virtual ~CFStream() = default;
  // nullopt: stream ended (rational alpha) or certified digits ran out
  virtual std::optional<i64> next() = 0;
};

struct Convergent {
  i64 a;
  u64 q;
};

// An irrational (or, in test mode, rational) alpha given as a quadratic surd,
// an explicit continued fraction, or a raw fractional bit string.
class IrrationalSpec {
public:
  static IrrationalSpec sqrt_of(u64 d);
  static IrrationalSpec surd(i64 p, i64 q, u64 d);  // (p + sqrt(d)) / q
  static IrrationalSpec from_cf(std::vector<i64> digits);
  static IrrationalSpec from_bits_hex(const std::string& hex);
  static IrrationalSpec rational(i64 num, u64 den);
  // CLI syntax: sqrt:D | surd:p,q,D | cf:d0,d1,... | bits:<hex>
  static IrrationalSpec parse(const std::string& text);

  bool exact_rational() const;
  Rat64 as_rational() const;  // only when exact_rational()

  // fractional part of alpha, truncated to `bits` (in {128, 192, 256})
  Frac frac_bits(int bits) const;
  std::unique_ptr<CFStream> digits() const;
  std::string describe() const;

private:
  enum class Kind { surd, cf, bits, rational };
  Kind kind_ = Kind::rational;
  i64 p_ = 0;
  i64 q_ = 1;
  u64 d_ = 0;
  std::vector<i64> cf_;
  std::vector<u64> bit_limbs_;  // most significant first, 256-bit capacity
  i64 rnum_ = 0;
  u64 rden_ = 1;
};

// First n convergents h_k/q_k; each satisfies |alpha - h/q| < 1/q^2.
std::vector<Convergent> convergents(const IrrationalSpec& alpha, int n);

// Delta = x^-theta, K = Delta^-1 (ln x)^2.
struct SearchParams {
  u64 x = 0;
  double theta = 0.0;
  double delta = 0.0;
  double K = 0.0;
  bool theorem_range = false;  // 0 < theta < 1/10
};

SearchParams params_for(u64 x, double theta);

// x_j = round(q_j^{20/7}), strictly increasing
std::vector<u64> x_schedule(const std::vector<u64>& q_list);

// ||alpha p + beta||
double frac_norm(const IrrationalSpec& alpha, u64 p, Rat64 beta,
                 int prec_bits = default_prec_bits);
// strict test ||alpha p + beta|| < threshold at fixed point
bool norm_below(const IrrationalSpec& alpha, u64 p, Rat64 beta,
                double threshold, int prec_bits = default_prec_bits);

// Primes p in (lo, hi] with ||alpha p + beta|| < p^-theta and all p + a_i
// square-free, ascending.  Deterministic for any shard count.
std::vector<u64> search_primes(u64 lo, u64 hi, const IrrationalSpec& alpha,
                               Rat64 beta, double theta, const ShiftSystem& A,
                               int prec_bits = default_prec_bits,
                               int shards = 1);

int prec_bits_from_env();  // SFLAB_PREC_BITS, clamped to {128, 192, 256}

// throws budget_error when p * 2^-prec_bits is not below 2^-80
void require_precision_ok(u64 p, int prec_bits);

} // namespace sflab
