#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sflab/arith.hpp"
#include "sflab/expsum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace sflab;

namespace {

// direct-summation oracle: term-by-term with fixed-point argument reduction
std::complex<double> ap_direct(u64 X, u64 a, u64 d, const IrrationalSpec& g) {
  std::complex<double> s{0.0, 0.0};
  Frac base = g.frac_bits(192);
  for (u64 n = a; n <= X; n += d) {
    Frac f = base;
    f.mul_u64(n);
    double t = 2.0 * std::numbers::pi * f.to_double();
    s += std::complex<double>(std::cos(t), std::sin(t));
  }
  return s;
}

// literal Heath-Brown enumeration over ordered 2j-tuples (small n only):
// sum over m_1..m_j <= z and n_1..n_j with total product n of
// mu(m_1)...mu(m_j) log(n_1)
double hb_enumerate_terms(u64 n, u64 z, int j) {
  struct Rec {
    u64 z;
    int j;
    double operator()(u64 rest, int mu_stage, int n_stage) const {
      if (mu_stage < j) {
        double total = 0.0;
        for (u64 m = 1; m <= rest && m <= z; ++m)
          if (rest % m == 0)
            total += mu_of(m) * (*this)(rest / m, mu_stage + 1, n_stage);
        return total;
      }
      if (n_stage < j) {
        double total = 0.0;
        for (u64 v = 1; v <= rest; ++v)
          if (rest % v == 0) {
            double w = n_stage == 0 ? std::log(static_cast<double>(v)) : 1.0;
            total += w * (*this)(rest / v, mu_stage, n_stage + 1);
          }
        return total;
      }
      return rest == 1 ? 1.0 : 0.0;
    }
  };
  Rec rec{z, j};
  return rec(n, 0, 0);
}

u64 ceil_root(u64 n, int J) {
  u64 z = static_cast<u64>(std::ceil(std::pow(static_cast<double>(n), 1.0 / J)));
  while (z > 1) {
    bool ovf = false;
    u64 p = checked_pow(z - 1, J, ovf);
    if (ovf || p >= n)
      --z;
    else
      break;
  }
  bool ovf = false;
  while (checked_pow(z, J, ovf) < n && !ovf) ++z;
  return z;
}

} // namespace

TEST_CASE("ap_exp_sum trivial cases") {
  // gamma = 1/2: alternating signs over n = 1..4 cancel
  auto half = IrrationalSpec::from_cf({0, 2});
  auto s = ap_exp_sum(4, 1, 1, half);
  CHECK(std::abs(s) < 1e-12);
  // gamma = 0: counts members of the class
  auto zero = IrrationalSpec::rational(0, 1);
  auto c = ap_exp_sum(10, 2, 3, zero);
  CHECK(c.real() == doctest::Approx(3.0).epsilon(1e-12));  // 2, 5, 8
  CHECK(c.imag() == doctest::Approx(0.0).epsilon(1e-12));
  // empty class
  CHECK(std::abs(ap_exp_sum(3, 4, 5, zero)) == 0.0);
}

TEST_CASE("ap_exp_sum matches direct summation") {
  auto s2 = IrrationalSpec::sqrt_of(2);
  auto s = ap_exp_sum(100, 1, 3, s2);
  auto d = ap_direct(100, 1, 3, s2);
  CHECK(std::abs(s - d) < 1e-9);
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 500; ++iter) {
    u64 X = rng() % 10000 + 1;
    u64 dd = rng() % 100 + 1;
    u64 a = rng() % dd + 1;
    char hex[33];
    for (int i = 0; i < 32; ++i) hex[i] = "0123456789abcdef"[rng() % 16];
    hex[32] = 0;
    auto gamma = IrrationalSpec::from_bits_hex(hex);
    auto lhs = ap_exp_sum(X, a, dd, gamma);
    auto ref = ap_direct(X, a, dd, gamma);
    CHECK(std::abs(lhs - ref) < 1e-9);
    double bound = ap_exp_bound(X, a, dd, gamma);
    CHECK(std::abs(lhs) <= bound * (1 + 1e-9) + 1e-9);
  }
}

TEST_CASE("ap_exp_sum sharp bound at convergent denominators") {
  // d = q_k makes ||gamma d|| tiny; the 1/(2||gamma d||) branch must hold
  auto s2 = IrrationalSpec::sqrt_of(2);
  for (u64 d : {5, 12, 29, 70, 169, 408, 985, 2378}) {
    auto s = ap_exp_sum(100000, 1, d, s2);
    double bound = ap_exp_bound(100000, 1, d, s2);
    CHECK(std::abs(s) <= bound * (1 + 1e-9) + 1e-9);
  }
}

TEST_CASE("vaughan audit") {
  auto s2 = IrrationalSpec::sqrt_of(2);
  auto conv = convergents(s2, 4).back();  // 17/12 -> use q = 12? spec uses q = 5
  auto c3 = convergents(s2, 3).back();    // 7/5
  auto a = vaughan_audit(100, 10.0, c3, s2);
  CHECK(a.q == 5);
  CHECK(a.lhs > 0.0);
  CHECK(a.ratio <= 10.0);
  CHECK_FALSE(a.flagged);
  // X = 1: lhs = min(Y, 1/||alpha||)
  auto b = vaughan_audit(1, 7.0, conv, s2);
  CHECK(b.lhs == doctest::Approx(std::min(
                     7.0, 1.0 / (std::numbers::sqrt2 - 1.0))).epsilon(1e-9));
  // golden-ratio grid: ratios stay bounded
  auto phi = IrrationalSpec::surd(1, 2, 5);
  double worst = 0.0;
  for (int ci : {2, 4, 6, 8}) {
    auto cv = convergents(phi, ci).back();
    for (u64 X : {50, 200, 1000}) {
      for (double Y : {2.0, 16.0, 128.0}) {
        auto r = vaughan_audit(X, Y, cv, phi);
        worst = std::max(worst, r.ratio);
      }
    }
  }
  CHECK(worst <= 10.0);
  CHECK(worst > 0.0);
}

TEST_CASE("quadratic sum audit") {
  auto s2 = IrrationalSpec::sqrt_of(2);
  // M = J = 1: single term m = 2, j = 2
  auto one = quadratic_sum_audit(1, 1, 1000, s2, 5, 2);
  Frac f = s2.frac_bits(128);
  f.mul_u64(8);  // m^2 j = 4 * 2
  double expect = 4.0 * std::min(1000.0 / 8.0, 1.0 / f.dist_to_nearest());
  CHECK(one.lhs == doctest::Approx(expect).epsilon(1e-9));  // tau(2)^2 = 4

  auto a2 = quadratic_sum_audit(8, 8, 10000, s2, 29, 2);
  CHECK(a2.ratio > 0.0);
  CHECK(a2.ratio <= 10.0);
  auto a4 = quadratic_sum_audit(4, 16, 100000, s2, 29, 4);
  CHECK(a4.ratio > 0.0);
  CHECK(a4.ratio <= 10.0);
  CHECK_THROWS_AS(quadratic_sum_audit(8, 8, 1000, s2, 5, 3), std::invalid_argument);
}

TEST_CASE("hb_decompose worked examples") {
  CHECK(hb_decompose(8, 8, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(hb_decompose(6, 6, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hb_decompose(1, 5, 2) == 0.0);
  CHECK_THROWS_AS(hb_decompose(100, 3, 1), std::invalid_argument);  // 100 > 3^1
}

TEST_CASE("hb_decompose equals von Mangoldt") {
  for (u64 n = 2; n <= 2000; ++n) {
    double lambda = von_mangoldt(n);
    for (int J = 1; J <= 3; ++J) {
      u64 z = ceil_root(n, J);
      CHECK(hb_decompose(n, z, J) == doctest::Approx(lambda).epsilon(1e-9));
    }
  }
  // a few with z far above n^(1/J)
  for (u64 n : {30, 64, 97, 360}) {
    CHECK(hb_decompose(n, n, 2) == doctest::Approx(von_mangoldt(n)).epsilon(1e-9));
    CHECK(hb_decompose(n, n, 3) == doctest::Approx(von_mangoldt(n)).epsilon(1e-9));
  }
}

TEST_CASE("hb_decompose against literal tuple enumeration") {
  for (u64 n : {12, 30, 36, 60, 97}) {
    for (int J = 1; J <= 2; ++J) {
      u64 z = ceil_root(n, J);
      double expect = 0.0;
      double binom = 1.0;
      for (int j = 1; j <= J; ++j) {
        binom = binom * (J - j + 1) / j;
        expect += (j % 2 == 1 ? 1.0 : -1.0) * binom * hb_enumerate_terms(n, z, j);
      }
      CHECK(hb_decompose(n, z, J) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("dyadic_split") {
  auto b = dyadic_split(1, 8);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == std::pair<u64, u64>{1, 2});
  CHECK(b[1] == std::pair<u64, u64>{3, 4});
  CHECK(b[2] == std::pair<u64, u64>{5, 8});
  auto s = dyadic_split(7, 7);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == std::pair<u64, u64>{7, 7});

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 1000; ++iter) {
    u64 lo = rng() % 100000 + 1;
    u64 hi = lo + rng() % 1000000;
    auto blocks = dyadic_split(lo, hi);
    // disjoint, exhaustive, (B, 2B]-shaped, count bounded
    u64 expect = lo;
    for (auto [a, b2] : blocks) {
      CHECK(a == expect);
      CHECK(b2 >= a);
      expect = b2 + 1;
    }
    CHECK(expect == hi + 1);
    for (size_t i = 1; i < blocks.size(); ++i)
      CHECK(blocks[i].second <= 2 * blocks[i].first - 1);  // within (B, 2B]
    double bound = std::log2(static_cast<double>(hi) / lo) + 2;
    CHECK(static_cast<double>(blocks.size()) <= bound);
  }
}

TEST_CASE("mennema audit values") {
  auto res = mennema_audit({2, 3}, {1000, 10000});
  REQUIRE(res.size() == 4);
  // lemma 1 sums against a direct loop
  for (const auto& a : res) {
    double direct = 0.0;
    for (u64 n = 1; n <= a.x; ++n)
      if (mu_of(n) != 0) direct += static_cast<double>(tau_k(n, a.k));
    CHECK(a.lemma1_sum == doctest::Approx(direct).epsilon(1e-9));
    CHECK(a.lemma1_root > 0.0);
    CHECK(a.lemma1_root < 3.0);
    CHECK(a.lemma2_sum > 0.0);
    CHECK(a.lemma2_root > 0.0);
    CHECK(a.lemma2_root < 3.0);
  }
  // lemma 2 partial tail against a direct truncated sum (d up to 40x)
  auto one = mennema_audit({2}, {1000});
  double direct_tail = 0.0;
  for (u64 d = 1001; d <= 40000; ++d)
    if (mu_of(d) != 0)
      direct_tail += static_cast<double>(tau_k(d, 2)) /
                     (static_cast<double>(d) * static_cast<double>(d));
  CHECK(one[0].lemma2_sum >= direct_tail);
  CHECK(one[0].lemma2_sum <= direct_tail * 1.2);  // the 40x truncation is close
}
