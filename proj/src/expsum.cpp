#include "sflab/expsum.hpp"

#include "sflab/arith.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace sflab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// signed distance to the nearest integer, from the fixed-point fraction
double signed_dist(const Frac& f) {
  bool upper_half = (f.limb(0) >> 63) != 0;
  double d = f.dist_to_nearest();
  return upper_half ? -d : d;
}

std::complex<double> e_of(const Frac& f) {
  double t = two_pi * f.to_double();
  return {std::cos(t), std::sin(t)};
}

// e(psi) - 1 from the signed distance, stable for tiny psi
std::complex<double> e_minus_one(double psi) {
  double s = std::sin(std::numbers::pi * psi);
  return {-2.0 * s * s, std::sin(two_pi * psi)};
}

} // namespace

std::complex<double> ap_exp_sum(u64 X, u64 a, u64 d, const IrrationalSpec& gamma,
                                int prec_bits) {
  if (X < 1) throw std::invalid_argument("ap_exp_sum: X must be >= 1");
  if (d < 1 || a < 1 || a > d)
    throw std::invalid_argument("ap_exp_sum: need 1 <= a <= d");
  if (a > X) return {0.0, 0.0};
  u64 N = (X - a) / d + 1;

  if (gamma.exact_rational()) {
    Rat64 g = gamma.as_rational();
    if ((static_cast<i128>(g.num) * d) % static_cast<i128>(g.den) == 0) {
      // gamma d integral: all terms equal e(gamma a)
      Frac fa = gamma.frac_bits(prec_bits);
      fa.mul_u64(a);
      auto ea = e_of(fa);
      return {static_cast<double>(N) * ea.real(), static_cast<double>(N) * ea.imag()};
    }
  }

  if (static_cast<u128>(d) * N > UINT64_MAX)
    throw budget_error("ap_exp_sum: d*N overflows");
  Frac base = gamma.frac_bits(prec_bits);
  Frac fa = base, fd = base, fdn = base;
  fa.mul_u64(a);
  fd.mul_u64(d);
  fdn.mul_u64(d * N);
  double psi_d = signed_dist(fd);
  double psi_dn = signed_dist(fdn);
  if (psi_d == 0.0) {
    auto ea = e_of(fa);
    return {static_cast<double>(N) * ea.real(), static_cast<double>(N) * ea.imag()};
  }
  // e(ga) (e(g d N) - 1) / (e(g d) - 1)
  return e_of(fa) * (e_minus_one(psi_dn) / e_minus_one(psi_d));
}

double ap_exp_bound(u64 X, u64 a, u64 d, const IrrationalSpec& gamma,
                    int prec_bits) {
  double count_bound = static_cast<double>(X) / d + 1.0;
  double dist;
  if (gamma.exact_rational()) {
    Rat64 g = gamma.as_rational();
    i128 r = (static_cast<i128>(g.num) * d) % static_cast<i128>(g.den);
    if (r < 0) r += g.den;
    u64 m = std::min<u64>(static_cast<u64>(r), g.den - static_cast<u64>(r));
    dist = static_cast<double>(m) / static_cast<double>(g.den);
  } else {
    Frac fd = gamma.frac_bits(prec_bits);
    fd.mul_u64(d);
    dist = fd.dist_to_nearest();
  }
  (void)a;
  if (dist == 0.0) return count_bound;
  return std::min(count_bound, 1.0 / (2.0 * dist));
}

VaughanAudit vaughan_audit(u64 X, double Y, Convergent conv,
                           const IrrationalSpec& alpha, double ceiling,
                           int prec_bits) {
  if (X < 1 || Y < 1.0) throw std::invalid_argument("vaughan_audit: X, Y >= 1");
  if (X > max_range_len) throw budget_error("vaughan_audit: X exceeds budget");
  if (conv.q < 1) throw std::invalid_argument("vaughan_audit: q must be >= 1");
  VaughanAudit out;
  out.X = X;
  out.Y = Y;
  out.a = conv.a;
  out.q = conv.q;
  double XY = static_cast<double>(X) * Y;

  Frac step = alpha.frac_bits(prec_bits);
  Frac cur(prec_bits);
  double lhs = 0.0;
  for (u64 n = 1; n <= X; ++n) {
    cur.add(step);
    double dist = cur.dist_to_nearest();
    double cap = XY / static_cast<double>(n);
    lhs += (dist > 0.0) ? std::min(cap, 1.0 / dist) : cap;
  }
  out.lhs = lhs;
  double q = static_cast<double>(conv.q);
  out.envelope = XY * (1.0 / q + 1.0 / Y + q / XY) * std::log(2.0 * X * q);
  out.ratio = out.lhs / out.envelope;
  out.flagged = out.ratio > ceiling;
  return out;
}

QuadAudit quadratic_sum_audit(u64 M, u64 J, u64 x, const IrrationalSpec& alpha,
                              u64 q, int power, double ceiling, int prec_bits) {
  if (M < 1 || J < 1 || x < 1)
    throw std::invalid_argument("quadratic_sum_audit: M, J, x >= 1");
  if (power != 2 && power != 4)
    throw std::invalid_argument("quadratic_sum_audit: power must be 2 or 4");
  if (q < 1) throw std::invalid_argument("quadratic_sum_audit: q must be >= 1");
  if (M > 1000000 || J > 1000000 || M * J > 10000000)
    throw budget_error("quadratic_sum_audit: grid exceeds budget");
  // overflow guard on m^power * j
  bool ovf = false;
  u64 mp_max = checked_pow(2 * M, power, ovf);
  if (ovf || mp_max > UINT64_MAX / (2 * J))
    throw budget_error("quadratic_sum_audit: m^power * j overflows");

  QuadAudit out;
  out.M = M;
  out.J = J;
  out.x = x;
  out.q = q;
  out.power = power;

  Frac base = alpha.frac_bits(prec_bits);
  double lhs = 0.0;
  for (u64 m = M + 1; m <= 2 * M; ++m) {
    double tm = static_cast<double>(tau_k(m, 2));
    bool o = false;
    u64 mp = checked_pow(m, power, o);
    for (u64 j = J + 1; j <= 2 * J; ++j) {
      u64 arg = mp * j;
      Frac f = base;
      f.mul_u64(arg);
      double dist = f.dist_to_nearest();
      double cap = static_cast<double>(x) / static_cast<double>(arg);
      double term = (dist > 0.0) ? std::min(cap, 1.0 / dist) : cap;
      lhs += tm * static_cast<double>(tau_k(j, 2)) * term;
    }
  }
  out.lhs = lhs;

  double Md = static_cast<double>(M), Jd = static_cast<double>(J);
  double xd = static_cast<double>(x), qd = static_cast<double>(q);
  double env;
  if (power == 2) {
    env = Md * Jd + xd / std::pow(Md, 1.5) + xd / (Md * std::sqrt(qd)) +
          std::sqrt(xd * qd) / Md;
  } else {
    env = Md * Jd + xd / std::pow(Md, 25.0 / 8.0) +
          xd / (std::pow(Md, 3.0) * std::pow(qd, 0.125)) +
          std::pow(xd, 7.0 / 8.0) * std::pow(qd, 0.125) / std::pow(Md, 3.0);
  }
  out.envelope = std::pow(xd, 0.05) * env;
  out.ratio = out.lhs / out.envelope;
  out.flagged = out.ratio > ceiling;
  return out;
}

namespace {

// divisor lattice of n: sorted divisors with mu, logs and exponent tuples
struct DivisorLattice {
  std::vector<u64> primes;
  std::vector<u64> divs;
  std::vector<int> mu;
  std::vector<double> logd;
  std::vector<std::array<u8, 15>> expo;

  explicit DivisorLattice(u64 n) {
    auto f = factorize(n);
    for (const auto& pp : f) primes.push_back(pp.p);
    divs.push_back(1);
    mu.push_back(1);
    expo.push_back({});
    for (size_t t = 0; t < f.size(); ++t) {
      size_t count = divs.size();
      u64 pe = 1;
      for (int e = 1; e <= f[t].k; ++e) {
        pe *= f[t].p;
        for (size_t i = 0; i < count; ++i) {
          divs.push_back(divs[i] * pe);
          mu.push_back(e == 1 ? -mu[i] : 0);
          auto ex = expo[i];
          ex[t] = static_cast<u8>(e);
          expo.push_back(ex);
        }
      }
    }
    std::vector<size_t> idx(divs.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return divs[a] < divs[b]; });
    std::vector<u64> d2(divs.size());
    std::vector<int> m2(divs.size());
    std::vector<std::array<u8, 15>> e2(divs.size());
    for (size_t i = 0; i < idx.size(); ++i) {
      d2[i] = divs[idx[i]];
      m2[i] = mu[idx[i]];
      e2[i] = expo[idx[i]];
    }
    divs.swap(d2);
    mu.swap(m2);
    expo.swap(e2);
    logd.resize(divs.size());
    for (size_t i = 0; i < divs.size(); ++i)
      logd[i] = std::log(static_cast<double>(divs[i]));
  }

  size_t index_of(u64 d) const {
    return static_cast<size_t>(
        std::lower_bound(divs.begin(), divs.end(), d) - divs.begin());
  }

  // tau_j(divs[idx]) from the exponents; tau_0 = [d = 1], tau_1 = 1
  double tau_j(size_t idx, int j) const {
    if (j == 0) return divs[idx] == 1 ? 1.0 : 0.0;
    if (j == 1) return 1.0;
    double acc = 1.0;
    for (size_t t = 0; t < primes.size(); ++t) {
      int e = expo[idx][t];
      double c = 1.0;
      for (int i = 1; i <= e; ++i) c = c * (j - 1 + i) / i;
      acc *= c;
    }
    return acc;
  }
};

} // namespace

double hb_decompose(u64 n, u64 z, int J) {
  if (n < 1) throw std::invalid_argument("hb_decompose: n must be >= 1");
  if (z < 1 || J < 1) throw std::invalid_argument("hb_decompose: z, J >= 1");
  if (J > 8) throw budget_error("hb_decompose: J exceeds budget");
  u128 zJ = 1;
  for (int i = 0; i < J && zJ < n; ++i) zJ *= z;
  if (zJ < n)
    throw std::invalid_argument("hb_decompose: n > z^J violates identity validity");
  if (n == 1) return 0.0;

  DivisorLattice lat(n);
  size_t nd = lat.divs.size();

  // quotient index table: quot[i][l] = index of divs[i]/divs[l], or npos
  const size_t npos = static_cast<size_t>(-1);
  std::vector<std::vector<size_t>> quot(nd, std::vector<size_t>(nd, npos));
  for (size_t i = 0; i < nd; ++i)
    for (size_t l = 0; l <= i; ++l)
      if (lat.divs[i] % lat.divs[l] == 0)
        quot[i][l] = lat.index_of(lat.divs[i] / lat.divs[l]);

  // M_j[d] = sum over m_1...m_j = d, m_i <= z, of mu(m_1)...mu(m_j)
  std::vector<double> M1(nd), Mj(nd);
  for (size_t i = 0; i < nd; ++i)
    M1[i] = lat.divs[i] <= z ? static_cast<double>(lat.mu[i]) : 0.0;
  Mj = M1;

  double result = 0.0;
  double binom = 1.0;  // running C(J, j)
  std::vector<double> tjm1(nd), L(nd);
  for (int j = 1; j <= J; ++j) {
    binom = binom * (J - j + 1) / j;
    if (j > 1) {
      std::vector<double> next(nd, 0.0);
      for (size_t i = 0; i < nd; ++i)
        for (size_t l = 0; l <= i; ++l)
          if (quot[i][l] != npos)
            next[i] += Mj[l] * M1[quot[i][l]];
      Mj.swap(next);
    }
    // L_j[e] = sum_{n_1 | e} log(n_1) tau_{j-1}(e / n_1)
    for (size_t i = 0; i < nd; ++i) tjm1[i] = lat.tau_j(i, j - 1);
    for (size_t e = 0; e < nd; ++e) {
      double total = 0.0;
      for (size_t l = 0; l <= e; ++l)
        if (quot[e][l] != npos) total += lat.logd[l] * tjm1[quot[e][l]];
      L[e] = total;
    }
    double Tj = 0.0;
    size_t top = lat.index_of(n);
    for (size_t i = 0; i < nd; ++i)
      if (Mj[i] != 0.0) Tj += Mj[i] * L[quot[top][i]];
    result += (j % 2 == 1 ? 1.0 : -1.0) * binom * Tj;
  }
  return result;
}

std::vector<std::pair<u64, u64>> dyadic_split(u64 lo, u64 hi) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("dyadic_split: bad range");
  std::vector<std::pair<u64, u64>> out;
  u64 start = lo;
  u64 bound = lo;  // blocks are (bound, 2 bound]-shaped after the first
  while (true) {
    u64 end = bound > hi / 2 ? hi : std::min(hi, 2 * bound);
    out.emplace_back(start, end);
    if (end >= hi) break;
    start = end + 1;
    bound = end;
  }
  return out;
}

std::vector<MennemaAudit> mennema_audit(const std::vector<int>& ks,
                                        const std::vector<u64>& xs) {
  if (ks.empty() || xs.empty())
    throw std::invalid_argument("mennema_audit: empty grid");
  u64 xmax = *std::max_element(xs.begin(), xs.end());
  if (xmax > 10000000) throw budget_error("mennema_audit: x exceeds budget");
  for (int k : ks)
    if (k < 2 || k > 12) throw std::invalid_argument("mennema_audit: k out of range");

  // omega(n) and squarefree flags up to xmax; tau_k = k^omega on squarefree n
  std::vector<u8> omega(xmax + 1, 0);
  std::vector<u8> sf(xmax + 1, 1);
  for (u64 p = 2; p <= xmax; ++p) {
    if (omega[p] != 0) continue;  // composite
    for (u64 m = p; m <= xmax; m += p) ++omega[m];
    if (p <= xmax / p)
      for (u64 m = p * p; m <= xmax; m += p * p) sf[m] = 0;
  }

  // full value of sum_d mu^2(d) tau_k(d)/d^2 = prod_p (1 + k/p^2);
  // cutting at P leaves a relative tail below k/P
  const u64 P0 = 4000000;
  std::vector<double> totals(ks.size(), 1.0);
  {
    std::vector<u8> comp(P0 + 1, 0);
    for (u64 i = 2; i * i <= P0; ++i)
      if (!comp[i])
        for (u64 j = i * i; j <= P0; j += i) comp[j] = 1;
    for (u64 p = 2; p <= P0; ++p) {
      if (comp[p]) continue;
      double psq = static_cast<double>(p) * static_cast<double>(p);
      for (size_t i = 0; i < ks.size(); ++i) totals[i] *= 1.0 + ks[i] / psq;
    }
  }

  std::vector<u64> grid = xs;
  std::sort(grid.begin(), grid.end());
  std::vector<MennemaAudit> out;
  for (size_t i = 0; i < ks.size(); ++i) {
    int k = ks[i];
    double s1 = 0.0, s2_partial = 0.0;
    size_t gi = 0;
    for (u64 n = 1; n <= xmax && gi < grid.size(); ++n) {
      if (sf[n]) {
        double tk = std::pow(static_cast<double>(k), omega[n]);
        s1 += tk;
        s2_partial += tk / (static_cast<double>(n) * static_cast<double>(n));
      }
      while (gi < grid.size() && grid[gi] == n) {
        MennemaAudit a;
        a.k = k;
        a.x = n;
        double lx = std::log(static_cast<double>(n));
        a.lemma1_sum = s1;
        a.lemma1_ratio = s1 / (static_cast<double>(n) * std::pow(lx, k - 1));
        a.lemma1_root = std::pow(a.lemma1_ratio, 1.0 / k);
        a.lemma2_sum = std::max(0.0, totals[i] - s2_partial);
        a.lemma2_ratio = a.lemma2_sum * static_cast<double>(n) /
                         std::pow(2.0 * k - 2.0 + lx, k - 1);
        a.lemma2_root = std::pow(a.lemma2_ratio, 1.0 / k);
        out.push_back(a);
        ++gi;
      }
    }
  }
  return out;
}

} // namespace sflab
