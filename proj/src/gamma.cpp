#include "sflab/gamma.hpp"

#include "sflab/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>

namespace sflab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// chunked scan over n in [1, x]: cb(n) for every n whose shifts are all r-free
template <typename F>
void for_each_rfree_system(u64 x, const ShiftSystem& A, int r, bool primes_only,
                           F&& cb) {
  if (x == 0) return;
  if (x > max_range_len) throw budget_error("count: x exceeds range budget");
  u64 a1 = A.shifts().front(), as = A.shifts().back();
  if (x > UINT64_MAX - as) throw budget_error("count: shifted range overflows");
  const u64 seg = u64(1) << 22;
  for (u64 lo = 1; lo <= x; lo += seg) {
    u64 hi = std::min(x, lo + seg - 1);
    auto sf = rfree_window(lo + a1, hi + as, r);
    std::vector<u8> pw;
    if (primes_only) pw = prime_window(lo, hi);
    for (u64 n = lo; n <= hi; ++n) {
      if (primes_only && !pw[n - lo]) continue;
      bool ok = true;
      for (u64 ai : A.shifts())
        if (!sf[n + ai - (lo + a1)]) {
          ok = false;
          break;
        }
      if (ok) cb(n);
    }
  }
}

void check_kernel_matches(const SmoothKernel& kernel, const SearchParams& params) {
  if (std::fabs(kernel.delta() - params.delta) > 1e-9 * params.delta)
    throw std::invalid_argument("kernel delta does not match params_for(x, theta)");
}

// phase accumulator for e(beta k + k phi) with exact rational beta steps
struct PhaseIter {
  Frac psi;        // k * phi mod 1
  const Frac* phi;
  i64 bnum;        // (beta.num * k) mod beta.den, kept in [0, den)
  i64 bstep, bden;
  PhaseIter(const Frac& phi_, Rat64 beta, int bits)
      : psi(bits), phi(&phi_), bnum(0), bden(static_cast<i64>(beta.den)) {
    bstep = beta.num % bden;
    if (bstep < 0) bstep += bden;
  }
  // advance k -> k+1 and return angle(beta k + k phi) in [0, 2)
  double next() {
    psi.add(*phi);
    bnum += bstep;
    if (bnum >= bden) bnum -= bden;
    return psi.to_double() + static_cast<double>(bnum) / static_cast<double>(bden);
  }
};

} // namespace

u64 mirsky_count(u64 x, const ShiftSystem& A, int r) {
  if (r < 2) throw std::invalid_argument("mirsky_count: r must be >= 2");
  u64 count = 0;
  for_each_rfree_system(x, A, r, false, [&](u64) { ++count; });
  return count;
}

u64 changa_count(u64 x, const ShiftSystem& A, int r) {
  if (r < 2) throw std::invalid_argument("changa_count: r must be >= 2");
  u64 count = 0;
  for_each_rfree_system(x, A, r, true, [&](u64) { ++count; });
  return count;
}

CountReport mirsky_report(u64 x, const ShiftSystem& A, int r, u64 cutoff) {
  CountReport rep;
  rep.x = x;
  rep.r = r;
  rep.count = mirsky_count(x, A, r);
  auto enc = mirsky_product(A, r, cutoff);
  rep.series_mid = enc.mid();
  rep.main_term = rep.series_mid * static_cast<double>(x);
  rep.abs_error = std::fabs(static_cast<double>(rep.count) - rep.main_term);
  double lx = std::log(static_cast<double>(std::max<u64>(x, 2)));
  rep.error_ratio =
      rep.abs_error / std::pow(static_cast<double>(x), 2.0 / (r + 1) + 0.05);
  rep.fitted_exponent = std::log(std::max(rep.abs_error, 1.0)) / lx;
  return rep;
}

CountReport changa_report(u64 x, const ShiftSystem& A, int r, u64 cutoff) {
  CountReport rep;
  rep.x = x;
  rep.r = r;
  rep.count = changa_count(x, A, r);
  auto enc = changa_product(A, cutoff);
  rep.series_mid = enc.mid();
  rep.main_term = rep.series_mid * static_cast<double>(prime_pi(x));
  rep.abs_error = std::fabs(static_cast<double>(rep.count) - rep.main_term);
  double lx = std::log(static_cast<double>(std::max<u64>(x, 2)));
  rep.error_ratio = rep.abs_error * lx * lx / static_cast<double>(x);
  rep.fitted_exponent = std::log(std::max(rep.abs_error, 1.0)) / lx;
  return rep;
}

GammaReport gamma_report(u64 x, const IrrationalSpec& alpha, Rat64 beta,
                         double theta, const ShiftSystem& A,
                         const SmoothKernel& kernel, int prec_bits, int shards) {
  auto params = params_for(x, theta);
  check_kernel_matches(kernel, params);
  if (x > max_range_len / 2) throw budget_error("gamma: x exceeds range budget");
  u64 a1 = A.shifts().front(), as = A.shifts().back();

  GammaReport rep;
  rep.x = x;
  rep.theta = theta;
  rep.delta = params.delta;
  rep.K = params.K;
  rep.mean = kernel.mean();
  rep.kernel_order = kernel.order();
  rep.K_used = static_cast<u64>(params.K);

  const u64 K = rep.K_used;
  std::vector<double> gk(K + 1, 0.0);
  for (u64 k = 1; k <= K; ++k) gk[k] = kernel.g(static_cast<i64>(k));

  Frac alpha_frac(prec_bits);
  if (alpha.exact_rational()) {
    Rat64 ra = alpha.as_rational();
    alpha_frac = Frac::from_rational(ra.num, ra.den, prec_bits);
  } else {
    require_precision_ok(2 * x, prec_bits);
    alpha_frac = alpha.frac_bits(prec_bits);
  }
  Frac beta_frac = Frac::from_rational(beta.num, beta.den, prec_bits);

  // fixed block grid over (x, 2x]; per-block partials combined in order,
  // so output is independent of the worker count
  const u64 block = u64(1) << 15;
  const u64 first = x + 1, last = 2 * x;
  const u64 nblocks = (last - first) / block + 1;
  struct Partial {
    double gamma = 0;
    i64 gamma1 = 0;
    double g2re = 0, g2im = 0;
  };
  std::vector<Partial> parts(nblocks);

  auto run_block = [&](u64 b) {
    u64 blo = first + b * block;
    u64 bhi = std::min(last, blo + block - 1);
    auto primes = prime_window(blo, bhi);
    auto sf = rfree_window(blo + a1, bhi + as, 2);
    Partial& pt = parts[b];
    for (u64 p = blo; p <= bhi; ++p) {
      if (!primes[p - blo]) continue;
      bool ok = true;
      for (u64 ai : A.shifts())
        if (!sf[p + ai - (blo + a1)]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pt.gamma1 += 1;
      Frac phi = alpha_frac;
      phi.mul_u64(p);
      Frac arg = phi;
      arg.add(beta_frac);
      pt.gamma += kernel.eval(arg.to_double());
      // c(k) e(alpha k p) + c(-k) e(-alpha k p) = 2 g(k) cos(2 pi (beta k + k phi));
      // the conjugate pair cancels the imaginary part identically
      PhaseIter it(phi, beta, prec_bits);
      for (u64 k = 1; k <= K; ++k) {
        double ang = two_pi * it.next();
        pt.g2re += gk[k] * 2.0 * std::cos(ang);
      }
    }
  };

  int workers = std::max(1, std::min(shards, 64));
  if (workers == 1 || nblocks == 1) {
    for (u64 b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<u64> next{0};
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (u64 b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& pt : parts) {
    rep.gamma += pt.gamma;
    rep.gamma1 += pt.gamma1;
    rep.gamma2 += std::complex<double>(pt.g2re, pt.g2im);
  }

  double tail = kernel.fourier_tail(K) / kernel.delta();  // sum_{|k|>K} |g(k)|
  rep.tail_bound = kernel.mean() * tail * static_cast<double>(rep.gamma1) +
                   1e-9 * (std::fabs(rep.gamma) + static_cast<double>(rep.gamma1));
  rep.identity_residual = std::fabs(
      rep.gamma - kernel.mean() * (static_cast<double>(rep.gamma1) + rep.gamma2.real()));
  rep.identity_ok = rep.identity_residual <= rep.tail_bound;
  return rep;
}

std::complex<double> gamma3(u64 y, const IrrationalSpec& alpha, Rat64 beta,
                            double theta, const ShiftSystem& A,
                            const SmoothKernel& kernel, u64 K0, int prec_bits) {
  auto params = params_for(y, theta);
  check_kernel_matches(kernel, params);
  if (K0 > static_cast<u64>(params.K))
    throw std::invalid_argument("gamma3: K0 exceeds K from params_for");
  if (y > max_table_len / 2) throw budget_error("gamma3: y exceeds table budget");
  if (K0 == 0) return {0.0, 0.0};
  u64 a1 = A.shifts().front(), as = A.shifts().back();

  SieveTable tab(y + 1, 2 * y);
  auto sf = rfree_window(y + 1 + a1, 2 * y + as, 2);
  const bool exact_alpha = alpha.exact_rational();
  Frac alpha_frac(prec_bits);
  if (exact_alpha) {
    Rat64 ra = alpha.as_rational();
    alpha_frac = Frac::from_rational(ra.num, ra.den, prec_bits);
  } else {
    alpha_frac = alpha.frac_bits(prec_bits);
  }

  std::complex<double> total{0.0, 0.0};
  for (u64 n = y + 1; n <= 2 * y; ++n) {
    auto pp = tab.lambda_support(n);
    if (!pp) continue;
    bool ok = true;
    for (u64 ai : A.shifts())
      if (!sf[n + ai - (y + 1 + a1)]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    double lam = std::log(static_cast<double>(pp->p));
    Frac phi = alpha_frac;
    phi.mul_u64(n);
    PhaseIter it(phi, beta, prec_bits);
    for (u64 k = 1; k <= K0; ++k) {
      double ang = two_pi * it.next();
      double gkv = kernel.g(static_cast<i64>(k));
      // c(k) e(alpha k n) + c(-k) e(-alpha k n); imaginary parts cancel
      total += std::complex<double>(gkv * lam * 2.0 * std::cos(ang), 0.0);
    }
  }
  return total;
}

UDecomposition u_decomposition(u64 y, const IrrationalSpec& alpha, Rat64 beta,
                               double theta, const ShiftSystem& A,
                               const SmoothKernel& kernel, u64 K0, int prec_bits) {
  auto params = params_for(y, theta);
  check_kernel_matches(kernel, params);
  if (K0 > static_cast<u64>(params.K))
    throw std::invalid_argument("u_decomposition: K0 exceeds K from params_for");
  if (y > max_table_len / 2)
    throw budget_error("u_decomposition: y exceeds table budget");
  if (A.w() > (u64(1) << 32))
    throw budget_error("u_decomposition: w^2 residue machinery infeasible");
  u64 as = A.shifts().back();

  UDecomposition out;
  out.y = y;
  out.K0 = K0;

  SieveTable tab(y + 1, 2 * y);
  Frac alpha_frac(prec_bits);
  if (alpha.exact_rational()) {
    Rat64 ra = alpha.as_rational();
    alpha_frac = Frac::from_rational(ra.num, ra.den, prec_bits);
  } else {
    alpha_frac = alpha.frac_bits(prec_bits);
  }
  std::vector<u64> small_primes = primes_up_to(isqrt_u64(2 * y + as) + 1);

  std::map<u64, std::complex<double>> U;
  for (u64 n = y + 1; n <= 2 * y; ++n) {
    auto pp = tab.lambda_support(n);
    if (!pp) continue;
    int ft = A.f(n);
    if (ft == 0) continue;
    double lam = std::log(static_cast<double>(pp->p));
    // E_n = f(t) Lambda(n) sum_{0<|k|<=K0} c(k) e(alpha k n)
    std::complex<double> En{0.0, 0.0};
    if (K0 > 0) {
      Frac phi = alpha_frac;
      phi.mul_u64(n);
      PhaseIter it(phi, beta, prec_bits);
      for (u64 k = 1; k <= K0; ++k) {
        double ang = two_pi * it.next();
        double gkv = kernel.g(static_cast<i64>(k));
        En += std::complex<double>(gkv * 2.0 * std::cos(ang), 0.0);
      }
    }
    En *= lam * static_cast<double>(ft);

    // squarefree d_i with d_i^2 | n + a_i, (d_i, w) = 1: subsets of the
    // primes p coprime to w whose square divides n + a_i
    std::vector<std::vector<std::pair<u64, int>>> choice(A.shifts().size());
    for (size_t i = 0; i < A.shifts().size(); ++i) {
      u64 m = n + A.shifts()[i];
      std::vector<u64> ps;
      for (u64 p : small_primes) {
        if (p * p > m) break;
        if (m % (p * p) == 0 && A.w() % p != 0) ps.push_back(p);
      }
      auto& dv = choice[i];
      size_t subsets = size_t(1) << ps.size();
      dv.reserve(subsets);
      for (size_t mset = 0; mset < subsets; ++mset) {
        u64 d = 1;
        int bits = 0;
        for (size_t t = 0; t < ps.size(); ++t)
          if (mset & (size_t(1) << t)) {
            d *= ps[t];
            ++bits;
          }
        dv.emplace_back(d, bits % 2 == 0 ? 1 : -1);  // mu of a squarefree d
      }
    }
    // tuple loop over the (small) choice sets
    std::vector<size_t> idx(A.shifts().size(), 0);
    while (true) {
      u64 d = 1;
      int sign = 1;
      for (size_t i = 0; i < idx.size(); ++i) {
        d *= choice[i][idx[i]].first;
        sign *= choice[i][idx[i]].second;
      }
      U[d] += static_cast<double>(sign) * En;
      size_t pos = 0;
      while (pos < idx.size()) {
        if (++idx[pos] < choice[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
  }

  // split at y^(1/2) and y^(1/5) by exact integer comparisons
  for (const auto& [d, val] : U) {
    if (val == std::complex<double>(0.0, 0.0)) continue;
    out.per_d.emplace_back(d, val);
    out.total += val;
    u128 d2 = static_cast<u128>(d) * d;
    u128 d5 = d2 * d2 * d;
    if (d2 > y)
      out.U1 += val;
    else if (d5 > y)
      out.U2 += val;
    else
      out.U3 += val;
  }

  // envelope comparisons (empirical ratios, epsilon = 0.05)
  double K_eff = std::max<double>(1.0, static_cast<double>(K0));
  double yd = static_cast<double>(y);
  u64 q = 1;
  {
    // largest convergent denominator below the schedule scale y^(7/20)
    double qcap = std::pow(yd, 7.0 / 20.0);
    try {
      for (int n = 1; n <= 40; ++n) {
        auto cs = convergents(alpha, n);
        if (static_cast<double>(cs.back().q) > qcap && n > 1) break;
        q = cs.back().q;
      }
    } catch (const std::exception&) {
      // stream exhausted or overflow: keep the last certified q
    }
  }
  out.q_used = std::max<u64>(q, 1);
  out.env1 = std::pow(yd, 2.0 / 3.0 + 0.05) * K_eff;
  out.env2 = std::pow(yd, 4.0 / 5.0 + 0.05) * K_eff;
  out.env3 = std::pow(yd, 63.0 / 80.0) * std::pow(K_eff, 15.0 / 16.0) *
             std::pow(static_cast<double>(out.q_used), 1.0 / 16.0);
  out.ratio1 = std::abs(out.U1) / out.env1;
  out.ratio2 = std::abs(out.U2) / out.env2;
  out.ratio3 = std::abs(out.U3) / out.env3;
  return out;
}

LowerBoundAudit lower_bound_audit(u64 x, const IrrationalSpec& alpha, Rat64 beta,
                                  double theta, const ShiftSystem& A,
                                  const SmoothKernel& kernel, u64 series_cutoff,
                                  int prec_bits, int shards) {
  auto S = changa_product(A, series_cutoff);
  if (S.exact_zero)
    throw std::invalid_argument(
        "lower_bound_audit: series vanishes (non-admissible A), audit refused");
  LowerBoundAudit out;
  out.x = x;
  out.S_lower = S.lower;
  out.S_upper = S.upper;
  out.C_used = S.lower / 4.0;
  if (x < 21) {  // Rosser precondition x >= 20.5
    out.skipped = true;
    return out;
  }
  auto rep = gamma_report(x, alpha, beta, theta, A, kernel, prec_bits, shards);
  double lx = std::log(static_cast<double>(x));
  out.gamma_val = rep.gamma;
  out.gamma1 = rep.gamma1;
  out.gamma_threshold = out.C_used * kernel.mean() * static_cast<double>(x) / lx;
  out.gamma1_threshold = S.lower * static_cast<double>(x) / (2.0 * lx);
  out.gamma_ok = rep.gamma >= out.gamma_threshold;
  out.gamma1_ok = static_cast<double>(rep.gamma1) > out.gamma1_threshold;
  out.pass = out.gamma_ok && out.gamma1_ok;
  out.margin = out.gamma_threshold > 0.0
                   ? rep.gamma / out.gamma_threshold - 1.0
                   : 0.0;
  return out;
}

RosserPoint rosser_point(double x) {
  if (!(x >= 20.5)) throw std::invalid_argument("rosser: x must be >= 20.5");
  RosserPoint pt;
  pt.x = x;
  u64 hi = static_cast<u64>(std::floor(2.0 * x));
  u64 lo = static_cast<u64>(std::floor(x));
  pt.count = prime_pi(hi) - prime_pi(lo);
  pt.rhs = 3.0 * x / (5.0 * std::log(x));
  pt.ok = static_cast<double>(pt.count) > pt.rhs;
  return pt;
}

bool rosser_check(double x) { return rosser_point(x).ok; }

std::vector<RosserPoint> rosser_grid(const std::vector<double>& xs) {
  std::vector<RosserPoint> out;
  if (xs.empty()) return out;
  // pi is needed at floor(x) and floor(2x); sweep one segmented sieve
  std::vector<u64> marks;
  for (double x : xs) {
    if (!(x >= 20.5)) throw std::invalid_argument("rosser: x must be >= 20.5");
    marks.push_back(static_cast<u64>(std::floor(x)));
    marks.push_back(static_cast<u64>(std::floor(2.0 * x)));
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  u64 limit = marks.back();
  if (limit > 4 * max_range_len) throw budget_error("rosser: grid exceeds budget");

  std::map<u64, u64> pi_at;
  std::vector<u64> base = primes_up_to(isqrt_u64(limit));
  const u64 seg = u64(1) << 22;
  u64 count = 0;
  size_t mi = 0;
  std::vector<u8> comp;
  for (u64 lo = 2; lo <= limit && mi < marks.size(); lo += seg) {
    u64 hi = std::min(limit, lo + seg - 1);
    comp.assign(hi - lo + 1, 0);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 m = start; m <= hi; m += p) comp[m - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n) {
      if (!comp[n - lo]) ++count;
      while (mi < marks.size() && marks[mi] == n) pi_at[marks[mi++]] = count;
    }
  }
  while (mi < marks.size()) pi_at[marks[mi++]] = count;  // marks below 2

  for (double x : xs) {
    RosserPoint pt;
    pt.x = x;
    pt.count = pi_at[static_cast<u64>(std::floor(2.0 * x))] -
               pi_at[static_cast<u64>(std::floor(x))];
    pt.rhs = 3.0 * x / (5.0 * std::log(x));
    pt.ok = static_cast<double>(pt.count) > pt.rhs;
    out.push_back(pt);
  }
  return out;
}

} // namespace sflab
