#pragma once

#include "sflab/common.hpp"
#include "sflab/dioph.hpp"
#include "sflab/kernel.hpp"
#include "sflab/series.hpp"
#include "sflab/shifts.hpp"

#include <complex>
#include <vector>

namespace sflab {

// #{n <= x : n + a_1, ..., n + a_s all r-free}, exact
u64 mirsky_count(u64 x, const ShiftSystem& A, int r);
// same with n restricted to primes
u64 changa_count(u64 x, const ShiftSystem& A, int r);

struct CountReport {
  u64 x = 0;
  int r = 2;
  u64 count = 0;
  double series_mid = 0;      // enclosure midpoint of the Euler product
  double main_term = 0;       // mid * x (Mirsky) or mid * pi(x) (Changa)
  double abs_error = 0;
  double error_ratio = 0;     // |error| / x^(2/(r+1)+0.05)   (Mirsky)
                              // |error| * (ln x)^2 / x        (Changa)
  double fitted_exponent = 0; // ln max(|error|, 1) / ln x
};

CountReport mirsky_report(u64 x, const ShiftSystem& A, int r, u64 cutoff = 100003);
CountReport changa_report(u64 x, const ShiftSystem& A, int r, u64 cutoff = 100003);

struct GammaReport {
  u64 x = 0;
  double theta = 0;
  double gamma = 0;  // sum over p in (x,2x] of chi(alpha p + beta) mu^2-weights
  i64 gamma1 = 0;    // count of p with all shifts square-free
  std::complex<double> gamma2{0, 0};
  u64 K_used = 0;    // inner sum runs over 0 < |k| <= K_used
  double delta = 0, K = 0, mean = 0;
  int kernel_order = 2;
  double identity_residual = 0;  // |gamma - mean (gamma1 + Re gamma2)|
  double tail_bound = 0;         // mean * (sum_{|k|>K} |g|) * gamma1 + fp slack
  bool identity_ok = false;
};

GammaReport gamma_report(u64 x, const IrrationalSpec& alpha, Rat64 beta,
                         double theta, const ShiftSystem& A,
                         const SmoothKernel& kernel,
                         int prec_bits = default_prec_bits, int shards = 1);

// Gamma_3(y) = sum_{0<|k|<=K0} c(k) sum_{n ~ y} Lambda(n) mu^2(n+a_1)...e(alpha k n)
std::complex<double> gamma3(u64 y, const IrrationalSpec& alpha, Rat64 beta,
                            double theta, const ShiftSystem& A,
                            const SmoothKernel& kernel, u64 K0,
                            int prec_bits = default_prec_bits);

struct UDecomposition {
  u64 y = 0;
  u64 K0 = 0;
  u64 q_used = 0;  // convergent denominator entering the U3 envelope
  std::complex<double> total{0, 0};
  std::complex<double> U1{0, 0};  // d > y^(1/2)
  std::complex<double> U2{0, 0};  // y^(1/5) < d <= y^(1/2)
  std::complex<double> U3{0, 0};  // d <= y^(1/5)
  double env1 = 0, env2 = 0, env3 = 0;
  double ratio1 = 0, ratio2 = 0, ratio3 = 0;
  std::vector<std::pair<u64, std::complex<double>>> per_d;  // nonzero U_d
};

// Gamma_3(y) = sum_d U_d computed through the square-divisor congruences;
// exact identity with gamma3 (tested to 1e-6 relative)
UDecomposition u_decomposition(u64 y, const IrrationalSpec& alpha, Rat64 beta,
                               double theta, const ShiftSystem& A,
                               const SmoothKernel& kernel, u64 K0,
                               int prec_bits = default_prec_bits);

struct LowerBoundAudit {
  u64 x = 0;
  bool skipped = false;  // below the Rosser threshold x >= 20.5
  bool pass = false;
  bool gamma_ok = false, gamma1_ok = false;
  double gamma_val = 0, gamma_threshold = 0, margin = 0;
  i64 gamma1 = 0;
  double gamma1_threshold = 0;
  double S_lower = 0, S_upper = 0;
  double C_used = 0;  // S_lower / 4
};

// checks Gamma(x) >= (S_lower/4) mean x / ln x and
// Gamma_1(x) > S_lower x / (2 ln x); refuses non-admissible systems
LowerBoundAudit lower_bound_audit(u64 x, const IrrationalSpec& alpha, Rat64 beta,
                                  double theta, const ShiftSystem& A,
                                  const SmoothKernel& kernel,
                                  u64 series_cutoff = 100003,
                                  int prec_bits = default_prec_bits,
                                  int shards = 1);

struct RosserPoint {
  double x = 0;
  u64 count = 0;  // pi(2x) - pi(x)
  double rhs = 0; // 3x / (5 ln x)
  bool ok = false;
};

bool rosser_check(double x);  // x >= 20.5
RosserPoint rosser_point(double x);
std::vector<RosserPoint> rosser_grid(const std::vector<double>& xs);

} // namespace sflab
