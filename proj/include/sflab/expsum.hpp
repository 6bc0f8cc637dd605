#pragma once

#include "sflab/common.hpp"
#include "sflab/dioph.hpp"

#include <complex>
#include <vector>

namespace sflab {

// Exact geometric-series evaluation of sum_{n <= X, n = a (d)} e(gamma n).
// The classical sharp bound |S| <= min(X/d + 1, 1/(2 ||gamma d||)) holds.
std::complex<double> ap_exp_sum(u64 X, u64 a, u64 d, const IrrationalSpec& gamma,
                                int prec_bits = default_prec_bits);

// the sharp envelope itself (for audits)
double ap_exp_bound(u64 X, u64 a, u64 d, const IrrationalSpec& gamma,
                    int prec_bits = default_prec_bits);

struct VaughanAudit {
  u64 X = 0;
  double Y = 0;
  i64 a = 0;
  u64 q = 0;
  double lhs = 0;       // exact sum_{n<=X} min(XY/n, 1/||alpha n||)
  double envelope = 0;  // XY (1/q + 1/Y + q/(XY)) log(2Xq)
  double ratio = 0;
  bool flagged = false; // ratio above the configured ceiling
};

VaughanAudit vaughan_audit(u64 X, double Y, Convergent conv,
                           const IrrationalSpec& alpha, double ceiling = 10.0,
                           int prec_bits = default_prec_bits);

struct QuadAudit {
  u64 M = 0, J = 0, x = 0, q = 0;
  int power = 2;        // exponent on m: 2 or 4
  double lhs = 0;       // exact double sum with tau weights
  double envelope = 0;  // lemma envelope times x^epsilon
  double ratio = 0;
  bool flagged = false;
};

// sum_{m ~ M} tau(m) sum_{j ~ J} tau(j) min(x/(m^power j), 1/||alpha m^power j||)
// against the classical quadratic- (power 2) / quartic-argument (power 4)
// envelope, epsilon = 0.05
QuadAudit quadratic_sum_audit(u64 M, u64 J, u64 x, const IrrationalSpec& alpha,
                              u64 q, int power, double ceiling = 10.0,
                              int prec_bits = default_prec_bits);

// Heath-Brown identity evaluation:
// sum_{j=1..J} (-1)^(j-1) C(J,j) sum_{m_1..m_j n_1..n_j = n, m_i <= z}
//   mu(m_1)...mu(m_j) log n_1;  equals Lambda(n) for n <= z^J
double hb_decompose(u64 n, u64 z, int J);

// (B, 2B]-shaped blocks exactly partitioning [lo, hi], inclusive pairs
std::vector<std::pair<u64, u64>> dyadic_split(u64 lo, u64 hi);

// Average divisor bounds over square-free numbers (Mennema lemmas):
//   lemma1: sum_{n<=x} mu^2(n) tau_k(n)        vs C1^k x (log x)^(k-1)
//   lemma2: sum_{d>x} mu^2(d) tau_k(d) / d^2   vs C2^k (2k-2+log x)^(k-1) / x
struct MennemaAudit {
  int k = 0;
  u64 x = 0;
  double lemma1_sum = 0;
  double lemma1_ratio = 0;  // sum / (x (ln x)^(k-1))
  double lemma1_root = 0;   // ratio^(1/k), the bounded constant
  double lemma2_sum = 0;
  double lemma2_ratio = 0;  // sum * x / (2k-2+ln x)^(k-1)
  double lemma2_root = 0;
};

std::vector<MennemaAudit> mennema_audit(const std::vector<int>& ks,
                                        const std::vector<u64>& xs);

} // namespace sflab
