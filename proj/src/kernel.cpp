#include "sflab/kernel.hpp"

#include <cmath>
#include <numbers>

namespace sflab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double sinc(double x) {
  if (std::fabs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double reduce_mod1(double t) {
  t -= std::floor(t);
  if (t > 0.5) t -= 1.0;  // to (-1/2, 1/2]
  return t;
}

} // namespace

double SmoothKernel::ih_pdf(double z) const {
  // density of the sum of r uniforms on [0,1], evaluated by the B-spline
  // recurrence f_m(z) = ((z) f_{m-1}(z) + (m - z) f_{m-1}(z-1))/(m-1);
  // all weights on nonzero entries are nonnegative, so no cancellation
  if (z <= 0.0 || z >= r_) return 0.0;
  double v[33] = {0};
  for (int j = 0; j < r_; ++j) v[j] = (z - j >= 0.0 && z - j < 1.0) ? 1.0 : 0.0;
  for (int m = 2; m <= r_; ++m)
    for (int j = 0; j + m <= r_; ++j)
      v[j] = ((z - j) * v[j] + (m - (z - j)) * v[j + 1]) / (m - 1);
  return v[0];
}

SmoothKernel SmoothKernel::build(double delta, int r) {
  // delta < 1/2 keeps the periodized supports disjoint; desk-scale
  // Delta = x^-theta sits well above the asymptotic regime
  if (!(delta > 0.0) || !(delta < 0.5))
    throw std::invalid_argument("kernel: delta must lie in (0, 1/2)");
  if (r < 2 || r % 2 != 0)
    throw std::invalid_argument("kernel: order must be even and >= 2");
  if (r > 32) throw budget_error("kernel: order exceeds budget (cancellation)");
  SmoothKernel k;
  k.delta_ = delta;
  k.r_ = r;
  k.peak_ = k.ih_pdf(r / 2.0);
  k.mean_ = (2.0 * delta / r) / k.peak_;
  return k;
}

double SmoothKernel::eval(double t) const {
  t = reduce_mod1(t);
  if (std::fabs(t) >= delta_) return 0.0;
  // t = (z - r/2) * (2 Delta / r)
  double z = t * r_ / (2.0 * delta_) + r_ / 2.0;
  return std::min(1.0, ih_pdf(z) / peak_);
}

double SmoothKernel::g(i64 k) const {
  if (k == 0) return 1.0;
  double x = two_pi * static_cast<double>(k) * delta_ / r_;
  return std::pow(sinc(x), r_);
}

std::complex<double> SmoothKernel::coeff_c(i64 k, double beta) const {
  if (k == 0) throw std::invalid_argument("coeff_c: k must be nonzero");
  double phase = two_pi * beta * static_cast<double>(k);
  return g(k) * std::complex<double>(std::cos(phase), std::sin(phase));
}

double SmoothKernel::fourier_tail(u64 cutoff) const {
  if (cutoff < 1) throw std::invalid_argument("fourier_tail: cutoff must be >= 1");
  // |g(k)| <= min(1, (c/k)^r) with c = r / (2 pi Delta)
  double c = r_ / (two_pi * delta_);
  u64 k1 = std::max(cutoff, static_cast<u64>(std::floor(c)));
  double ones = static_cast<double>(k1 - cutoff);
  // sum_{k > k1} (c/k)^r < c^r k1^{1-r} / (r-1)
  double power = std::pow(c / static_cast<double>(k1), r_) *
                 (static_cast<double>(k1) / (r_ - 1));
  return 2.0 * delta_ * (ones + power);
}

} // namespace sflab
