#pragma once

#include "sflab/common.hpp"

#include <complex>

namespace sflab {

// Periodic smoothing function chi: positive on ||t|| < Delta, zero outside,
// 0 < chi <= 1.  Realized as the r-fold self-convolution of a box of width
// 2 Delta / r (support exactly (-Delta, Delta)), rescaled so sup chi = 1.
// Fourier expansion: chi(t) = m (1 + sum_{k != 0} g(k) e(kt)) with
// g(k) = sinc(2 pi k Delta / r)^r and constant term m = mean().
// For r = 2 this is the triangle 1 - |t|/Delta and m = Delta exactly;
// for r > 2 the sup-normalized kernel has m < Delta.
class SmoothKernel {
public:
  static SmoothKernel build(double delta, int r);

  double delta() const { return delta_; }
  int order() const { return r_; }
  double mean() const { return mean_; }

  double eval(double t) const;  // chi(t), t reduced mod 1
  double g(i64 k) const;
  std::complex<double> coeff_c(i64 k, double beta) const;  // g(k) e(beta k), k != 0

  // upper bound on Delta * sum_{|k| > cutoff} |g(k)| via the majorant
  // min(1, (r / (2 pi Delta k))^r), summed in closed form
  double fourier_tail(u64 cutoff) const;

private:
  SmoothKernel() = default;
  double ih_pdf(double z) const;  // Irwin-Hall density of r uniforms on [0,1]

  double delta_ = 0.0;
  int r_ = 0;
  double peak_ = 0.0;  // central density value f_r(r/2)
  double mean_ = 0.0;
};

} // namespace sflab
