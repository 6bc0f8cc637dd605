#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sflab/dioph.hpp"
#include "sflab/kernel.hpp"

#include <cmath>
#include <numbers>

using namespace sflab;

namespace {

constexpr double pi = std::numbers::pi;

// box density of half-width h, mass 1
double box(double u, double h) { return std::fabs(u) < h ? 1.0 / (2 * h) : 0.0; }

// triangle density = box * box, half-width 2h
double tri(double u, double h) {
  double s = 2 * h - std::fabs(u);
  return s > 0 ? s / (4 * h * h) : 0.0;
}

// exact overlap form of (box * box)(t)
double conv_box_box(double t, double h) {
  double s = 2 * h - std::fabs(t);
  return s > 0 ? s / (4 * h * h) : 0.0;
}

// (tri * tri)(t) via per-interval Simpson; exact because the integrand is
// piecewise quadratic with knots on the s-grid whenever t is on the s-grid
double conv_tri_tri(double t, double h, double s) {
  double lo = -2 * h, hi = 2 * h;
  int n = static_cast<int>(std::lround((hi - lo) / s));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double a = lo + i * s;
    double f0 = tri(a, h) * tri(t - a, h);
    double fm = tri(a + s / 2, h) * tri(t - a - s / 2, h);
    double f1 = tri(a + s, h) * tri(t - a - s, h);
    total += s / 6.0 * (f0 + 4.0 * fm + f1);
  }
  return total;
}

} // namespace

TEST_CASE("build validation") {
  CHECK_THROWS_AS(SmoothKernel::build(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(SmoothKernel::build(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(SmoothKernel::build(0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS(SmoothKernel::build(0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(SmoothKernel::build(0.1, 64), budget_error);
  // desk-scale Delta = x^-theta values sit above 1/4; still valid
  CHECK_NOTHROW(SmoothKernel::build(0.398, 2));
}

TEST_CASE("r=2 triangle closed form") {
  auto k = SmoothKernel::build(0.1, 2);
  CHECK(k.eval(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.eval(0.05) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(k.eval(-0.05) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(k.eval(0.1) == 0.0);
  CHECK(k.eval(0.5) == 0.0);
  CHECK(k.eval(1.05) == doctest::Approx(0.5).epsilon(1e-12));  // periodic
  CHECK(k.mean() == doctest::Approx(0.1).epsilon(1e-14));      // mean = Delta exactly
  for (double t = -0.099; t < 0.1; t += 0.007)
    CHECK(k.eval(t) == doctest::Approx(1.0 - std::fabs(t) / 0.1).epsilon(1e-12));
}

TEST_CASE("r=2 coefficients are the squared box transform") {
  auto k = SmoothKernel::build(0.1, 2);
  CHECK(k.g(0) == 1.0);
  for (i64 kk = 1; kk <= 50; ++kk) {
    double x = pi * kk * 0.1;
    CHECK(k.g(kk) == doctest::Approx(std::pow(std::sin(x) / x, 2)).epsilon(1e-12));
    CHECK(k.g(kk) == k.g(-kk));
    CHECK(k.g(kk) >= 0.0);
    CHECK(k.g(kk) <= 1.0);
  }
}

TEST_CASE("coefficient symmetry and range at higher orders") {
  for (int r : {4, 8, 14}) {
    auto k = SmoothKernel::build(0.1, r);
    CHECK(k.g(0) == 1.0);
    for (i64 kk = 1; kk <= 200; ++kk) {
      CHECK(k.g(kk) == k.g(-kk));
      CHECK(k.g(kk) >= 0.0);
      CHECK(k.g(kk) <= 1.0);
    }
  }
}

TEST_CASE("coeff_c") {
  auto k = SmoothKernel::build(0.1, 2);
  CHECK_THROWS_AS(k.coeff_c(0, 0.0), std::invalid_argument);
  auto c = k.coeff_c(3, 0.0);
  CHECK(c.imag() == 0.0);
  double x = 0.3 * pi;
  CHECK(c.real() == doctest::Approx(std::pow(std::sin(x) / x, 2)).epsilon(1e-12));
  auto cm = k.coeff_c(1, 0.5);  // e(1/2) = -1
  CHECK(cm.real() == doctest::Approx(-k.g(1)).epsilon(1e-12));
  CHECK(cm.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(k.coeff_c(7, 0.3)) == doctest::Approx(k.g(7)).epsilon(1e-12));
}

TEST_CASE("numeric convolution oracle, r=2 and r=4, 1e-9") {
  // r = 2: chi proportional to box*box with box half-width Delta/2
  double delta = 0.1;
  auto k2 = SmoothKernel::build(delta, 2);
  double h2 = delta / 2;
  double peak2 = conv_box_box(0.0, h2);
  for (int i = -40; i <= 40; ++i) {
    double t = i * delta / 32.0;
    CHECK(k2.eval(t) ==
          doctest::Approx(conv_box_box(t, h2) / peak2).epsilon(1e-9));
  }
  // r = 4: chi proportional to tri*tri with triangle half-width Delta/2
  auto k4 = SmoothKernel::build(delta, 4);
  double h4 = delta / 4;  // box half-width; tri half-width = Delta/2
  double s = delta / 8;
  double peak4 = conv_tri_tri(0.0, h4, s);
  for (int i = -10; i <= 10; ++i) {
    double t = i * s;
    CHECK(k4.eval(t) - conv_tri_tri(t, h4, s) / peak4 ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::fabs(k4.eval(t) - conv_tri_tri(t, h4, s) / peak4) < 1e-9);
  }
}

TEST_CASE("support and sandwich invariants") {
  // delta = 1/8 keeps the support boundary exactly representable
  const double delta = 0.125;
  for (int r : {2, 4, 8, 14}) {
    auto k = SmoothKernel::build(delta, r);
    CHECK(k.eval(delta) == 0.0);
    CHECK(k.eval(0.25) == 0.0);
    CHECK(k.eval(0.875) == 0.0);  // = chi(-1/8)
    CHECK(k.eval(0.5) == 0.0);
    CHECK(k.mean() <= delta + 1e-15);
    for (int i = -2048; i <= 2048; ++i) {
      double t = i / 4096.0;
      double v = k.eval(t);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      double dist = std::fabs(t - std::round(t));
      if (dist < delta) CHECK(v > 0.0);   // positive on the open support
      if (dist >= delta) CHECK(v == 0.0); // chi <= indicator(||t|| < Delta)
    }
  }
}

TEST_CASE("mean identity by exact quadrature") {
  // integrate chi over one period with per-interval Simpson aligned to the
  // polynomial pieces (exact for the cubic pieces of r = 4)
  for (int r : {2, 4}) {
    double delta = 0.125;
    auto k = SmoothKernel::build(delta, r);
    double s = delta / 8;
    int n = static_cast<int>(std::lround(2 * delta / s));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double a = -delta + i * s;
      total += s / 6.0 * (k.eval(a) + 4.0 * k.eval(a + s / 2) + k.eval(a + s));
    }
    CHECK(total == doctest::Approx(k.mean()).epsilon(1e-9));
    if (r == 2) CHECK(total == doctest::Approx(delta).epsilon(1e-9));
  }
}

TEST_CASE("partial Fourier sums converge to eval") {
  // r = 2 decays like k^-2: N = 2000 gives 1e-3; r = 4 like k^-4: N = 600
  // reaches 1e-6 (both dominated by the documented tail majorant)
  auto check_partial = [](int r, int N, double tol) {
    double delta = 0.1;
    auto k = SmoothKernel::build(delta, r);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double t = -0.5 + i / 1000.0;
      double s = 1.0;
      for (int kk = 1; kk <= N; ++kk)
        s += 2.0 * k.g(kk) * std::cos(2 * pi * kk * t);
      worst = std::max(worst, std::fabs(k.mean() * s - k.eval(t)));
    }
    CHECK(worst < tol);
  };
  check_partial(2, 2000, 1e-3);
  check_partial(4, 600, 1e-6);
}

TEST_CASE("fourier_tail bounds the true tail and decreases") {
  for (int r : {2, 4, 14}) {
    auto k = SmoothKernel::build(0.1, r);
    double prev = 1e300;
    for (u64 K : {1, 2, 5, 10, 50, 100, 500, 1000, 5000}) {
      double bound = k.fourier_tail(K);
      CHECK(bound <= prev);  // monotone in the cutoff
      prev = bound;
      double brute = 0.0;
      for (u64 kk = K + 1; kk <= 200000; ++kk) brute += std::fabs(k.g(kk));
      CHECK(2 * 0.1 * brute <= bound * (1 + 1e-12));
    }
    CHECK(k.fourier_tail(2000000) < 1e-4);
  }
}

TEST_CASE("tail bound beats 1/x at the schedule point (x = 1e6)") {
  auto params = params_for(1000000, 0.1);
  int r = static_cast<int>(std::ceil(std::log(1e6)));
  CHECK(r == 14);
  auto k = SmoothKernel::build(params.delta, r);
  double bound = k.fourier_tail(static_cast<u64>(params.K));
  CHECK(bound <= 1e-6);
}
