// sflab: batch laboratory for primes p with ||alpha p + beta|| < p^-theta
// whose shifted sums p + a_i are square-free.  Every subcommand prints a
// machine-readable report (JSON by default, CSV for grid audits) with
// byte-stable formatting: 12 significant digits, fixed key order.

#include "CLI11.hpp"

#include "sflab/arith.hpp"
#include "sflab/dioph.hpp"
#include "sflab/expsum.hpp"
#include "sflab/gamma.hpp"
#include "sflab/jsonw.hpp"
#include "sflab/kernel.hpp"
#include "sflab/series.hpp"
#include "sflab/shifts.hpp"

#include <cstdio>
#include <random>
#include <iostream>
#include <string>
#include <vector>

using namespace sflab;

namespace {

std::vector<u64> parse_shift_list(const std::string& text) {
  std::vector<u64> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw std::invalid_argument("bad list: " + text);
    out.push_back(std::stoull(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::pair<u64, u64> parse_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must be lo:hi");
  return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
}

// kernel order for a gamma-type run: explicit --order, or 2 by default
SmoothKernel kernel_for(u64 x, double theta, int order) {
  auto params = params_for(x, theta);
  return SmoothKernel::build(params.delta, order);
}

struct CommonArgs {
  std::string alpha = "sqrt:2";
  std::string beta = "0";
  double theta = 0.1;
  std::string shifts = "1,2";
  int order = 2;
  int prec = prec_bits_from_env();
  int shards = 1;
};

int run(int argc, char** argv) {
  CLI::App app{"laboratory for primes with square-free shifted sums under a "
               "Diophantine constraint"};
  app.require_subcommand(1);

  CommonArgs ca;

  // ---- search ----
  auto* search = app.add_subcommand("search",
      "primes p in (lo,hi] with ||alpha p + beta|| < p^-theta and "
      "square-free p + a_i");
  std::string search_range = "1:100";
  search->add_option("--alpha", ca.alpha, "sqrt:D | surd:p,q,D | cf:d0,d1,... | bits:<hex>");
  search->add_option("--beta", ca.beta, "decimal or rational p/q");
  search->add_option("--theta", ca.theta, "exponent in p^-theta (0 <= theta < 1)");
  search->add_option("--shifts", ca.shifts, "comma-separated shift set");
  search->add_option("--range", search_range, "lo:hi");
  search->add_option("--shards", ca.shards, "worker count (output-invariant)");
  search->add_option("--prec-bits", ca.prec, "fixed-point fractional bits");

  // ---- series ----
  auto* series = app.add_subcommand("series", "singular-series enclosure");
  std::string series_kind = "changa";
  u64 series_cutoff = 100003;
  int series_r = 2;
  series->add_option("--shifts", ca.shifts);
  series->add_option("--kind", series_kind, "changa | mirsky");
  series->add_option("--cutoff", series_cutoff, "prime cutoff P");
  series->add_option("--r", series_r, "power for the mirsky product");

  // ---- count ----
  auto* count = app.add_subcommand("count", "shifted r-free counts with error report");
  std::string count_kind = "mirsky";
  u64 count_x = 1000;
  int count_r = 2;
  u64 count_cutoff = 100003;
  count->add_option("--kind", count_kind, "mirsky | changa");
  count->add_option("--x", count_x);
  count->add_option("--shifts", ca.shifts);
  count->add_option("--r", count_r);
  count->add_option("--cutoff", count_cutoff, "series cutoff for the main term");

  // ---- gamma ----
  auto* gamma_cmd = app.add_subcommand("gamma", "Gamma, Gamma_1, Gamma_2 report over (x,2x]");
  u64 gamma_x = 10000;
  gamma_cmd->add_option("--x", gamma_x);
  gamma_cmd->add_option("--alpha", ca.alpha);
  gamma_cmd->add_option("--beta", ca.beta);
  gamma_cmd->add_option("--theta", ca.theta);
  gamma_cmd->add_option("--shifts", ca.shifts);
  gamma_cmd->add_option("--order", ca.order, "kernel order (even)");
  gamma_cmd->add_option("--shards", ca.shards);
  gamma_cmd->add_option("--prec-bits", ca.prec);

  // ---- gamma3 ----
  auto* gamma3_cmd = app.add_subcommand("gamma3", "Gamma_3(y) by direct evaluation");
  u64 g3_y = 1000;
  u64 g3_k0 = 10;
  gamma3_cmd->add_option("--y", g3_y);
  gamma3_cmd->add_option("--alpha", ca.alpha);
  gamma3_cmd->add_option("--beta", ca.beta);
  gamma3_cmd->add_option("--theta", ca.theta);
  gamma3_cmd->add_option("--shifts", ca.shifts);
  gamma3_cmd->add_option("--order", ca.order);
  gamma3_cmd->add_option("--k0", g3_k0, "frequency cap K0 <= K");
  gamma3_cmd->add_option("--prec-bits", ca.prec);

  // ---- udecomp ----
  auto* udecomp = app.add_subcommand("udecomp",
      "Gamma_3(y) = sum U_d through the square-divisor congruences");
  u64 ud_y = 1000;
  u64 ud_k0 = 10;
  udecomp->add_option("--y", ud_y);
  udecomp->add_option("--alpha", ca.alpha);
  udecomp->add_option("--beta", ca.beta);
  udecomp->add_option("--theta", ca.theta);
  udecomp->add_option("--shifts", ca.shifts);
  udecomp->add_option("--order", ca.order);
  udecomp->add_option("--k0", ud_k0);
  udecomp->add_option("--prec-bits", ca.prec);

  // ---- kernel ----
  auto* kernel_cmd = app.add_subcommand("kernel",
      "smoothing kernel samples and Fourier coefficients (CSV)");
  double kern_delta = 0.1;
  int kern_order = 2;
  int kern_points = 41;
  i64 kern_kmax = 20;
  u64 kern_tail_cutoff = 100;
  kernel_cmd->add_option("--delta", kern_delta);
  kernel_cmd->add_option("--order", kern_order);
  kernel_cmd->add_option("--points", kern_points, "chi samples across one period");
  kernel_cmd->add_option("--kmax", kern_kmax, "coefficient table size");
  kernel_cmd->add_option("--beta", ca.beta, "phase for the c(k) columns");
  kernel_cmd->add_option("--tail-cutoff", kern_tail_cutoff, "cutoff for the tail bound row");

  // ---- expsum ----
  auto* expsum = app.add_subcommand("expsum",
      "exponential-sum evaluations and lemma audits (CSV)");
  std::string exp_mode = "ap";
  u64 exp_X = 1000, exp_a = 1, exp_d = 1;
  double exp_Y = 10.0;
  int exp_conv = 4;
  u64 exp_M = 8, exp_J = 8, exp_x = 10000, exp_q = 0;
  int exp_power = 2;
  std::string exp_range = "1:8";
  double exp_ceiling = 10.0;
  u64 exp_cases = 0;
  u64 exp_seed = 1;
  expsum->add_option("--mode", exp_mode, "ap | vaughan | quad | dyadic");
  expsum->add_option("--cases", exp_cases,
                     "ap: emit a randomized batch of this many cases");
  expsum->add_option("--seed", exp_seed, "seed for the randomized batch");
  expsum->add_option("--alpha", ca.alpha);
  expsum->add_option("--X", exp_X);
  expsum->add_option("--a", exp_a);
  expsum->add_option("--d", exp_d);
  expsum->add_option("--Y", exp_Y);
  expsum->add_option("--conv", exp_conv, "index of the convergent supplying a/q");
  expsum->add_option("--M", exp_M);
  expsum->add_option("--J", exp_J);
  expsum->add_option("--x", exp_x);
  expsum->add_option("--q", exp_q, "denominator; 0 = take it from --conv");
  expsum->add_option("--power", exp_power, "2 or 4");
  expsum->add_option("--range", exp_range, "lo:hi for dyadic blocks");
  expsum->add_option("--ceiling", exp_ceiling, "audit flag threshold");
  expsum->add_option("--prec-bits", ca.prec);

  // ---- hb ----
  auto* hb = app.add_subcommand("hb", "Heath-Brown identity evaluation");
  u64 hb_n = 8, hb_z = 8;
  int hb_J = 1;
  hb->add_option("--n", hb_n);
  hb->add_option("--z", hb_z);
  hb->add_option("--J", hb_J);

  // ---- audit ----
  auto* audit = app.add_subcommand("audit", "lower-bound audit / Mennema grid");
  std::string audit_kind = "lower";
  u64 audit_x = 10000;
  u64 audit_cutoff = 100003;
  std::string audit_sched;
  std::string audit_ks = "2,3,4,5";
  std::string audit_xs = "1000,10000,100000,1000000";
  audit->add_option("--kind", audit_kind, "lower | mennema");
  audit->add_option("--x", audit_x);
  audit->add_option("--alpha", ca.alpha);
  audit->add_option("--beta", ca.beta);
  audit->add_option("--theta", ca.theta);
  audit->add_option("--shifts", ca.shifts);
  audit->add_option("--order", ca.order);
  audit->add_option("--cutoff", audit_cutoff, "series cutoff");
  audit->add_option("--q-schedule", audit_sched,
                    "comma list of q_j; audits at x_j = round(q_j^(20/7))");
  audit->add_option("--ks", audit_ks, "mennema: divisor orders");
  audit->add_option("--xs", audit_xs, "mennema: grid points");
  audit->add_option("--shards", ca.shards);
  audit->add_option("--prec-bits", ca.prec);

  // ---- rosser ----
  auto* rosser = app.add_subcommand("rosser", "pi(2x) - pi(x) > 3x/(5 ln x) check");
  double rosser_x = 100.0;
  std::string rosser_grid_spec;
  rosser->add_option("--x", rosser_x);
  rosser->add_option("--grid", rosser_grid_spec, "lo:hi:n equally spaced points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (search->parsed()) {
    auto [lo, hi] = parse_range(search_range);
    auto alpha = IrrationalSpec::parse(ca.alpha);
    auto beta = parse_rat(ca.beta);
    ShiftSystem A(parse_shift_list(ca.shifts));
    if (!A.admissible())
      std::fprintf(stderr,
                   "warning: shift system is not admissible; expected density 0\n");
    auto primes = search_primes(lo, hi, alpha, beta, ca.theta, A, ca.prec,
                                ca.shards);
    std::printf("%s\n", json_u64_array(primes).c_str());
    return 0;
  }

  if (series->parsed()) {
    ShiftSystem A(parse_shift_list(ca.shifts));
    SeriesEnclosure e;
    if (series_kind == "changa")
      e = changa_product(A, series_cutoff);
    else if (series_kind == "mirsky")
      e = mirsky_product(A, series_r, series_cutoff);
    else
      throw std::invalid_argument("series: unknown kind " + series_kind);
    JsonW w;
    w.real("lower", e.lower)
        .real("upper", e.upper)
        .num("P", e.cutoff)
        .boolean("exact_zero", e.exact_zero);
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (count->parsed()) {
    ShiftSystem A(parse_shift_list(ca.shifts));
    CountReport rep;
    if (count_kind == "mirsky")
      rep = mirsky_report(count_x, A, count_r, count_cutoff);
    else if (count_kind == "changa")
      rep = changa_report(count_x, A, count_r, count_cutoff);
    else
      throw std::invalid_argument("count: unknown kind " + count_kind);
    JsonW w;
    w.str("kind", count_kind)
        .num("x", rep.x)
        .num("r", rep.r)
        .num("count", rep.count)
        .real("series_mid", rep.series_mid)
        .real("main_term", rep.main_term)
        .real("abs_error", rep.abs_error)
        .real("error_ratio", rep.error_ratio)
        .real("fitted_exponent", rep.fitted_exponent);
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (gamma_cmd->parsed()) {
    auto alpha = IrrationalSpec::parse(ca.alpha);
    auto beta = parse_rat(ca.beta);
    ShiftSystem A(parse_shift_list(ca.shifts));
    auto kernel = kernel_for(gamma_x, ca.theta, ca.order);
    auto rep = gamma_report(gamma_x, alpha, beta, ca.theta, A, kernel, ca.prec,
                            ca.shards);
    JsonW w;
    w.num("x", rep.x)
        .real("theta", rep.theta)
        .real("gamma", rep.gamma)
        .num("gamma1", rep.gamma1)
        .real("gamma2_re", rep.gamma2.real())
        .real("gamma2_im", rep.gamma2.imag())
        .num("K_used", rep.K_used)
        .real("delta", rep.delta)
        .real("K", rep.K)
        .real("mean", rep.mean)
        .num("kernel_order", rep.kernel_order)
        .real("identity_residual", rep.identity_residual)
        .real("tail_bound", rep.tail_bound)
        .boolean("identity_ok", rep.identity_ok);
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (gamma3_cmd->parsed()) {
    auto alpha = IrrationalSpec::parse(ca.alpha);
    auto beta = parse_rat(ca.beta);
    ShiftSystem A(parse_shift_list(ca.shifts));
    auto kernel = kernel_for(g3_y, ca.theta, ca.order);
    auto v = gamma3(g3_y, alpha, beta, ca.theta, A, kernel, g3_k0, ca.prec);
    JsonW w;
    w.num("y", g3_y).num("K0", g3_k0).real("re", v.real()).real("im", v.imag());
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (udecomp->parsed()) {
    auto alpha = IrrationalSpec::parse(ca.alpha);
    auto beta = parse_rat(ca.beta);
    ShiftSystem A(parse_shift_list(ca.shifts));
    auto kernel = kernel_for(ud_y, ca.theta, ca.order);
    auto ud = u_decomposition(ud_y, alpha, beta, ca.theta, A, kernel, ud_k0,
                              ca.prec);
    auto g3 = gamma3(ud_y, alpha, beta, ca.theta, A, kernel, ud_k0, ca.prec);
    double rel = std::abs(g3 - ud.total) / std::max(1.0, std::abs(g3));
    JsonW w;
    w.num("y", ud.y)
        .num("K0", ud.K0)
        .real("total_re", ud.total.real())
        .real("total_im", ud.total.imag())
        .real("gamma3_re", g3.real())
        .real("identity_rel_residual", rel)
        .real("U1_abs", std::abs(ud.U1))
        .real("U2_abs", std::abs(ud.U2))
        .real("U3_abs", std::abs(ud.U3))
        .real("env1", ud.env1)
        .real("env2", ud.env2)
        .real("env3", ud.env3)
        .real("ratio1", ud.ratio1)
        .real("ratio2", ud.ratio2)
        .real("ratio3", ud.ratio3)
        .num("q_used", ud.q_used)
        .num("d_support", static_cast<u64>(ud.per_d.size()));
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (kernel_cmd->parsed()) {
    auto kernel = SmoothKernel::build(kern_delta, kern_order);
    auto beta = parse_rat(ca.beta);
    std::printf("t,chi\n");
    for (int i = 0; i < kern_points; ++i) {
      double t = -0.5 + static_cast<double>(i) / (kern_points - 1);
      std::printf("%s,%s\n", json_real(t).c_str(), json_real(kernel.eval(t)).c_str());
    }
    std::printf("\nk,g,c_re,c_im\n");
    for (i64 k = 1; k <= kern_kmax; ++k) {
      auto c = kernel.coeff_c(k, beta.to_double());
      std::printf("%lld,%s,%s,%s\n", static_cast<long long>(k),
                  json_real(kernel.g(k)).c_str(), json_real(c.real()).c_str(),
                  json_real(c.imag()).c_str());
    }
    std::printf("\ncutoff,tail_bound\n%llu,%s\n",
                static_cast<unsigned long long>(kern_tail_cutoff),
                json_real(kernel.fourier_tail(kern_tail_cutoff)).c_str());
    std::printf("\ndelta,order,mean\n%s,%d,%s\n", json_real(kern_delta).c_str(),
                kern_order, json_real(kernel.mean()).c_str());
    return 0;
  }

  if (expsum->parsed()) {
    auto alpha = IrrationalSpec::parse(ca.alpha);
    if (exp_mode == "ap") {
      std::printf("mode,X,a,d,re,im,abs,bound,ratio\n");
      auto emit = [&](u64 X, u64 a, u64 d) {
        auto s = ap_exp_sum(X, a, d, alpha, ca.prec);
        double bound = ap_exp_bound(X, a, d, alpha, ca.prec);
        std::printf("ap,%llu,%llu,%llu,%s,%s,%s,%s,%s\n",
                    static_cast<unsigned long long>(X),
                    static_cast<unsigned long long>(a),
                    static_cast<unsigned long long>(d),
                    json_real(s.real()).c_str(), json_real(s.imag()).c_str(),
                    json_real(std::abs(s)).c_str(), json_real(bound).c_str(),
                    json_real(std::abs(s) / bound).c_str());
      };
      if (exp_cases == 0) {
        emit(exp_X, exp_a, exp_d);
      } else {
        std::mt19937_64 rng(exp_seed);
        for (u64 i = 0; i < exp_cases; ++i) {
          u64 X = rng() % std::max<u64>(exp_X, 1) + 1;
          u64 d = rng() % 100 + 1;
          u64 a = rng() % d + 1;
          emit(X, a, d);
        }
      }
    } else if (exp_mode == "vaughan") {
      auto cs = convergents(alpha, exp_conv);
      auto rep = vaughan_audit(exp_X, exp_Y, cs.back(), alpha, exp_ceiling,
                               ca.prec);
      std::printf("mode,X,Y,a,q,lhs,envelope,ratio,flagged\n");
      std::printf("vaughan,%llu,%s,%lld,%llu,%s,%s,%s,%d\n",
                  static_cast<unsigned long long>(rep.X),
                  json_real(rep.Y).c_str(), static_cast<long long>(rep.a),
                  static_cast<unsigned long long>(rep.q),
                  json_real(rep.lhs).c_str(), json_real(rep.envelope).c_str(),
                  json_real(rep.ratio).c_str(), rep.flagged ? 1 : 0);
    } else if (exp_mode == "quad") {
      u64 q = exp_q;
      if (q == 0) q = convergents(alpha, exp_conv).back().q;
      auto rep = quadratic_sum_audit(exp_M, exp_J, exp_x, alpha, q, exp_power,
                                     exp_ceiling, ca.prec);
      std::printf("mode,M,J,x,q,power,lhs,envelope,ratio,flagged\n");
      std::printf("quad,%llu,%llu,%llu,%llu,%d,%s,%s,%s,%d\n",
                  static_cast<unsigned long long>(rep.M),
                  static_cast<unsigned long long>(rep.J),
                  static_cast<unsigned long long>(rep.x),
                  static_cast<unsigned long long>(rep.q), rep.power,
                  json_real(rep.lhs).c_str(), json_real(rep.envelope).c_str(),
                  json_real(rep.ratio).c_str(), rep.flagged ? 1 : 0);
    } else if (exp_mode == "dyadic") {
      auto [lo, hi] = parse_range(exp_range);
      auto blocks = dyadic_split(lo, hi);
      std::printf("block_lo,block_hi\n");
      for (auto [a, b] : blocks)
        std::printf("%llu,%llu\n", static_cast<unsigned long long>(a),
                    static_cast<unsigned long long>(b));
    } else {
      throw std::invalid_argument("expsum: unknown mode " + exp_mode);
    }
    return 0;
  }

  if (hb->parsed()) {
    double v = hb_decompose(hb_n, hb_z, hb_J);
    double lam = von_mangoldt(hb_n);
    JsonW w;
    w.num("n", hb_n)
        .num("z", hb_z)
        .num("J", hb_J)
        .real("value", v)
        .real("von_mangoldt", lam)
        .real("residual", std::fabs(v - lam));
    std::printf("%s\n", w.close().c_str());
    return 0;
  }

  if (audit->parsed()) {
    if (audit_kind == "mennema") {
      std::vector<int> ks;
      for (u64 k : parse_shift_list(audit_ks)) ks.push_back(static_cast<int>(k));
      auto xs = parse_shift_list(audit_xs);
      auto rows = mennema_audit(ks, xs);
      std::printf("k,x,lemma1_sum,lemma1_ratio,lemma1_root,lemma2_sum,lemma2_ratio,lemma2_root\n");
      for (const auto& a : rows)
        std::printf("%d,%llu,%s,%s,%s,%s,%s,%s\n", a.k,
                    static_cast<unsigned long long>(a.x),
                    json_real(a.lemma1_sum).c_str(),
                    json_real(a.lemma1_ratio).c_str(),
                    json_real(a.lemma1_root).c_str(),
                    json_real(a.lemma2_sum).c_str(),
                    json_real(a.lemma2_ratio).c_str(),
                    json_real(a.lemma2_root).c_str());
      return 0;
    }
    if (audit_kind != "lower")
      throw std::invalid_argument("audit: unknown kind " + audit_kind);
    auto alpha = IrrationalSpec::parse(ca.alpha);
    auto beta = parse_rat(ca.beta);
    ShiftSystem A(parse_shift_list(ca.shifts));
    std::vector<u64> targets;
    if (!audit_sched.empty())
      targets = x_schedule(parse_shift_list(audit_sched));
    else
      targets.push_back(audit_x);
    std::string rows;
    bool all_pass = true;
    for (u64 x : targets) {
      auto kernel = kernel_for(x, ca.theta, ca.order);
      auto a = lower_bound_audit(x, alpha, beta, ca.theta, A, kernel,
                                 audit_cutoff, ca.prec, ca.shards);
      if (!rows.empty()) rows += ',';
      JsonW w;
      w.num("x", a.x)
          .boolean("skipped", a.skipped)
          .boolean("pass", a.pass)
          .real("gamma", a.gamma_val)
          .real("gamma_threshold", a.gamma_threshold)
          .real("margin", a.margin)
          .num("gamma1", a.gamma1)
          .real("gamma1_threshold", a.gamma1_threshold)
          .real("S_lower", a.S_lower)
          .real("S_upper", a.S_upper)
          .real("C_used", a.C_used);
      rows += w.close();
      if (!a.skipped && !a.pass) all_pass = false;
    }
    if (targets.size() == 1) {
      std::printf("%s\n", rows.c_str());
    } else {
      JsonW w;
      w.boolean("all_pass", all_pass).raw("audits", "[" + rows + "]");
      std::printf("%s\n", w.close().c_str());
    }
    return 0;
  }

  if (rosser->parsed()) {
    if (!rosser_grid_spec.empty()) {
      auto first_colon = rosser_grid_spec.find(':');
      auto second_colon = rosser_grid_spec.find(':', first_colon + 1);
      if (first_colon == std::string::npos || second_colon == std::string::npos)
        throw std::invalid_argument("rosser grid must be lo:hi:n");
      double lo = std::stod(rosser_grid_spec.substr(0, first_colon));
      double hi = std::stod(rosser_grid_spec.substr(
          first_colon + 1, second_colon - first_colon - 1));
      u64 n = std::stoull(rosser_grid_spec.substr(second_colon + 1));
      if (n < 2 || hi <= lo) throw std::invalid_argument("bad rosser grid");
      std::vector<double> xs;
      for (u64 i = 0; i < n; ++i)
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1));
      auto pts = rosser_grid(xs);
      bool all_ok = true;
      double min_margin = 1e300;
      for (const auto& p : pts) {
        all_ok = all_ok && p.ok;
        min_margin = std::min(min_margin, static_cast<double>(p.count) - p.rhs);
      }
      JsonW w;
      w.num("points", n).boolean("all_ok", all_ok).real("min_margin", min_margin);
      std::printf("%s\n", w.close().c_str());
    } else {
      auto p = rosser_point(rosser_x);
      JsonW w;
      w.real("x", p.x).num("count", p.count).real("rhs", p.rhs).boolean("ok", p.ok);
      std::printf("%s\n", w.close().c_str());
    }
    return 0;
  }

  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const budget_error& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
