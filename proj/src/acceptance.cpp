#include "powex/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "powex/cli.hpp"
#include "powex/convergence_lab.hpp"
#include "powex/exact_law.hpp"
#include "powex/expansions.hpp"
#include "powex/montecarlo.hpp"
#include "powex/norming.hpp"
#include "powex/special_functions.hpp"
#include "powex/table_writer.hpp"

namespace powex {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> xs;
  const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
  for (int i = 0; i < count; ++i) xs.push_back(start + i * step);
  return xs;
}

std::string num(double v) { return format_number(v, 6); }

CheckResult make_check(int id, const char* name) {
  CheckResult r;
  r.id = id;
  r.name = name;
  return r;
}

CheckResult check_norming_residual() {
  CheckResult r = make_check(1, "norming_residual");
  r.bound = 1e-12;
  for (double n : {10.0, 1e3, 1e6, 1e12}) {
    r.measured = std::max(r.measured, norming_residual(n, solve_b(n)));
  }
  r.pass = r.measured <= r.bound;
  r.detail = "max |2 pi b^2 e^{b^2} / n^2 - 1| over n in {1e1, 1e3, 1e6, 1e12}";
  return r;
}

CheckResult check_mills_series() {
  CheckResult r = make_check(2, "mills_series_bound");
  r.bound = 1.0;
  for (double x : {5.0, 10.0, 20.0}) {
    const double truth = survival(x).value;
    for (int order = 0; order <= 3; ++order) {
      const double err = std::fabs(mills_series_survival(x, order).value - truth);
      const double allowed = 2.0 * mills_coefficient(order + 1) *
                             std::pow(x, -2.0 * (order + 1)) * std_normal_pdf(x) / x;
      r.measured = std::max(r.measured, err / allowed);
    }
  }
  r.pass = r.measured <= r.bound;
  r.detail = "max error / (2 a_{L+1} x^{-2(L+1)} phi(x)/x), x in {5,10,20}, L in 0..3";
  return r;
}

CheckResult check_hall_limit() {
  CheckResult r = make_check(3, "hall_limit");
  r.bound = 1.0;
  r.pass = true;
  const std::vector<double> ns{1e6, 1e12};
  std::string worst;
  for (double t : {0.5, 1.0, 3.0, 2.0}) {
    for (double x : {-1.0, 0.0, 1.0, 2.0}) {
      const HallCheck check = hall_limit_check(PowerIndex(t), x, ns);
      const double ratio = std::fabs(check.rows.back().gap) / check.final_bound;
      if (ratio > r.measured) {
        r.measured = ratio;
        worst = "t=" + num(t) + " x=" + num(x);
      }
      r.pass = r.pass && check.pass;
    }
  }
  const HallCheck ref = hall_limit_check(PowerIndex(1.0), 0.0, std::vector<double>{1e3});
  r.detail = "max |gap(1e12)| / (1.5|k2|/b^2 + 10/b^4) at " + worst +
             "; reference scaled error (t=1,x=0,n=1e3) = " + num(ref.rows[0].scaled_error);
  return r;
}

CheckResult check_remainder_slopes(int id, const char* name, Target target,
                             const std::vector<double>& ts) {
  CheckResult r = make_check(id, name);
  r.bound = 1.0;
  const std::vector<double> ns = default_n_grid();
  std::string slopes;
  for (double t : ts) {
    for (double x : {0.0, 1.0}) {
      const ErrorCurve curve = error_curve(PowerIndex(t), x, ns, ApproxOrder::third, target,
                                           Scaling::third_order_remainder);
      const SlopeFit fit = rate_fit(curve);
      r.measured = std::max(r.measured, std::fabs(fit.slope + 4.0));
      slopes += (slopes.empty() ? "" : " ") + ("(" + num(t) + "," + num(x) + ")=" + num(fit.slope));
    }
  }
  r.pass = r.measured <= r.bound;
  r.detail = "max |slope + 4| with slopes " + slopes;
  return r;
}

CheckResult check_order_improvement() {
  CheckResult r = make_check(6, "order_improvement");
  r.bound = 1.0;
  r.pass = true;
  const std::vector<double> xs = grid(-1.5, 4.0, 0.25);
  std::string sups;
  for (double t : {1.0, 2.0}) {
    const NormingConstants nc = norming_constants(1e6, PowerIndex(t));
    for (Target target : {Target::cdf, Target::pdf}) {
      const double lim = sup_abs_error(nc, xs, ApproxOrder::limit, target);
      const double sec = sup_abs_error(nc, xs, ApproxOrder::second, target);
      const double thr = sup_abs_error(nc, xs, ApproxOrder::third, target);
      r.pass = r.pass && sec < lim && thr < sec;
      r.measured = std::max({r.measured, sec / lim, thr / sec});
      sups += " t=" + num(t) + "/" + std::string(to_string(target)) + ":" + num(lim) + ">" +
              num(sec) + ">" + num(thr);
    }
  }
  r.detail = "max successive sup-error ratio;" + sups;
  return r;
}

CheckResult check_two_acceleration() {
  CheckResult r = make_check(7, "t2_norming_acceleration");
  r.bound = 5.0;
  const PowerIndex two(2.0);
  const double lam = gumbel_cdf(0.0);
  const double adjusted = std::fabs(exact_cdf(norming_constants(1e6, two), 0.0).value - lam);
  const double naive = std::fabs(exact_cdf(unadjusted_norming_constants(1e6, two), 0.0).value - lam);
  r.measured = naive / adjusted;
  r.pass = r.measured >= r.bound;
  r.detail = "naive |F - Lambda| = " + num(naive) + ", adjusted = " + num(adjusted);
  return r;
}

CheckResult check_exact_self_consistency() {
  CheckResult r = make_check(8, "exact_pdf_vs_cdf_derivative");
  r.bound = 1e-6;
  const std::vector<double> xs = grid(-1.0, 4.0, 0.25);
  for (double n : {1e3, 1e6}) {
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      const NormingConstants nc = norming_constants(n, PowerIndex(t));
      for (double x : xs) {
        const double pdf = exact_pdf(nc, x);
        if (!(pdf > 1e-8)) continue;
        const double h = 1e-5 * std::max(1.0, std::fabs(x));
        const double diff = (exact_cdf(nc, x + h).value - exact_cdf(nc, x - h).value) / (2.0 * h);
        r.measured = std::max(r.measured, std::fabs(diff - pdf) / pdf);
      }
    }
  }
  r.pass = r.measured <= r.bound;
  r.detail = "max relative gap, x in [-1,4] step 0.25, n in {1e3,1e6}, t in {0.5,1,2,3}";
  return r;
}

CheckResult check_monte_carlo() {
  CheckResult r = make_check(9, "monte_carlo_ks");
  const NormingConstants nc = norming_constants(100.0, PowerIndex(2.0));
  const SimSample sample = simulate_block_maxima(nc, 1000000, kAcceptanceSeed);
  const KsResult exact = ks_check(sample, Reference::exact, 0.001);
  const KsResult limit = ks_check(sample, Reference::limit, 0.001);
  r.measured = exact.distance;
  r.bound = exact.bound;
  r.pass = exact.pass && limit.distance >= 0.01;
  r.detail = "D(exact) = " + num(exact.distance) + ", D(Lambda) = " + num(limit.distance) +
             " (needs >= 0.01), reps = 1e6, seed = " + std::to_string(kAcceptanceSeed);
  return r;
}

CheckResult check_cli_determinism() {
  CheckResult r = make_check(10, "cli_determinism");
  r.bound = 0.0;
  int failures = 0;
  for (const auto& cmd : documented_commands()) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::parse_and_dispatch(cmd, out1, err1);
    const int code2 = cli::parse_and_dispatch(cmd, out2, err2);
    if (code1 != 0 || code2 != 0 || out1.str() != out2.str() || out1.str().empty()) ++failures;
  }
  r.measured = failures;
  r.pass = failures == 0;
  r.detail = "commands with non-zero exit or differing output across two in-process runs";
  return r;
}

}  // namespace

std::vector<std::vector<std::string>> documented_commands() {
  return {
      {"norming", "--n", "1000", "--t", "2"},
      {"norming", "--n", "1e6", "--t", "0.5", "--format", "json"},
      {"table", "--n", "1e6", "--t", "1", "--x", "-1:4:0.25", "--orders",
       "limit,second,third,exact", "--target", "cdf"},
      {"table", "--n", "1e6", "--t", "2", "--x", "-1:4:0.5", "--target", "pdf", "--format",
       "json"},
      {"rates", "--t", "1", "--x", "0"},
      {"rates", "--t", "3", "--x", "1", "--scaling", "third_order_remainder"},
      {"mills", "--x", "5:20:5"},
      {"simulate", "--n", "100", "--t", "2", "--reps", "2000", "--seed", "7"},
  };
}

std::vector<CheckResult> run_acceptance() {
  struct Entry {
    int id;
    const char* name;
    std::function<CheckResult()> run;
    double limit;
  };
  const std::vector<Entry> entries{
      {1, "norming_residual", check_norming_residual, 1e-3},
      {2, "mills_series_bound", check_mills_series, 1e-3},
      {3, "hall_limit", check_hall_limit, 1.0},
      {4, "cdf_remainder_slope",
       [] { return check_remainder_slopes(4, "cdf_remainder_slope", Target::cdf, {1.0, 3.0}); },
       1.0},
      {5, "pdf_remainder_slope",
       [] { return check_remainder_slopes(5, "pdf_remainder_slope", Target::pdf, {1.0, 2.0}); },
       1.0},
      {6, "order_improvement", check_order_improvement, 1.0},
      {7, "t2_norming_acceleration", check_two_acceleration, 1e-3},
      {8, "exact_pdf_vs_cdf_derivative", check_exact_self_consistency, 1.0},
      {9, "monte_carlo_ks", check_monte_carlo, 60.0},
      {10, "cli_determinism", check_cli_determinism, 120.0},
  };

  std::vector<CheckResult> results;
  const auto suite_start = Clock::now();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto start = Clock::now();
    CheckResult r;
    try {
      r = entries[i].run();
    } catch (const std::exception& e) {
      r = make_check(entries[i].id, entries[i].name);
      r.pass = false;
      r.measured = NAN;
      r.detail = std::string("threw: ") + e.what();
    }
    const auto stop = Clock::now();
    r.seconds = std::chrono::duration<double>(stop - start).count();
    r.time_limit = entries[i].limit;
    // The last check's budget covers the whole suite.
    if (i + 1 == entries.size()) {
      r.seconds = std::chrono::duration<double>(stop - suite_start).count();
    }
    if (r.seconds > r.time_limit) {
      r.pass = false;
      r.detail += "; over time budget";
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_check_line(const CheckResult& check, bool with_timing) {
  std::string line = std::string(check.pass ? "[PASS] " : "[FAIL] ") + std::to_string(check.id) +
                     " " + check.name + ": measured=" + num(check.measured) +
                     " bound=" + num(check.bound) + " (" + check.detail + ")";
  if (with_timing) {
    line += " [" + format_number(check.seconds, 3) + " s, limit " +
            format_number(check.time_limit, 3) + " s]";
  }
  return line;
}

std::string summary_json(const std::vector<CheckResult>& checks) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json entry;
    entry["check"] = std::to_string(c.id) + " " + c.name;
    entry["status"] = c.pass ? "PASS" : "FAIL";
    entry["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(std::stod(num(c.measured)))
                                                  : nlohmann::ordered_json(nullptr);
    entry["bound"] = std::stod(num(c.bound));
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace powex
