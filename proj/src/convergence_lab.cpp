#include "powex/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/special_functions.hpp"

namespace powex {

std::string_view to_string(Target target) {
  return target == Target::cdf ? "cdf" : "pdf";
}

std::string_view to_string(Scaling scaling) {
  switch (scaling) {
    case Scaling::raw: return "raw";
    case Scaling::hall_scaled: return "hall_scaled";
    case Scaling::third_order_remainder: return "third_order_remainder";
  }
  return "?";
}

std::optional<Target> parse_target(std::string_view name) {
  if (name == "cdf") return Target::cdf;
  if (name == "pdf") return Target::pdf;
  return std::nullopt;
}

std::optional<Scaling> parse_scaling(std::string_view name) {
  for (Scaling s : {Scaling::raw, Scaling::hall_scaled, Scaling::third_order_remainder}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> default_n_grid() {
  std::vector<double> grid;
  for (int k = 3; k <= 12; ++k) grid.push_back(std::pow(10.0, k));
  return grid;
}

namespace {

double approx_value(const NormingConstants& nc, double x, ApproxOrder order, Target target) {
  return target == Target::cdf ? cdf_approx(nc, x, order).raw : pdf_approx(nc, x, order).raw;
}

double exact_value(const NormingConstants& nc, double x, Target target) {
  return target == Target::cdf ? exact_cdf(nc, x).value : exact_pdf(nc, x);
}

ErrorRow evaluate_row(PowerIndex t, double x, double n, ApproxOrder order, Target target,
                      Scaling scaling) {
  const NormingConstants nc = norming_constants(n, t);
  const double diff = approx_value(nc, x, order, target) - exact_value(nc, x, target);
  if (scaling == Scaling::raw) return {n, nc.b, diff};
  return {n, nc.b, -diff / (correction_scale(nc) * gumbel_pdf(x))};
}

void validate_grid(PowerIndex t, double x, std::span<const double> n_grid) {
  require_finite(x, "x");
  double prev = 0.0;
  for (double n : n_grid) {
    if (!(n >= 100.0)) {
      throw DomainError("n-grid point " + std::to_string(n) + " is below 100");
    }
    if (!(n > prev)) throw DomainError("n-grid must be strictly ascending");
    prev = n;
    const NormingConstants nc = norming_constants(n, t);
    if (!(nc.c * x + nc.d > 0.0)) {
      throw OutOfSupport(x, nc.x_min());
    }
  }
}

ErrorCurve make_curve(PowerIndex t, double x, ApproxOrder order, Target target, Scaling scaling) {
  ErrorCurve curve;
  curve.t = t;
  curve.x = x;
  curve.target = target;
  curve.order = scaling == Scaling::third_order_remainder ? ApproxOrder::third : order;
  curve.scaling = scaling;
  return curve;
}

void flag_sign_change(ErrorCurve& curve) {
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    if ((curve.rows[i - 1].residual < 0.0) != (curve.rows[i].residual < 0.0)) {
      curve.sign_change = true;
    }
  }
}

}  // namespace

ErrorCurve error_curve_serial(PowerIndex t, double x, std::span<const double> n_grid,
                              ApproxOrder order, Target target, Scaling scaling) {
  validate_grid(t, x, n_grid);
  ErrorCurve curve = make_curve(t, x, order, target, scaling);
  for (double n : n_grid) {
    curve.rows.push_back(evaluate_row(t, x, n, curve.order, target, scaling));
  }
  flag_sign_change(curve);
  return curve;
}

ErrorCurve error_curve(PowerIndex t, double x, std::span<const double> n_grid, ApproxOrder order,
                       Target target, Scaling scaling) {
  validate_grid(t, x, n_grid);
  ErrorCurve curve = make_curve(t, x, order, target, scaling);
  curve.rows.resize(n_grid.size());
  const auto count = static_cast<long long>(n_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    curve.rows[k] = evaluate_row(t, x, n_grid[k], curve.order, target, scaling);
  }
  flag_sign_change(curve);
  return curve;
}

SlopeFit rate_fit(const ErrorCurve& curve) {
  SlopeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const ErrorRow& row : curve.rows) {
    const double r = std::fabs(row.residual);
    if (!(r > kNoiseFloor) || !std::isfinite(r)) {
      ++fit.noise_floor_hits;
      continue;
    }
    xs.push_back(std::log(row.b));
    ys.push_back(std::log(r));
  }
  fit.points_used = static_cast<int>(xs.size());
  if (fit.points_used < 3) {
    throw InsufficientData("rate_fit needs at least 3 residuals above the noise floor, got " +
                           std::to_string(fit.points_used));
  }

  const double m = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= m;
  mean_y /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (!(sxx > 0.0)) throw InsufficientData("rate_fit: all b values coincide");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;

  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.intercept - fit.slope * xs[i];
    sse += e * e;
  }
  fit.stderr_slope = m > 2.0 ? std::sqrt(sse / (m - 2.0) / sxx) : 0.0;
  return fit;
}

HallCheck hall_limit_check(PowerIndex t, double x, std::span<const double> n_grid) {
  const ErrorCurve curve =
      error_curve(t, x, n_grid, ApproxOrder::limit, Target::cdf, Scaling::hall_scaled);
  const ExpansionCoefficients k = coefficients(t, x);

  HallCheck check;
  for (const ErrorRow& row : curve.rows) {
    check.rows.push_back({row.n, row.b, row.residual, k.k1, row.residual - k.k1});
  }
  if (check.rows.empty()) return check;

  // A sub-leading zero crossing can stall the gap; tolerate that once it is tiny.
  check.gap_decreasing = true;
  for (std::size_t i = 1; i < check.rows.size(); ++i) {
    const double prev = std::fabs(check.rows[i - 1].gap);
    const double cur = std::fabs(check.rows[i].gap);
    if (!(cur < prev) && !(cur < 1e-3)) check.gap_decreasing = false;
  }
  const double b2 = check.rows.back().b * check.rows.back().b;
  check.final_bound = 1.5 * std::fabs(k.k2) / b2 + 10.0 / (b2 * b2);
  check.pass = check.gap_decreasing && std::fabs(check.rows.back().gap) <= check.final_bound;
  return check;
}

double sup_abs_error(const NormingConstants& nc, std::span<const double> xs, ApproxOrder order,
                     Target target) {
  const std::vector<ExactEvaluation> exact = exact_grid(nc, xs);
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double truth = target == Target::cdf ? exact[i].cdf.value : exact[i].pdf;
    sup = std::max(sup, std::fabs(approx_value(nc, xs[i], order, target) - truth));
  }
  return sup;
}

}  // namespace powex
