#include "powex/expansions.hpp"

#include <algorithm>
#include <cmath>

#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/special_functions.hpp"

namespace powex {

std::string_view to_string(ApproxOrder order) {
  switch (order) {
    case ApproxOrder::limit: return "limit";
    case ApproxOrder::second: return "second";
    case ApproxOrder::third: return "third";
    case ApproxOrder::exact: return "exact";
  }
  return "?";
}

std::optional<ApproxOrder> parse_approx_order(std::string_view name) {
  for (ApproxOrder o : {ApproxOrder::limit, ApproxOrder::second, ApproxOrder::third,
                        ApproxOrder::exact}) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

ExpansionCoefficients coefficients(PowerIndex power, double x) {
  require_finite(x, "x");
  const double e = std::exp(-x);
  const double x2 = x * x;
  const double x3 = x2 * x;
  ExpansionCoefficients k;

  if (power.is_two()) {
    k.two_branch = true;
    k.theta1 = 3.5 + 3.0 * x + x2;
    k.theta2 = 43.0 / 3.0 + 14.0 * x + 6.0 * x2 + 4.0 / 3.0 * x3;
    k.k1 = -k.theta1;
    k.k2 = k.theta2;
    k.varpi = 0.5 + x + x2 - e * k.theta1;
    k.tau = e * k.theta2 - (1.0 / 3.0 + 2.0 * x + 2.0 * x2 + 4.0 / 3.0 * x3);
    return k;
  }

  const double t = power.value();
  const double x4 = x2 * x2;
  k.theta1 = 1.0 + x + 0.5 * (2.0 - t) * x2;
  k.theta2 = 3.0 + 3.0 * x + 1.5 * x2 + (2.0 - t) * (2.0 * t + 1.0) / 6.0 * x3 +
             (t - 2.0) * (t - 2.0) / 8.0 * x4;
  k.k1 = k.theta1;
  k.k2 = -(k.theta2 - 0.5 * e * k.theta1 * k.theta1);
  // x (1 - t + (t-2)/2 x) is the b^-2 term of the density factor.
  const double linear = 1.0 - t + 0.5 * (t - 2.0) * x;
  k.varpi = x * linear + e * k.theta1;
  k.tau = x * e * linear * k.theta1 +
          x2 * ((1.0 - t) * (1.0 - 2.0 * t) / 2.0 + 5.0 * (1.0 - t) * (t - 2.0) / 6.0 * x +
                (t - 2.0) * (t - 2.0) / 8.0 * x2) +
          e * k.k2;
  return k;
}

double correction_scale(const NormingConstants& nc) {
  const double inv_b2 = 1.0 / (nc.b * nc.b);
  return nc.t.is_two() ? inv_b2 * inv_b2 : inv_b2;
}

namespace {

ApproxValue clamp_to(double raw, double lo, double hi) {
  const double v = std::clamp(raw, lo, hi);
  return {v, raw, v != raw};
}

}  // namespace

ApproxValue cdf_approx(const NormingConstants& nc, double x, ApproxOrder order) {
  if (order == ApproxOrder::exact) {
    const double v = exact_cdf(nc, x).value;
    return {v, v, false};
  }
  const GumbelValues gl = gumbel_limits(x);
  if (order == ApproxOrder::limit) return {gl.cdf.value, gl.cdf.value, false};

  const ExpansionCoefficients k = coefficients(nc.t, x);
  double bracket = k.k1;
  if (order == ApproxOrder::third) bracket += k.k2 / (nc.b * nc.b);
  return clamp_to(gl.cdf.value + correction_scale(nc) * gl.pdf * bracket, 0.0, 1.0);
}

ApproxValue pdf_approx(const NormingConstants& nc, double x, ApproxOrder order) {
  if (order == ApproxOrder::exact) {
    const double v = exact_pdf(nc, x);
    return {v, v, false};
  }
  const GumbelValues gl = gumbel_limits(x);
  if (order == ApproxOrder::limit) return {gl.pdf, gl.pdf, false};

  const ExpansionCoefficients k = coefficients(nc.t, x);
  double bracket = k.varpi;
  if (order == ApproxOrder::third) bracket += k.tau / (nc.b * nc.b);
  const double raw = gl.pdf * (1.0 + correction_scale(nc) * bracket);
  return {std::max(raw, 0.0), raw, raw < 0.0};
}

double nu_expansion(const NormingConstants& nc, double x) {
  (void)transformed_quantile(nc, x);
  const ExpansionCoefficients k = coefficients(nc.t, x);
  const double e = std::exp(-x);
  const double inv_b2 = 1.0 / (nc.b * nc.b);
  const double lam = gumbel_cdf(x);
  if (k.two_branch) {
    const double inv_b4 = inv_b2 * inv_b2;
    return lam * (1.0 - e * inv_b4 * k.theta1 + e * inv_b4 * inv_b2 * k.theta2);
  }
  return lam * (1.0 + e * inv_b2 * k.theta1 -
                e * inv_b2 * inv_b2 * (k.theta2 - 0.5 * e * k.theta1 * k.theta1));
}

double density_factor_expansion(const NormingConstants& nc, double x) {
  (void)transformed_quantile(nc, x);
  const double e = std::exp(-x);
  const double inv_b2 = 1.0 / (nc.b * nc.b);
  const double x2 = x * x;
  if (nc.t.is_two()) {
    const double inv_b4 = inv_b2 * inv_b2;
    return e * (1.0 + inv_b4 * (0.5 + x + x2) -
                inv_b4 * inv_b2 * (1.0 / 3.0 + 2.0 * x + 2.0 * x2 + 4.0 / 3.0 * x2 * x));
  }
  const double t = nc.t.value();
  const double first = x * (1.0 - t + 0.5 * (t - 2.0) * x);
  const double second = x2 * ((1.0 - t) * (1.0 - 2.0 * t) / 2.0 +
                              5.0 * (1.0 - t) * (t - 2.0) / 6.0 * x +
                              (t - 2.0) * (t - 2.0) / 8.0 * x2);
  return e * (1.0 + inv_b2 * first + inv_b2 * inv_b2 * second);
}

}  // namespace powex
