#include "powex/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "powex/errors.hpp"

namespace powex {

namespace {

// Below this the Taylor series of Phi(x) - 1/2 is used, above it the
// continued fraction for the Mills ratio.
constexpr double kSeriesCutoff = 2.5;

// x^2/2 split as hi^2/2 + lo*(x+hi)/2 with hi = trunc(16x)/16, so that hi^2 is
// exact and exp(-x^2/2) keeps full relative accuracy out to the underflow
// threshold.
struct HalfSquare {
  double hi;
  double lo;
};

HalfSquare half_square(double x) {
  const double ax = std::fabs(x);
  const double head = std::trunc(ax * 16.0) / 16.0;
  return {0.5 * head * head, 0.5 * (ax - head) * (ax + head)};
}

// Phi(x) - 1/2 = phi(x) * sum_{k>=0} x^{2k+1} / (2k+1)!!, all terms positive.
double central_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int k = 1; k < 500; ++k) {
    term *= x2 / (2 * k + 1);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Mills ratio (1 - Phi(x)) / phi(x) = 1/(x+ 1/(x+ 2/(x+ 3/(x+ ...)))),
// modified Lentz evaluation.
double mills_ratio_cf(double x) {
  constexpr double kTiny = 1e-300;
  double f = kTiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j < 5000; ++j) {
    const double a = (j == 1) ? 1.0 : static_cast<double>(j - 1);
    d = x + a * d;
    if (d == 0.0) d = kTiny;
    c = x + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

// 1 - Phi(x) for x >= 0.
Probability upper_tail(double x) {
  if (x < kSeriesCutoff) {
    const double v = 0.5 - std_normal_pdf(x) * central_series(x);
    return {v, std::log(v)};
  }
  const double r = mills_ratio_cf(x);
  return {std_normal_pdf(x) * r, log_std_normal_pdf(x) + std::log(r)};
}

}  // namespace

double std_normal_pdf(double x) {
  require_finite(x, "x");
  const HalfSquare h = half_square(x);
  return kInvSqrtTwoPi * std::exp(-h.hi) * std::exp(-h.lo);
}

double log_std_normal_pdf(double x) {
  require_finite(x, "x");
  const HalfSquare h = half_square(x);
  return -h.hi - h.lo - kLogSqrtTwoPi;
}

Probability survival(double x) {
  require_finite(x, "x");
  if (x >= 0.0) return upper_tail(x);
  const Probability s = upper_tail(-x);
  return {1.0 - s.value, std::log1p(-s.value)};
}

Probability normal_cdf(double x) {
  require_finite(x, "x");
  return survival(-x);
}

double mills_coefficient(int k) {
  if (k < 0) throw DomainError("mills_coefficient: k must be >= 0");
  double a = 1.0;
  for (int j = 1; j <= k; ++j) a *= 2 * j - 1;
  return a;
}

Probability mills_series_survival(double x, int order) {
  require_finite(x, "x");
  if (x < 2.0) {
    throw DomainError("mills_series_survival: the asymptotic series needs x >= 2");
  }
  if (order < 0 || order > kMaxSeriesOrder) {
    throw DomainError("mills_series_survival: order must lie in [0, " +
                      std::to_string(kMaxSeriesOrder) + "]");
  }
  const double inv_x2 = 1.0 / (x * x);
  double sum = 0.0;
  double power = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * mills_coefficient(k) * power;
    power *= inv_x2;
  }
  const double value = std_normal_pdf(x) / x * sum;
  if (!(sum > 0.0) || value > 1.0) {
    throw DomainError("mills_series_survival: truncated series left (0, 1] at x = " +
                      std::to_string(x) + ", order = " + std::to_string(order));
  }
  return {value, log_std_normal_pdf(x) - std::log(x) + std::log(sum)};
}

GumbelValues gumbel_limits(double x) {
  require_finite(x, "x");
  const double e = std::exp(-x);
  GumbelValues out;
  out.cdf.log_value = -e;
  out.cdf.value = std::exp(-e);
  out.pdf = std::exp(-x - e);
  return out;
}

double gumbel_cdf(double x) { return gumbel_limits(x).cdf.value; }

double gumbel_pdf(double x) { return gumbel_limits(x).pdf; }

}  // namespace powex
