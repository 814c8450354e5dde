#include "powex/norming.hpp"

#include <cmath>
#include <string>

#include "powex/errors.hpp"
#include "powex/special_functions.hpp"

namespace powex {

PowerIndex::PowerIndex(double t) : t_(t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw DomainError("power index t must be finite and > 0");
  }
}

bool PowerIndex::near_two() const noexcept {
  const double gap = std::fabs(t_ - 2.0);
  return gap > 0.0 && gap < 1e-3;
}

namespace {

constexpr double kLogTwoPi = 2.0 * kLogSqrtTwoPi;

// Right-hand side of u + ln u = 2 ln n - ln(2 pi), u = b^2.
double log_target(double n) { return 2.0 * std::log(n) - kLogTwoPi; }

void require_sample_size(double n) {
  if (!std::isfinite(n) || !(n >= 2.0)) {
    throw DomainError("sample size n must satisfy n >= 2");
  }
}

}  // namespace

double solve_b(double n) {
  require_sample_size(n);
  const double ell = log_target(n);
  // u + ln u is increasing and concave, so Newton iterates land left of the
  // root and then climb monotonically; a non-positive step is halved instead.
  double u = (ell > 1.0) ? ell - std::log(ell) : std::exp(ell) / 2.0;
  if (!(u > 0.0)) u = 0.5;
  for (int iter = 0; iter < 50; ++iter) {
    const double f = u + std::log(u) - ell;
    const double step = f / (1.0 + 1.0 / u);
    double next = u - step;
    if (!(next > 0.0)) next = u / 2.0;
    const double delta = std::fabs(next - u);
    u = next;
    if (delta <= 1e-15 * u) break;
  }
  return std::sqrt(u);
}

double norming_residual(double n, double b) {
  require_sample_size(n);
  const double u = b * b;
  return std::fabs(std::expm1(u + std::log(u) - log_target(n)));
}

namespace {

NormingConstants build(double n, PowerIndex t, bool adjusted) {
  NormingConstants nc;
  nc.n = n;
  nc.t = t;
  nc.b = solve_b(n);
  nc.adjusted = adjusted;
  nc.near_two_warning = t.near_two();
  const double b = nc.b;
  if (t.is_two() && adjusted) {
    const double inv_b2 = 1.0 / (b * b);
    nc.c = 2.0 * (1.0 - inv_b2);
    nc.d = b * b - 2.0 * inv_b2;
    if (!(nc.c > 0.0)) {
      throw DomainError("t = 2 needs b_n > 1 for c_n > 0, i.e. n > 4.13 (got n = " +
                        std::to_string(n) + ")");
    }
  } else {
    nc.c = t.value() * std::pow(b, t.value() - 2.0);
    nc.d = std::pow(b, t.value());
  }
  return nc;
}

}  // namespace

NormingConstants norming_constants(double n, PowerIndex t) { return build(n, t, true); }

NormingConstants unadjusted_norming_constants(double n, PowerIndex t) {
  return build(n, t, false);
}

TransformedQuantile transformed_quantile(const NormingConstants& nc, double x) {
  require_finite(x, "x");
  const double y = nc.c * x + nc.d;
  if (!(y > 0.0)) throw OutOfSupport(x, nc.x_min());
  const double t = nc.t.value();
  const double inv_t = 1.0 / t;
  TransformedQuantile q;
  q.g = std::pow(y, inv_t);
  q.log_dg_dx = std::log(nc.c / t) + (inv_t - 1.0) * std::log(y);
  q.dg_dx = std::exp(q.log_dg_dx);
  return q;
}

}  // namespace powex
