#pragma once

// Standard normal density, tail probability and the Gumbel limit law.
//
// All tail probabilities are returned together with their natural logarithm
// so that powers like Phi(x)^n can be formed for n far beyond the range where
// the plain value is representable.

namespace powex {

inline constexpr double kLogSqrtTwoPi = 0.91893853320467274178;
inline constexpr double kInvSqrtTwoPi = 0.39894228040143267794;

struct Probability {
  double value = 0.0;
  double log_value = 0.0;
};

double std_normal_pdf(double x);

/// log phi(x), finite for every finite x.
double log_std_normal_pdf(double x);

/// Upper tail 1 - Phi(x).
///
/// Relative error below 1e-13 wherever the result is a normal double. For
/// large x the value underflows (x > ~38.6) but log_value stays exact.
Probability survival(double x);

/// Phi(x), computed as survival(-x).
Probability normal_cdf(double x);

inline constexpr int kMaxSeriesOrder = 12;

/// a_k = (2k)! / (2^k k!) = 1, 1, 3, 15, 105, ...
double mills_coefficient(int k);

/// Truncated asymptotic tail series
///   phi(x)/x * sum_{k=0}^{order} (-1)^k a_k x^{-2k},   x >= 2.
///
/// The series diverges for fixed x, so an order that pushes the partial sum
/// outside (0, 1] is reported as a DomainError.
Probability mills_series_survival(double x, int order);

struct GumbelValues {
  Probability cdf;
  double pdf = 0.0;
};

/// Lambda(x) = exp(-e^{-x}) and its density Lambda(x) e^{-x}.
GumbelValues gumbel_limits(double x);

double gumbel_cdf(double x);
double gumbel_pdf(double x);

}  // namespace powex
