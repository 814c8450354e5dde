#pragma once

// Higher-order Gumbel expansions of the normalized powered maximum.
//
//   cdf  ~ Lambda + B Lambda' (k1 + k2 / b^2)
//   pdf  ~ Lambda' (1 + B (varpi + tau / b^2))
//
// with B = b^-2 for t != 2 and B = b^-4 for t == 2.

#include <optional>
#include <string_view>

#include "powex/norming.hpp"

namespace powex {

enum class ApproxOrder { limit, second, third, exact };

std::string_view to_string(ApproxOrder order);
std::optional<ApproxOrder> parse_approx_order(std::string_view name);

/// Coefficients at a given (t, x).
///
/// For t != 2, theta1/theta2 are the b^-2 and b^-4 coefficients of the tail
/// expansion n(1 - Phi(g)) = e^{-x}(1 - theta1 b^-2 + theta2 b^-4 + ...).
/// For t == 2 (two_branch set) the tail reads
/// e^{-x}(1 + theta1 b^-4 - theta2 b^-6 + ...), with
/// theta1 = 7/2 + 3x + x^2 and theta2 = 43/3 + 14x + 6x^2 + 4x^3/3.
struct ExpansionCoefficients {
  double k1 = 0.0;
  double k2 = 0.0;
  double varpi = 0.0;
  double tau = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool two_branch = false;
};

ExpansionCoefficients coefficients(PowerIndex t, double x);

/// b^{-2-2*1{t=2}}
double correction_scale(const NormingConstants& nc);

struct ApproxValue {
  double value = 0.0;  // clamped into the admissible range
  double raw = 0.0;    // unclamped
  bool clamped = false;
};

ApproxValue cdf_approx(const NormingConstants& nc, double x, ApproxOrder order);
ApproxValue pdf_approx(const NormingConstants& nc, double x, ApproxOrder order);

/// Expansion of Phi^{n-1}(g) - (1 - Phi(g))^{n-1}, truncated after the b^-4
/// term (t != 2) or the b^-6 term (t == 2).
double nu_expansion(const NormingConstants& nc, double x);

/// Expansion of n d/dx Phi(g), truncated at the same orders.
double density_factor_expansion(const NormingConstants& nc, double x);

}  // namespace powex
