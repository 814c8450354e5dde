#pragma once

// Norming constants for the powered maximum |M_n|^t of n standard normals.
//
// b_n > 0 solves 2*pi*b^2*exp(b^2) = n^2. The scale c_n and centring d_n are
//   t != 2:  c = t*b^(t-2),      d = b^t
//   t == 2:  c = 2*(1 - b^-2),   d = b^2 - 2*b^-2
// The t == 2 pair removes the b^-2 term from the error, so the branch is a
// genuine discontinuity in t rather than a rounding artefact.

namespace powex {

class PowerIndex {
 public:
  /// Throws DomainError unless t is finite and > 0.
  explicit PowerIndex(double t);

  double value() const noexcept { return t_; }
  bool is_two() const noexcept { return t_ == 2.0; }

  /// True when t is within 1e-3 of 2 but not equal to it; the expansions are
  /// not uniform in t there.
  bool near_two() const noexcept;

 private:
  double t_;
};

struct NormingConstants {
  double n = 0.0;
  PowerIndex t{1.0};
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  bool near_two_warning = false;
  // false when built by unadjusted_norming_constants
  bool adjusted = true;

  /// Left end of the support of (|M_n|^t - d)/c.
  double x_min() const noexcept { return -d / c; }

  /// True when the two-branch constants were applied.
  bool two_branch() const noexcept { return t.is_two() && adjusted; }
};

/// Solve 2*pi*b^2*exp(b^2) = n^2 for b > 0 (n >= 2, real n allowed).
double solve_b(double n);

/// |2*pi*b^2*exp(b^2)/n^2 - 1|, evaluated in log form.
double norming_residual(double n, double b);

NormingConstants norming_constants(double n, PowerIndex t);

/// Constants from the t != 2 formula even when t == 2 (c = 2, d = b^2 at
/// t == 2). Exists to measure what the adjusted t == 2 pair buys.
NormingConstants unadjusted_norming_constants(double n, PowerIndex t);

struct TransformedQuantile {
  double g = 0.0;        // (c*x + d)^(1/t)
  double dg_dx = 0.0;    // (c/t) (c*x + d)^(1/t - 1)
  double log_dg_dx = 0.0;
};

/// Throws OutOfSupport when c*x + d <= 0.
TransformedQuantile transformed_quantile(const NormingConstants& nc, double x);

}  // namespace powex
