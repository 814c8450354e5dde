#pragma once

// Residual curves across n-grids and log-log slope fits against ln b_n.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "powex/expansions.hpp"
#include "powex/norming.hpp"

namespace powex {

enum class Target { cdf, pdf };

/// What a curve row records:
///   raw                    approx(order) - exact
///   hall_scaled            b^p (exact - approx(order)) / Lambda'(x),  p = 2 + 2*1{t=2}
///   third_order_remainder  hall_scaled against the third-order approximation
enum class Scaling { raw, hall_scaled, third_order_remainder };

std::string_view to_string(Target target);
std::string_view to_string(Scaling scaling);
std::optional<Target> parse_target(std::string_view name);
std::optional<Scaling> parse_scaling(std::string_view name);

inline constexpr double kNoiseFloor = 1e-13;

/// 10^3, 10^4, ..., 10^12
std::vector<double> default_n_grid();

struct ErrorRow {
  double n = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

struct ErrorCurve {
  PowerIndex t{1.0};
  double x = 0.0;
  Target target = Target::cdf;
  ApproxOrder order = ApproxOrder::limit;
  Scaling scaling = Scaling::raw;
  std::vector<ErrorRow> rows;
  // residual changed sign along the grid (a coefficient zero-crossing)
  bool sign_change = false;
};

/// Rows are evaluated in parallel; n_grid must be ascending with n >= 100,
/// and x must lie in the support at every n.
ErrorCurve error_curve(PowerIndex t, double x, std::span<const double> n_grid, ApproxOrder order,
                       Target target, Scaling scaling = Scaling::raw);

ErrorCurve error_curve_serial(PowerIndex t, double x, std::span<const double> n_grid,
                              ApproxOrder order, Target target, Scaling scaling = Scaling::raw);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points_used = 0;
  int noise_floor_hits = 0;
};

/// Least squares of ln|residual| on ln b, skipping |residual| <= kNoiseFloor.
/// Throws InsufficientData with fewer than 3 usable rows.
SlopeFit rate_fit(const ErrorCurve& curve);

struct HallRow {
  double n = 0.0;
  double b = 0.0;
  double scaled_error = 0.0;  // b^p (exact_cdf - Lambda) / Lambda'
  double k1_target = 0.0;
  double gap = 0.0;           // scaled_error - k1
};

struct HallCheck {
  std::vector<HallRow> rows;
  bool gap_decreasing = false;
  double final_bound = 0.0;   // 1.5 |k2| / b^2 + 10 / b^4 at the last n
  bool pass = false;
};

HallCheck hall_limit_check(PowerIndex t, double x, std::span<const double> n_grid);

/// max over xs of |approx(order) - exact|, using unclamped approximations.
double sup_abs_error(const NormingConstants& nc, std::span<const double> xs, ApproxOrder order,
                     Target target);

}  // namespace powex
