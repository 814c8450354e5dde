#pragma once

// Exact finite-n law of the normalized powered maximum
//   P(|M_n|^t <= c x + d) = Phi(g)^n - (1 - Phi(g))^n,   g = (c x + d)^(1/t),
// and its density, evaluated in the log domain so that n can be as large as
// 1e14. These serve as the ground truth for every expansion in the library.

#include <span>
#include <vector>

#include "powex/norming.hpp"
#include "powex/special_functions.hpp"

namespace powex {

struct ExactEvaluation {
  double x = 0.0;
  Probability cdf;
  double pdf = 0.0;
  double g = 0.0;
  // n * log(1 - Phi(g)), the log of the subtracted term in the cdf
  double tail_term_log = 0.0;
};

ExactEvaluation exact_evaluate(const NormingConstants& nc, double x);

Probability exact_cdf(const NormingConstants& nc, double x);

/// n phi(g) g'(x) (Phi(g)^{n-1} + (1 - Phi(g))^{n-1}).
double exact_pdf(const NormingConstants& nc, double x);

/// The density with the second bracket term subtracted instead of added.
/// Kept only so tests can show it disagrees with the derivative of the cdf.
double exact_pdf_minus_variant(const NormingConstants& nc, double x);

/// Phi(g)^{n-1} - (1 - Phi(g))^{n-1}.
double exact_nu(const NormingConstants& nc, double x);

/// n * d/dx Phi(g) = n phi(g) g'(x).
double exact_density_factor(const NormingConstants& nc, double x);

/// exact_cdf extended by 0 to the left of the support.
double exact_cdf_or_zero(const NormingConstants& nc, double x);

/// Evaluate a whole x-grid. Parallel over points (OpenMP when available).
std::vector<ExactEvaluation> exact_grid(const NormingConstants& nc, std::span<const double> xs);

/// Single-threaded reference for exact_grid.
std::vector<ExactEvaluation> exact_grid_serial(const NormingConstants& nc,
                                               std::span<const double> xs);

}  // namespace powex
