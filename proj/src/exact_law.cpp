#include "powex/exact_law.hpp"

#include <cmath>

#include "powex/errors.hpp"

namespace powex {

namespace {

struct TailLogs {
  double log_cdf;  // log Phi(g)
  double log_sf;   // log(1 - Phi(g))
};

TailLogs tail_logs(double g) {
  return {survival(-g).log_value, survival(g).log_value};
}

// log(n phi(g) g'(x))
double log_density_factor(const NormingConstants& nc, const TransformedQuantile& q) {
  return std::log(nc.n) + log_std_normal_pdf(q.g) + q.log_dg_dx;
}

// log(Phi^m + sign * S^m) for m = n - 1, S < Phi.
double log_bracket(const TailLogs& tl, double m, double sign) {
  const double head = m * tl.log_cdf;
  return head + std::log1p(sign * std::exp(m * (tl.log_sf - tl.log_cdf)));
}

}  // namespace

ExactEvaluation exact_evaluate(const NormingConstants& nc, double x) {
  const TransformedQuantile q = transformed_quantile(nc, x);
  const TailLogs tl = tail_logs(q.g);
  const double n = nc.n;

  ExactEvaluation e;
  e.x = x;
  e.g = q.g;
  e.tail_term_log = n * tl.log_sf;
  const double head = n * tl.log_cdf;
  e.cdf.value = std::exp(head) - std::exp(e.tail_term_log);
  e.cdf.log_value = head + std::log1p(-std::exp(e.tail_term_log - head));
  e.pdf = std::exp(log_density_factor(nc, q) + log_bracket(tl, n - 1.0, +1.0));
  return e;
}

Probability exact_cdf(const NormingConstants& nc, double x) {
  return exact_evaluate(nc, x).cdf;
}

double exact_pdf(const NormingConstants& nc, double x) { return exact_evaluate(nc, x).pdf; }

double exact_pdf_minus_variant(const NormingConstants& nc, double x) {
  const TransformedQuantile q = transformed_quantile(nc, x);
  const TailLogs tl = tail_logs(q.g);
  return std::exp(log_density_factor(nc, q) + log_bracket(tl, nc.n - 1.0, -1.0));
}

double exact_nu(const NormingConstants& nc, double x) {
  const TransformedQuantile q = transformed_quantile(nc, x);
  const TailLogs tl = tail_logs(q.g);
  const double m = nc.n - 1.0;
  return std::exp(m * tl.log_cdf) - std::exp(m * tl.log_sf);
}

double exact_density_factor(const NormingConstants& nc, double x) {
  return std::exp(log_density_factor(nc, transformed_quantile(nc, x)));
}

double exact_cdf_or_zero(const NormingConstants& nc, double x) {
  if (!(nc.c * x + nc.d > 0.0)) return 0.0;
  return exact_cdf(nc, x).value;
}

std::vector<ExactEvaluation> exact_grid_serial(const NormingConstants& nc,
                                               std::span<const double> xs) {
  std::vector<ExactEvaluation> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(exact_evaluate(nc, x));
  return out;
}

std::vector<ExactEvaluation> exact_grid(const NormingConstants& nc, std::span<const double> xs) {
  // Validate up front: nothing may throw inside the parallel region.
  for (double x : xs) (void)transformed_quantile(nc, x);

  std::vector<ExactEvaluation> out(xs.size());
  const auto count = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = exact_evaluate(nc, xs[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace powex
