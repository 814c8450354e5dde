#include "powex/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/special_functions.hpp"

namespace powex {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t replicate_key(std::uint64_t seed, std::uint64_t replicate) {
  return finalize(seed + kGolden * finalize(replicate + kGolden));
}

// 52-bit draw k maps to the uniform (k + 1/2) 2^-52; both tails are exact.
constexpr double kTwoPowMinus52 = 0x1p-52;
constexpr double kTwoPow52 = 0x1p52;

double lower_tail_of(std::uint64_t k) { return (static_cast<double>(k) + 0.5) * kTwoPowMinus52; }

double upper_tail_of(std::uint64_t k) {
  return (kTwoPow52 - static_cast<double>(k) - 0.5) * kTwoPowMinus52;
}

// Rational approximation of the lower-tail quantile (relative error ~1e-9).
double quantile_seed(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Quantile given both tail masses exactly (lower + upper = 1).
double quantile_from_tails(double lower, double upper) {
  double x = (lower <= upper) ? quantile_seed(lower) : -quantile_seed(upper);
  // One Halley step against the accurate tail routine.
  const double e = (x > 0.0) ? -(survival(x).value - upper) / std_normal_pdf(x)
                             : (survival(-x).value - lower) / std_normal_pdf(x);
  x -= e / (1.0 + 0.5 * x * e);
  return x;
}

double quantile_of_index(std::uint64_t k) {
  return quantile_from_tails(lower_tail_of(k), upper_tail_of(k));
}

double normalize(const NormingConstants& nc, double maximum) {
  return (std::pow(std::fabs(maximum), nc.t.value()) - nc.d) / nc.c;
}

std::int64_t block_size(const NormingConstants& nc, std::int64_t reps) {
  if (nc.n != std::floor(nc.n)) {
    throw DomainError("simulation needs an integer block size n");
  }
  if (reps < 1) throw DomainError("reps must be >= 1");
  if (static_cast<double>(reps) * nc.n > kMaxSimulatedDraws) {
    throw ResourceError("reps * n exceeds the simulation budget of 1e10 draws");
  }
  return static_cast<std::int64_t>(nc.n);
}

SimSample empty_sample(const NormingConstants& nc, std::int64_t reps, std::uint64_t seed) {
  SimSample s;
  s.nc = nc;
  s.reps = reps;
  s.seed = seed;
  s.values.resize(static_cast<std::size_t>(reps));
  return s;
}

}  // namespace

std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t replicate, std::uint64_t counter) {
  return finalize(replicate_key(seed, replicate) + kGolden * (counter + 1));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  return quantile_from_tails(p, 1.0 - p);
}

double normal_upper_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("normal_upper_quantile: q must lie in (0, 1)");
  return quantile_from_tails(1.0 - q, q);
}

SimSample simulate_block_maxima(const NormingConstants& nc, std::int64_t reps,
                                std::uint64_t seed) {
  const std::int64_t n = block_size(nc, reps);
  SimSample s = empty_sample(nc, reps, seed);

  // The quantile is monotone, so the maximum draw is the inverse of the
  // maximum uniform: one inversion per replicate.
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < reps; ++r) {
    const std::uint64_t key = replicate_key(seed, static_cast<std::uint64_t>(r));
    std::uint64_t best = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      const std::uint64_t k = finalize(key + kGolden * static_cast<std::uint64_t>(j + 1)) >> 12;
      best = std::max(best, k);
    }
    s.values[static_cast<std::size_t>(r)] = normalize(nc, quantile_of_index(best));
  }
  return s;
}

SimSample simulate_block_maxima_serial(const NormingConstants& nc, std::int64_t reps,
                                       std::uint64_t seed) {
  const std::int64_t n = block_size(nc, reps);
  SimSample s = empty_sample(nc, reps, seed);
  for (std::int64_t r = 0; r < reps; ++r) {
    double maximum = -INFINITY;
    for (std::int64_t j = 0; j < n; ++j) {
      const std::uint64_t bits = stream_bits(seed, static_cast<std::uint64_t>(r),
                                             static_cast<std::uint64_t>(j));
      maximum = std::max(maximum, quantile_of_index(bits >> 12));
    }
    s.values[static_cast<std::size_t>(r)] = normalize(nc, maximum);
  }
  return s;
}

double dkw_bound(std::int64_t reps, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (reps < 1) throw DomainError("reps must be >= 1");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(reps)));
}

KsResult ks_check(const SimSample& sample, Reference reference, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (sample.values.size() < 1000) throw DomainError("ks_check needs at least 1000 replicates");

  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  const auto count = static_cast<long long>(sorted.size());
  const double total = static_cast<double>(count);
  const NormingConstants& nc = sample.nc;

  double distance = 0.0;
#pragma omp parallel for schedule(static) reduction(max : distance)
  for (long long i = 0; i < count; ++i) {
    const double x = sorted[static_cast<std::size_t>(i)];
    const double f =
        reference == Reference::exact ? exact_cdf_or_zero(nc, x) : gumbel_cdf(x);
    const double above = static_cast<double>(i + 1) / total - f;
    const double below = f - static_cast<double>(i) / total;
    distance = std::max(distance, std::max(above, below));
  }

  KsResult result;
  result.distance = distance;
  result.bound = dkw_bound(static_cast<std::int64_t>(count), alpha);
  result.pass = distance <= result.bound;
  return result;
}

double empirical_cdf(const SimSample& sample, double x) {
  if (sample.values.empty()) return 0.0;
  const auto hits = std::count_if(sample.values.begin(), sample.values.end(),
                                  [x](double v) { return v <= x; });
  return static_cast<double>(hits) / static_cast<double>(sample.values.size());
}

}  // namespace powex
