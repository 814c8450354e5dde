#pragma once

// Simulation of normalized powered block maxima (|M_n|^t - d) / c.
//
// Each replicate r draws from its own counter-based stream keyed by
// (seed, r), so the sample does not depend on how replicates are split
// across threads.

#include <cstdint>
#include <vector>

#include "powex/norming.hpp"

namespace powex {

struct SimSample {
  NormingConstants nc;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

inline constexpr double kMaxSimulatedDraws = 1e10;

/// Parallel kernel. n must be an integer; reps * n <= kMaxSimulatedDraws.
SimSample simulate_block_maxima(const NormingConstants& nc, std::int64_t reps,
                                std::uint64_t seed);

/// Serial reference: inverts every draw and takes the maximum.
SimSample simulate_block_maxima_serial(const NormingConstants& nc, std::int64_t reps,
                                       std::uint64_t seed);

/// 64-bit output for draw `counter` of replicate `replicate`.
std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t replicate, std::uint64_t counter);

/// Inverse of Phi; p in (0, 1).
double normal_quantile(double p);

/// x with 1 - Phi(x) = q; accurate for tiny q.
double normal_upper_quantile(double q);

enum class Reference { exact, limit };

struct KsResult {
  double distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/alpha) / (2 reps)).
double dkw_bound(std::int64_t reps, double alpha);

/// Kolmogorov-Smirnov distance of the sample against the exact law or the
/// Gumbel limit, judged against the DKW band. Needs reps >= 1000.
KsResult ks_check(const SimSample& sample, Reference reference, double alpha);

/// Fraction of sample values <= x.
double empirical_cdf(const SimSample& sample, double x);

}  // namespace powex
