#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/montecarlo.hpp"
#include "powex/special_functions.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace powex;

namespace {

void set_threads(int k) {
#ifdef _OPENMP
  omp_set_num_threads(k);
#else
  (void)k;
#endif
}

}  // namespace

TEST_CASE("streams are keyed by seed and replicate") {
  CHECK(stream_bits(1, 2, 3) == stream_bits(1, 2, 3));
  CHECK(stream_bits(1, 2, 3) != stream_bits(1, 2, 4));
  CHECK(stream_bits(1, 2, 3) != stream_bits(1, 3, 3));
  CHECK(stream_bits(1, 2, 3) != stream_bits(2, 2, 3));
}

TEST_CASE("normal quantiles invert the cdf") {
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
    const double z = normal_quantile(p);
    CHECK(normal_cdf(z).value == doctest::Approx(p).epsilon(1e-12));
  }
  for (double q : {1e-300, 1e-100, 1e-20, 1e-8, 0.2, 0.5}) {
    const double z = normal_upper_quantile(q);
    CHECK(survival(z).value == doctest::Approx(q).epsilon(1e-12));
  }
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_upper_quantile(1.0), DomainError);
}

TEST_CASE("simulation is reproducible") {
  const NormingConstants nc = norming_constants(50.0, PowerIndex(1.5));
  const SimSample a = simulate_block_maxima(nc, 2000, 7);
  const SimSample b = simulate_block_maxima(nc, 2000, 7);
  const SimSample c = simulate_block_maxima(nc, 2000, 8);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.reps == 2000);
  CHECK(a.seed == 7u);
}

TEST_CASE("sample does not depend on the thread count") {
  const NormingConstants nc = norming_constants(100.0, PowerIndex(2.0));
  set_threads(1);
  const SimSample one = simulate_block_maxima(nc, 5000, 99);
  set_threads(4);
  const SimSample four = simulate_block_maxima(nc, 5000, 99);
  CHECK(one.values == four.values);
}

TEST_CASE("parallel kernel matches the serial reference") {
  set_threads(3);
  for (double t : {0.5, 1.0, 2.0}) {
    const NormingConstants nc = norming_constants(40.0, PowerIndex(t));
    const SimSample par = simulate_block_maxima(nc, 500, 11);
    const SimSample ser = simulate_block_maxima_serial(nc, 500, 11);
    REQUIRE(par.values.size() == ser.values.size());
    for (std::size_t i = 0; i < par.values.size(); ++i) {
      CHECK(par.values[i] == doctest::Approx(ser.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("empirical cdf within four binomial standard errors") {
  const double xs[] = {-1.0, 0.0, 0.5, 1.5, 3.0};
  struct Case {
    double n;
    double t;
  };
  for (Case cs : {Case{100.0, 1.0}, Case{100.0, 2.0}, Case{1000.0, 0.5}}) {
    const NormingConstants nc = norming_constants(cs.n, PowerIndex(cs.t));
    const std::int64_t reps = 100000;
    const SimSample s = simulate_block_maxima(nc, reps, 2024);
    for (double x : xs) {
      const double p = exact_cdf(nc, x).value;
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
      CHECK(std::fabs(empirical_cdf(s, x) - p) <= 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("ks against the exact law and the limit") {
  const NormingConstants nc = norming_constants(100.0, PowerIndex(2.0));
  const SimSample s = simulate_block_maxima(nc, 200000, 5);
  const KsResult exact = ks_check(s, Reference::exact, 0.001);
  CHECK(exact.pass);
  CHECK(exact.distance <= exact.bound);
  CHECK(exact.bound == doctest::Approx(dkw_bound(200000, 0.001)));
  const KsResult limit = ks_check(s, Reference::limit, 0.001);
  CHECK_FALSE(limit.pass);
  CHECK(limit.distance >= 0.01);
}

TEST_CASE("dkw bound") {
  CHECK(dkw_bound(1000000, 0.001) == doctest::Approx(0.001950).epsilon(1e-3));
  CHECK(dkw_bound(1000000, 0.001) == doctest::Approx(std::sqrt(std::log(2000.0) / 2e6)));
  CHECK_THROWS_AS(dkw_bound(100, 0.0), DomainError);
  CHECK_THROWS_AS(dkw_bound(100, 1.0), DomainError);
  CHECK_THROWS_AS(dkw_bound(0, 0.05), DomainError);
}

TEST_CASE("simulation errors") {
  CHECK_THROWS_AS(simulate_block_maxima(norming_constants(100.5, PowerIndex(1.0)), 1000, 1),
                  DomainError);
  CHECK_THROWS_AS(simulate_block_maxima(norming_constants(1e6, PowerIndex(1.0)), 20000, 1),
                  ResourceError);
  CHECK_THROWS_AS(simulate_block_maxima(norming_constants(10.0, PowerIndex(1.0)), 0, 1),
                  DomainError);
  CHECK_THROWS_AS(norming_constants(1.0, PowerIndex(1.0)), DomainError);

  const SimSample small = simulate_block_maxima(norming_constants(10.0, PowerIndex(1.0)), 999, 1);
  CHECK_THROWS_AS(ks_check(small, Reference::exact, 0.05), DomainError);
  const SimSample enough = simulate_block_maxima(norming_constants(10.0, PowerIndex(1.0)), 1000, 1);
  CHECK_THROWS_AS(ks_check(enough, Reference::exact, 1.5), DomainError);
  CHECK_NOTHROW(ks_check(enough, Reference::exact, 0.05));
}
