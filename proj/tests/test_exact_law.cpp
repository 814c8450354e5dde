#include <cmath>
#include <vector>

#include "doctest.h"
#include "powex/errors.hpp"
#include "powex/exact_law.hpp"
#include "powex/special_functions.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace powex;

TEST_CASE("exact cdf reference values") {
  // 60-digit mpmath oracle
  const NormingConstants k1000 = norming_constants(1e3, PowerIndex(1.0));
  CHECK(exact_cdf(k1000, 0.0).value == doctest::Approx(0.39881305239127032721).epsilon(1e-13));
  const NormingConstants two10 = norming_constants(10.0, PowerIndex(2.0));
  CHECK(exact_cdf(two10, 0.0).value == doctest::Approx(0.19678419651664966546).epsilon(1e-13));
  const NormingConstants two100 = norming_constants(100.0, PowerIndex(2.0));
  CHECK(exact_cdf(two100, 0.0).value == doctest::Approx(0.3397232864579424373).epsilon(1e-13));

  const Probability far = exact_cdf(k1000, 40.0);
  CHECK(far.value >= 1.0 - 1e-6);
  CHECK(far.value <= 1.0);
}

TEST_CASE("exact cdf log value") {
  for (double t : {0.5, 2.0}) {
    const NormingConstants nc = norming_constants(1e4, PowerIndex(t));
    for (double x = nc.x_min() + 0.1; x < 8.0; x += 0.3) {
      const Probability p = exact_cdf(nc, x);
      CHECK(std::fabs(std::exp(p.log_value) - p.value) <= 1e-12 * std::max(p.value, 1e-300));
    }
  }
}

TEST_CASE("exact pdf reference values") {
  const NormingConstants k1000 = norming_constants(1e3, PowerIndex(1.0));
  CHECK(exact_pdf(k1000, 0.0) == doctest::Approx(0.39917983483858340471).epsilon(1e-12));
  const NormingConstants two100 = norming_constants(100.0, PowerIndex(2.0));
  CHECK(exact_pdf(two100, -2.0) >= 0.0);
}

TEST_CASE("out-of-support points report x_min") {
  const NormingConstants nc = norming_constants(1e3, PowerIndex(1.0));
  CHECK_THROWS_AS(exact_cdf(nc, nc.x_min() - 1.0), OutOfSupport);
  CHECK_THROWS_AS(exact_pdf(nc, nc.x_min()), OutOfSupport);
  CHECK(exact_cdf_or_zero(nc, nc.x_min() - 1.0) == 0.0);
}

TEST_CASE("exact cdf is nondecreasing with the right limits") {
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const NormingConstants nc = norming_constants(1e3, PowerIndex(t));
    double prev = -1.0;
    const double start = nc.x_min() + 1e-9;
    CHECK(exact_cdf(nc, start).value < 1e-100);
    for (double x = start; x < 30.0; x += 0.05) {
      const double f = exact_cdf(nc, x).value;
      CHECK(f >= prev);
      prev = f;
    }
    CHECK(exact_cdf(nc, 1e4).value >= 1.0 - 1e-12);
  }
}

TEST_CASE("exact pdf is the derivative of the exact cdf") {
  for (double n : {1e3, 1e6}) {
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      const NormingConstants nc = norming_constants(n, PowerIndex(t));
      for (double x = -1.0; x <= 4.0; x += 0.1) {
        const double pdf = exact_pdf(nc, x);
        if (pdf <= 1e-8) continue;
        const double h = 1e-5 * std::max(1.0, std::fabs(x));
        const double diff = (exact_cdf(nc, x + h).value - exact_cdf(nc, x - h).value) / (2 * h);
        CHECK(std::fabs(diff - pdf) <= 1e-6 * pdf);
      }
    }
  }
  const NormingConstants nc = norming_constants(1e3, PowerIndex(1.0));
  const double h = 1e-5;
  const double diff = (exact_cdf(nc, 0.7 + h).value - exact_cdf(nc, 0.7 - h).value) / (2 * h);
  CHECK(exact_pdf(nc, 0.7) == doctest::Approx(diff).epsilon(1e-6));
}

TEST_CASE("Simpson integral of the pdf matches the cdf increment") {
  const NormingConstants nc = norming_constants(1e6, PowerIndex(1.0));
  const double a = -1.0, b = 3.0;
  const int m = 2000;
  const double h = (b - a) / m;
  double sum = exact_pdf(nc, a) + exact_pdf(nc, b);
  for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * exact_pdf(nc, a + i * h);
  const double integral = sum * h / 3.0;
  CHECK(std::fabs(integral - (exact_cdf(nc, b).value - exact_cdf(nc, a).value)) <= 1e-8);
}

TEST_CASE("the subtracted tail term is negligible") {
  for (double n : {1e3, 1e6, 1e12}) {
    for (double t : {0.5, 1.0, 2.0, 3.0}) {
      const NormingConstants nc = norming_constants(n, PowerIndex(t));
      for (double x = -1.0; x <= 5.0; x += 0.5) {
        const ExactEvaluation e = exact_evaluate(nc, x);
        const double log_term = (n - 1.0) / n * e.tail_term_log;
        CHECK(log_term < std::log(1e-300));
        CHECK(e.tail_term_log < e.cdf.log_value - 600.0);
      }
    }
  }
  // At n = 100 it is small but nowhere near 1e-300.
  const NormingConstants nc = norming_constants(100.0, PowerIndex(1.0));
  const ExactEvaluation e = exact_evaluate(nc, -1.0);
  CHECK(e.tail_term_log * 99.0 / 100.0 < std::log(1e-100));
  CHECK(e.tail_term_log * 99.0 / 100.0 > std::log(1e-300));
}

TEST_CASE("distance to the Gumbel law shrinks with n at t = 1") {
  double prev = 1.0;
  for (int k = 3; k <= 9; ++k) {
    const NormingConstants nc = norming_constants(std::pow(10.0, k), PowerIndex(1.0));
    double sup = 0.0;
    for (double x = -1.0; x <= 4.0; x += 0.1) {
      sup = std::max(sup, std::fabs(exact_cdf(nc, x).value - gumbel_cdf(x)));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("subtracting the second density term disagrees with the derivative at small n") {
  const NormingConstants nc = norming_constants(5.0, PowerIndex(1.0));
  for (double offset : {0.05, 0.3}) {
    const double x = nc.x_min() + offset;
    const double h = 1e-6;
    const double diff = (exact_cdf(nc, x + h).value - exact_cdf(nc, x - h).value) / (2 * h);
    CHECK(exact_pdf(nc, x) == doctest::Approx(diff).epsilon(1e-6));
    CHECK(std::fabs(exact_pdf_minus_variant(nc, x) - diff) > 0.05);
  }
  // oracle values at x_min + 0.05
  const double x = nc.x_min() + 0.05;
  CHECK(exact_pdf(nc, x) == doctest::Approx(0.2292557033).epsilon(1e-9));
  CHECK(exact_pdf_minus_variant(nc, x) == doctest::Approx(0.0331750895).epsilon(1e-8));
}

TEST_CASE("parallel grid kernel matches the serial reference bit for bit") {
  const NormingConstants nc = norming_constants(1e6, PowerIndex(3.0));
  std::vector<double> xs;
  for (double x = -1.0; x <= 6.0; x += 0.01) xs.push_back(x);
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  const auto par = exact_grid(nc, xs);
  const auto ser = exact_grid_serial(nc, xs);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].cdf.value == ser[i].cdf.value);
    CHECK(par[i].pdf == ser[i].pdf);
  }
  xs.push_back(nc.x_min() - 1.0);
  CHECK_THROWS_AS(exact_grid(nc, xs), OutOfSupport);
}
