#include <cmath>

#include "doctest.h"
#include "powex/errors.hpp"
#include "powex/norming.hpp"
#include "powex/special_functions.hpp"

using namespace powex;

namespace {

// Bisection on u + ln u = 2 ln n - ln(2 pi) in long double; b = sqrt(u).
double bisection_b(double n) {
  const long double target = 2.0L * std::log(static_cast<long double>(n)) -
                             std::log(2.0L * 3.14159265358979323846264338327950288L);
  long double lo = 1e-6L;
  long double hi = 200.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (mid + std::log(mid) < target ? lo : hi) = mid;
  }
  return static_cast<double>(std::sqrt(0.5L * (lo + hi)));
}

}  // namespace

TEST_CASE("solve_b matches the bisection oracle") {
  for (double n : {2.0, 3.0, 10.0, 1e3, 1e6, 1e12, 1e14}) {
    CHECK(solve_b(n) == doctest::Approx(bisection_b(n)).epsilon(1e-14));
  }
  // frozen 60-digit values
  CHECK(solve_b(10.0) == doctest::Approx(1.431653790014228125).epsilon(1e-15));
  CHECK(solve_b(1e3) == doctest::Approx(3.1152837746448989147).epsilon(1e-15));
  CHECK(solve_b(1e6) == doctest::Approx(4.7615137090964667875).epsilon(1e-15));
  CHECK(solve_b(1e12) == doctest::Approx(7.0371693979277495122).epsilon(1e-15));
}

TEST_CASE("solve_b residual and round trip") {
  for (double n : {10.0, 1e3, 1e6, 1e12}) {
    const double b = solve_b(n);
    CHECK(norming_residual(n, b) <= 1e-12);
    const double n2 = 2.0 * M_PI * b * b * std::exp(b * b);
    CHECK(std::fabs(n2 / (n * n) - 1.0) <= 1e-12);
  }
}

TEST_CASE("solve_b monotone and b^2 ~ 2 log n") {
  double prev = 0.0;
  for (double n = 2.0; n < 1e13; n *= 1.7) {
    const double b = solve_b(n);
    CHECK(b > prev);
    prev = b;
  }
  const double b = solve_b(1e12);
  const double ratio = b * b / (2.0 * std::log(1e12));
  CHECK(ratio >= 0.8);
  CHECK(ratio <= 1.0);
}

TEST_CASE("solve_b rejects n below 2") {
  CHECK_THROWS_AS(solve_b(1.0), DomainError);
  CHECK_THROWS_AS(solve_b(1.999), DomainError);
  CHECK_THROWS_AS(solve_b(NAN), DomainError);
}

TEST_CASE("power index") {
  CHECK(PowerIndex(2.0).is_two());
  CHECK_FALSE(PowerIndex(2.0 - 1e-12).is_two());
  CHECK(PowerIndex(2.0 - 1e-12).near_two());
  CHECK(PowerIndex(2.0009).near_two());
  CHECK_FALSE(PowerIndex(2.0).near_two());
  CHECK_FALSE(PowerIndex(1.0).near_two());
  CHECK_THROWS_AS(PowerIndex{0.0}, DomainError);
  CHECK_THROWS_AS(PowerIndex{-1.0}, DomainError);
  CHECK_THROWS_AS(PowerIndex{INFINITY}, DomainError);
}

TEST_CASE("norming constants examples") {
  const NormingConstants one = norming_constants(1e3, PowerIndex(1.0));
  CHECK(one.c == doctest::Approx(0.320998044589).epsilon(1e-11));
  CHECK(one.d == doctest::Approx(3.11528377464).epsilon(1e-11));
  CHECK(one.c == 1.0 / one.b);

  const NormingConstants two = norming_constants(1e3, PowerIndex(2.0));
  CHECK(two.two_branch());
  CHECK(two.c == doctest::Approx(1.79392051074).epsilon(1e-11));
  CHECK(two.d == doctest::Approx(9.49891350731).epsilon(1e-11));

  const NormingConstants almost = norming_constants(1e3, PowerIndex(2.0 - 1e-12));
  CHECK(almost.c == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(almost.near_two_warning);
  CHECK_FALSE(two.near_two_warning);

  const NormingConstants naive = unadjusted_norming_constants(1e3, PowerIndex(2.0));
  CHECK_FALSE(naive.two_branch());
  CHECK(naive.c == 2.0);
  CHECK(naive.d == doctest::Approx(two.b * two.b).epsilon(1e-15));
}

TEST_CASE("t = 2 needs c > 0") {
  CHECK_THROWS_AS(norming_constants(3.0, PowerIndex(2.0)), DomainError);
  CHECK_THROWS_AS(norming_constants(4.0, PowerIndex(2.0)), DomainError);
  CHECK(norming_constants(5.0, PowerIndex(2.0)).c > 0.0);
  CHECK_NOTHROW(norming_constants(2.0, PowerIndex(1.0)));
}

TEST_CASE("transformed quantile") {
  const NormingConstants one = norming_constants(1e3, PowerIndex(1.0));
  CHECK(transformed_quantile(one, 0.0).g == one.d);
  const NormingConstants two = norming_constants(1e3, PowerIndex(2.0));
  CHECK(transformed_quantile(two, 0.0).g == doctest::Approx(3.08203074406).epsilon(1e-11));

  const double bad = -one.d / one.c - 1.0;
  CHECK_THROWS_AS(transformed_quantile(one, bad), OutOfSupport);
  try {
    transformed_quantile(one, bad);
  } catch (const OutOfSupport& e) {
    CHECK(e.x_min() == doctest::Approx(-one.d / one.c));
  }
}

TEST_CASE("transformed quantile is increasing with the right derivative") {
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const NormingConstants nc = norming_constants(1e4, PowerIndex(t));
    double prev = 0.0;
    for (double x = nc.x_min() + 0.01; x < 10.0; x += 0.05) {
      const TransformedQuantile q = transformed_quantile(nc, x);
      CHECK(q.g > prev);
      prev = q.g;
      const double h = 1e-6;
      const double diff =
          (transformed_quantile(nc, x + h).g - transformed_quantile(nc, x - h).g) / (2 * h);
      CHECK(q.dg_dx == doctest::Approx(diff).epsilon(1e-6));
    }
  }
}

TEST_CASE("n c phi(g) = 1 at t = 1, x = 0") {
  for (double n : {1e3, 1e6, 1e12}) {
    const NormingConstants nc = norming_constants(n, PowerIndex(1.0));
    CHECK(n * nc.c * std_normal_pdf(transformed_quantile(nc, 0.0).g) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}
