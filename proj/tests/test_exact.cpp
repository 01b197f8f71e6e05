#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "unicycle/exact.hpp"

using namespace unicycle;

TEST_CASE("binomial small values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(52, 5) == 2598960);
}

TEST_CASE("binomial pascal identity") {
  for (uint64_t n = 1; n <= 30; ++n)
    for (uint64_t k = 1; k <= n; ++k)
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("catalan sequence") {
  std::vector<uint64_t> want{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (size_t n = 0; n < want.size(); ++n) CHECK(catalan(n) == want[n]);
  CHECK(catalan(20) == BigInt("6564120420"));
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(5, 1) == 5);
  CHECK(falling_factorial(5, 3) == 60);
  CHECK(falling_factorial(5, 5) == 120);
  CHECK(falling_factorial(5, 6) == 0);
  CHECK(falling_factorial(100, 2) == 9900);
}

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(1) == 1);
  CHECK(factorial(10) == 3628800);
  for (uint64_t n = 1; n <= 20; ++n) CHECK(factorial(n) == falling_factorial(n, n));
}

TEST_CASE("log_bigint matches log for machine-size values") {
  for (uint64_t x : {1ull, 2ull, 10ull, 123456789ull, 1ull << 62}) {
    double want = std::log(static_cast<double>(x));
    CHECK(std::fabs(log_bigint(BigInt(x)) - want) < 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("log_bigint on huge values via factorial") {
  // lgamma(n+1) is the reference for log n!
  for (uint64_t n : {50ull, 500ull, 5000ull}) {
    double want = std::lgamma(static_cast<double>(n) + 1.0);
    CHECK(std::fabs(log_bigint(factorial(n)) - want) < 1e-9 * want);
  }
}

TEST_CASE("log_falling_factorial") {
  CHECK(log_falling_factorial(5, 6) == -std::numeric_limits<double>::infinity());
  CHECK(log_falling_factorial(7, 0) == doctest::Approx(0.0));
  for (uint64_t n : {10ull, 1000ull, 1000000ull}) {
    for (uint64_t k : {1ull, 5ull, 9ull}) {
      double want = log_bigint(falling_factorial(n, k));
      CHECK(std::fabs(log_falling_factorial(n, k) - want) < 1e-10 * std::max(1.0, want));
    }
  }
}

TEST_CASE("log_bigrat") {
  CHECK(log_bigrat(BigRat(1)) == doctest::Approx(0.0));
  CHECK(log_bigrat(BigRat(1, 3)) == doctest::Approx(std::log(1.0 / 3.0)));
  CHECK(log_bigrat(BigRat(22, 7)) == doctest::Approx(std::log(22.0 / 7.0)));
}

TEST_CASE("log_sum_exp") {
  double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_sum_exp({}) == ninf);
  std::vector<double> only_inf{ninf, ninf};
  CHECK(log_sum_exp(only_inf) == ninf);
  std::vector<double> single{2.5};
  CHECK(log_sum_exp(single) == doctest::Approx(2.5));
  std::vector<double> mixed{ninf, 0.0, std::log(2.0)};
  CHECK(log_sum_exp(mixed) == doctest::Approx(std::log(3.0)));
  // large offsets must not overflow
  std::vector<double> shifted{1000.0, 1000.0 + std::log(2.0)};
  CHECK(log_sum_exp(shifted) == doctest::Approx(1000.0 + std::log(3.0)));
}
