#include "unicycle/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace unicycle {

BigInt binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: C(n-k+i, i) is an integer
  }
  return r;
}

BigInt catalan(uint64_t n) { return binomial(2 * n, n) / (n + 1); }

BigInt falling_factorial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (uint64_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

BigInt factorial(uint64_t n) { return falling_factorial(n, n); }

double log_falling_factorial(uint64_t n, uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  double sum = 0.0, c = 0.0;
  for (uint64_t i = 0; i < k; ++i) {
    double term = std::log(static_cast<double>(n - i));
    double y = term - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double log_bigint(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_bigint: nonpositive argument");
  uint64_t bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 900) return std::log(x.convert_to<double>());
  uint64_t shift = bits - 52;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double log_bigrat(const BigRat& x) {
  if (x <= 0) throw std::domain_error("log_bigrat: nonpositive argument");
  return log_bigint(numerator(x)) - log_bigint(denominator(x));
}

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v)
    if (x > m) m = x;
  if (!std::isfinite(m)) return m;
  double sum = 0.0, c = 0.0;
  for (double x : v) {
    double term = std::exp(x - m);
    double y = term - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return m + std::log(sum);
}

}  // namespace unicycle
