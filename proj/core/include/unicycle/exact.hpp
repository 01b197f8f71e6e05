#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

namespace unicycle {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact binomial coefficient C(n, k); 0 when k > n.
BigInt binomial(uint64_t n, uint64_t k);

// n-th Catalan number C(2n, n) / (n + 1); counts plane trees with n edges.
BigInt catalan(uint64_t n);

// Falling factorial (n)_k = n (n-1) ... (n-k+1); 0 when k > n, 1 when k = 0.
BigInt falling_factorial(uint64_t n, uint64_t k);

BigInt factorial(uint64_t n);

// log((n)_k), compensated summation of log terms; -inf when k > n.
double log_falling_factorial(uint64_t n, uint64_t k);

// Natural log of a positive big integer, accurate to ~1 ulp of the top
// 53 bits regardless of magnitude.
double log_bigint(const BigInt& x);

double log_bigrat(const BigRat& x);

// log(sum exp(v_i)) over finite entries; -inf for an empty/all -inf input.
double log_sum_exp(std::span<const double> v);

}  // namespace unicycle
